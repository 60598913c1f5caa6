#pragma once

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hookdist/hookstat.hpp"

namespace hookdist::cli {

// Bad flags or arguments; the tool exits with kExitUsage.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerifyFailed = 2;
inline constexpr int kExitBoundRefused = 3;

// Rows of already-rendered cells under fixed column names. Exact integers
// are decimal strings, reals use 12 significant digits, undefined values
// are empty cells.
struct DataTable {
  std::string command;
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  friend bool operator==(const DataTable&, const DataTable&) = default;
};

std::string format_real(double v);

// m, coeff, nonzero
DataTable cmd_coeffs(TableSource& source, unsigned t, unsigned n);
// Brute-force counterpart of cmd_coeffs (bounded enumeration).
DataTable cmd_oracle(unsigned t, unsigned n, unsigned enumeration_bound);

struct DensityRow {
  unsigned n = 0;
  std::vector<SupportStats> cells;  // one per requested t
};
// Computes each n on its own worker; rows come back in input order.
std::vector<DensityRow> density_table(TableSource& source, std::span<const unsigned> ts,
                                      std::span<const unsigned> ns);
// n, t2, t3, ... with 5-decimal proportions.
DataTable cmd_density_table(TableSource& source, std::span<const unsigned> ts, std::span<const unsigned> ns);

enum class CurveSet { Pmf, H, G, All };
CurveSet parse_curve_set(std::string_view which);
// m, x, f, then h (t = 2) or alpha, h, h_x2, h_x4 (t = 3), then g.
// Throws UsageError when h is requested for t >= 4.
DataTable cmd_curves(TableSource& source, unsigned t, unsigned n, CurveSet which);

// x, cdf, limit, gap
DataTable cmd_cdf(TableSource& source, unsigned t, unsigned n, std::span<const double> xs);
// r, re, im, limit_re, limit_im, gap
DataTable cmd_charfn(TableSource& source, unsigned t, unsigned n, std::span<const double> rs);

std::string render_csv(const DataTable& table);
std::string render_json(const DataTable& table, bool timestamp);
// Inverse of render_csv for the cells and columns (command/meta are not
// part of the CSV form). Throws std::runtime_error on malformed input.
DataTable parse_csv(std::string_view text);

// Entry point of the hookdist tool; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hookdist::cli
