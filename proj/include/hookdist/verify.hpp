#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hookdist/hookstat.hpp"

namespace hookdist {

struct CheckResult {
  std::string id;    // "AC1", "AC5c", "oracle", ...
  std::string name;
  bool passed = false;
  bool informational = false;  // reported, never counted as a failure
  std::string detail;
  double seconds = 0;
};

enum class VerifyLevel { Fast, Full };

struct OracleMismatch {
  unsigned t = 0;
  unsigned n = 0;
  std::size_t m = 0;
};

using TableFn = std::function<CoeffTable(unsigned t, unsigned n)>;

// Compares `table_fn` against brute-force enumeration for every t in `ts`
// and 1 <= n <= max_n, in increasing n. Returns the first disagreement.
std::optional<OracleMismatch> first_oracle_mismatch(std::span<const unsigned> ts, unsigned max_n,
                                                    const TableFn& table_fn);

// Acceptance criteria 1..12, each possibly split into several result lines.
std::vector<CheckResult> run_criterion(int criterion, TableSource& source);

// Fast: exact and structural checks with n <= 500. Full: every acceptance
// criterion at its stated size and tolerance.
std::vector<CheckResult> run_verification(VerifyLevel level, TableSource& source);

bool all_passed(std::span<const CheckResult> results);

}  // namespace hookdist
