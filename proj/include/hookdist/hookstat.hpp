#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "hookdist/cache.hpp"
#include "hookdist/series.hpp"

namespace hookdist {

// A request exceeded a configured resource bound (partition enumeration or
// trial-division factorization). The computation is refused, not approximated.
class BoundExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exact coefficient identity failed at `index`.
class IdentityViolation : public std::runtime_error {
 public:
  IdentityViolation(std::string identity, std::size_t index);
  const std::string& identity() const noexcept { return identity_; }
  std::size_t index() const noexcept { return index_; }

 private:
  std::string identity_;
  std::size_t index_;
};

inline constexpr unsigned kEnumerationBound = 45;
inline constexpr std::uint64_t kFactorizationBound = 10'000'000;

// A partition: nonincreasing positive parts.
class Partition {
 public:
  Partition() = default;
  // Throws std::invalid_argument if a part is zero or the parts increase.
  explicit Partition(std::vector<unsigned> parts);

  const std::vector<unsigned>& parts() const noexcept { return parts_; }
  unsigned size() const noexcept { return size_; }
  std::size_t length() const noexcept { return parts_.size(); }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<unsigned> parts_;
  unsigned size_ = 0;
};

// Hook lengths of every cell, row by row (arm + leg + 1).
std::vector<unsigned> hook_lengths(const Partition& p);

// Number of hook lengths divisible by t. Throws std::invalid_argument for t == 0.
unsigned hook_count_divisible(const Partition& p, unsigned t);

// Calls `visit` once per partition of n in descending lexicographic order.
// Throws BoundExceeded when n > bound and std::invalid_argument when n == 0.
void for_each_partition(unsigned n, const std::function<void(const Partition&)>& visit,
                        unsigned bound = kEnumerationBound);
std::vector<Partition> enumerate_partitions(unsigned n, unsigned bound = kEnumerationBound);

// Coefficients p_t(m, n), m = 0..floor(n/t), of P_t(n, x).
struct CoeffTable {
  unsigned t = 0;
  unsigned n = 0;
  std::vector<BigInt> coeffs;

  std::size_t degree() const noexcept { return coeffs.size() - 1; }
  BigInt total() const;

  friend bool operator==(const CoeffTable&, const CoeffTable&) = default;
};

// Ground truth by enumerating every partition of n.
CoeffTable brute_force_table(unsigned t, unsigned n, unsigned bound = kEnumerationBound);

// k = l(l+1)/2 for some l >= 0. Throws std::domain_error for negative k.
bool is_triangular(std::int64_t k);

// Number of 2-cores of k (1 if k triangular, else 0).
inline int two_core_count(std::uint64_t k) { return is_triangular(static_cast<std::int64_t>(k)) ? 1 : 0; }

// c(k) = sum over d | 3k+1 of the Legendre symbol (d/3); counts 3-cores of k.
std::int64_t char_sum_c(std::uint64_t k);

// True iff some prime r = 2 (mod 3) divides 3k+1 to an odd power. Factors by
// trial division; throws BoundExceeded when 3k+1 > bound.
bool vanish_t3(std::uint64_t k, std::uint64_t bound = kFactorizationBound);

// Number of t-colored partitions of m for m = 0..order: prod (1-q^m)^{-t}.
IntSeries colored_counts(unsigned t, std::size_t order);

// Number of t-core partitions of k: prod (1-q^{tm})^t / (1-q^m).
IntSeries tcore_counts(unsigned t, std::size_t order);

// D(q) = prod (1-q^m)^8.
IntSeries d_coefficients(std::size_t order);

// p_t(m,n) = a_t(m) * (t-core count of n - tm). t = 2 gates on triangular
// numbers, t = 3 uses c(k), larger t expands the t-core series.
// Throws std::invalid_argument for t < 2 or n < 1.
CoeffTable coeff_table(unsigned t, unsigned n);

// Same factorization, but with the t-core counts always taken from the
// eta-quotient expansion. Cross-checks the closed forms for t = 2, 3.
CoeffTable coeff_table_via_cores(unsigned t, unsigned n);

// Shared, growable source of coefficient tables. Caches the t-colored and
// t-core expansions in memory and, when given a SeriesCache, on disk.
// Thread-safe; tables for different (t, n) may be requested concurrently.
class TableSource {
 public:
  TableSource() = default;
  explicit TableSource(std::optional<SeriesCache> cache) : cache_(std::move(cache)) {}

  TableSource(const TableSource&) = delete;
  TableSource& operator=(const TableSource&) = delete;

  // Grows the underlying expansions so that every table with this t and
  // weight <= max_n is served without recomputation.
  void prepare(unsigned t, unsigned max_n);

  CoeffTable table(unsigned t, unsigned n);
  BigInt partition_number(unsigned n);

  // Nonzero t-core count for weight k, using the closed form for t = 2, 3.
  bool core_nonzero(unsigned t, std::uint64_t k);

 private:
  struct PerT {
    std::size_t max_n = 0;
    IntSeries colored;
    IntSeries cores;  // t >= 4 only
    std::vector<std::int64_t> core_values;  // t = 2, 3
  };

  void ensure_partitions(std::size_t n);
  void ensure(unsigned t, std::size_t max_n);
  IntSeries cached(const std::string& kind, const std::string& params, std::size_t order,
                   const std::function<IntSeries(std::size_t)>& compute);

  std::optional<SeriesCache> cache_;
  mutable std::shared_mutex mu_;
  std::optional<IntSeries> partitions_;
  std::map<unsigned, PerT> per_t_;
};

// Support of P_t(n, x): count of nonzero coefficients over the degree.
struct SupportStats {
  unsigned t = 0;
  unsigned n = 0;
  std::size_t nonzero_count = 0;
  std::size_t degree = 0;
  // nonzero_count / degree in lowest terms.
  std::uint64_t proportion_num = 0;
  std::uint64_t proportion_den = 1;

  double proportion() const { return static_cast<double>(proportion_num) / static_cast<double>(proportion_den); }
  // Exact decimal rounding (half up) to `places` digits.
  std::string decimal(int places = 5) const;
};

// Throws std::domain_error when the degree floor(n/t) is zero.
SupportStats support_stats(const CoeffTable& table);
SupportStats support_stats(unsigned t, unsigned n);

// One term of the sequence n_j = j^2 n0 used to witness non-convergence.
struct NonconvergencePoint {
  unsigned j = 0;
  std::uint64_t n = 0;
  std::uint64_t m = 0;  // grid index j^2 n0 / t - q j
  bool is_zero = false;
};

// For t = 2 requires n0 even, for t = 3 requires 3 | n0; in both cases
// 0 <= q <= n0/t. The grid point x = t q pi / sqrt(3(t-1) n0) lies on every
// S_{t;n_j}; is_zero reports whether f_{t;n_j} vanishes there.
// Throws std::domain_error on inadmissible arguments.
std::vector<NonconvergencePoint> nonconvergence_sequence(unsigned t, std::uint64_t q, std::uint64_t n0,
                                                         unsigned count);

struct IdentityReport {
  std::size_t order = 0;
  std::size_t two_core_checked = 0;
  std::size_t three_core_checked = 0;
  std::size_t vanishing_checked = 0;
  std::size_t parity_checked = 0;
};

// Checks coefficient by coefficient up to `order`:
//   prod (1-q^{2m})^2/(1-q^m) = sum_{l >= 0} q^{l(l+1)/2},
//   prod (1-q^{3m})^3/(1-q^m) = sum c(k) q^k,
//   c(k) = 0  <=>  d(k) = 0  <=>  vanish_t3(k),
//   c(k) odd  <=>  3k+1 is a perfect square.
// Throws IdentityViolation naming the first failing index.
IdentityReport verify_identities(std::size_t order);

// What "is a perfect square" is tested against in the parity check.
enum class ParityTarget { Index, Norm };

// Smallest k <= limit for which "c(k) is odd" and "target is a perfect
// square" disagree, where target is k (Index) or 3k+1 (Norm).
std::optional<std::uint64_t> first_parity_mismatch(std::uint64_t limit, ParityTarget target);

bool is_perfect_square(std::uint64_t v);

}  // namespace hookdist
