#include "hookdist/hookstat.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>

#include <fmt/format.h>

namespace hookdist {

IdentityViolation::IdentityViolation(std::string identity, std::size_t index)
    : std::runtime_error(fmt::format("{} identity fails at index {}", identity, index)),
      identity_(std::move(identity)),
      index_(index) {}

// ---------------------------------------------------------------------------
// Partitions and hooks

Partition::Partition(std::vector<unsigned> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] == 0) throw std::invalid_argument("partition parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1]) throw std::invalid_argument("partition parts must be nonincreasing");
    size_ += parts_[i];
  }
}

std::vector<unsigned> hook_lengths(const Partition& p) {
  const auto& rows = p.parts();
  std::vector<unsigned> hooks;
  hooks.reserve(p.size());
  if (rows.empty()) return hooks;
  // conjugate[j] = number of rows longer than j
  std::vector<unsigned> conjugate(rows.front(), 0);
  for (unsigned r : rows)
    for (unsigned j = 0; j < r; ++j) ++conjugate[j];
  for (unsigned i = 0; i < rows.size(); ++i) {
    for (unsigned j = 0; j < rows[i]; ++j) {
      const unsigned arm = rows[i] - j - 1;
      const unsigned leg = conjugate[j] - i - 1;
      hooks.push_back(arm + leg + 1);
    }
  }
  return hooks;
}

unsigned hook_count_divisible(const Partition& p, unsigned t) {
  if (t == 0) throw std::invalid_argument("divisor t must be positive");
  const auto hooks = hook_lengths(p);
  return static_cast<unsigned>(std::count_if(hooks.begin(), hooks.end(), [t](unsigned h) { return h % t == 0; }));
}

namespace {

void partitions_rec(unsigned remaining, unsigned max_part, std::vector<unsigned>& parts,
                    const std::function<void(const Partition&)>& visit) {
  if (remaining == 0) {
    visit(Partition(parts));
    return;
  }
  for (unsigned part = std::min(remaining, max_part); part >= 1; --part) {
    parts.push_back(part);
    partitions_rec(remaining - part, part, parts, visit);
    parts.pop_back();
  }
}

}  // namespace

void for_each_partition(unsigned n, const std::function<void(const Partition&)>& visit, unsigned bound) {
  if (n == 0) throw std::invalid_argument("enumeration needs n >= 1");
  if (n > bound) throw BoundExceeded(fmt::format("partition enumeration refused: n = {} exceeds bound {}", n, bound));
  std::vector<unsigned> parts;
  parts.reserve(n);
  partitions_rec(n, n, parts, visit);
}

std::vector<Partition> enumerate_partitions(unsigned n, unsigned bound) {
  std::vector<Partition> out;
  for_each_partition(n, [&](const Partition& p) { out.push_back(p); }, bound);
  return out;
}

BigInt CoeffTable::total() const {
  BigInt sum = 0;
  for (const auto& c : coeffs) sum += c;
  return sum;
}

CoeffTable brute_force_table(unsigned t, unsigned n, unsigned bound) {
  if (t == 0) throw std::invalid_argument("divisor t must be positive");
  CoeffTable table{t, n, std::vector<BigInt>(n / t + 1)};
  for_each_partition(n, [&](const Partition& p) { ++table.coeffs[hook_count_divisible(p, t)]; }, bound);
  return table;
}

// ---------------------------------------------------------------------------
// Number theory

bool is_triangular(std::int64_t k) {
  if (k < 0) throw std::domain_error("is_triangular: negative argument");
  // k = l(l+1)/2  <=>  8k + 1 is an odd perfect square
  return is_perfect_square(8 * static_cast<std::uint64_t>(k) + 1);
}

bool is_perfect_square(std::uint64_t v) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r * r == v;
}

std::int64_t char_sum_c(std::uint64_t k) {
  const std::uint64_t norm = 3 * k + 1;
  const auto legendre3 = [](std::uint64_t d) -> int { return d % 3 == 1 ? 1 : (d % 3 == 2 ? -1 : 0); };
  std::int64_t sum = 0;
  for (std::uint64_t d = 1; d * d <= norm; ++d) {
    if (norm % d != 0) continue;
    sum += legendre3(d);
    const std::uint64_t co = norm / d;
    if (co != d) sum += legendre3(co);
  }
  return sum;
}

bool vanish_t3(std::uint64_t k, std::uint64_t bound) {
  std::uint64_t rest = 3 * k + 1;
  if (rest > bound) throw BoundExceeded(fmt::format("factorization refused: 3k+1 = {} exceeds bound {}", rest, bound));
  for (std::uint64_t r = 2; r * r <= rest; ++r) {
    if (rest % r != 0) continue;
    unsigned order = 0;
    while (rest % r == 0) {
      rest /= r;
      ++order;
    }
    if (r % 3 == 2 && order % 2 == 1) return true;
  }
  return rest > 1 && rest % 3 == 2;
}

// ---------------------------------------------------------------------------
// Series

IntSeries colored_counts(unsigned t, std::size_t order) {
  const EtaFactor f{1, -static_cast<int>(t)};
  return eta_quotient_expand(std::span<const EtaFactor>(&f, 1), order);
}

IntSeries tcore_counts(unsigned t, std::size_t order) {
  if (t == 0) throw std::invalid_argument("tcore_counts needs t >= 1");
  return eta_quotient_expand({EtaFactor{t, static_cast<int>(t)}, EtaFactor{1, -1}}, order);
}

IntSeries d_coefficients(std::size_t order) { return eta_quotient_expand({EtaFactor{1, 8}}, order); }

// ---------------------------------------------------------------------------
// Coefficient tables

namespace {

void check_table_args(unsigned t, unsigned n) {
  if (t < 2) throw std::invalid_argument("coefficient tables need t >= 2");
  if (n < 1) throw std::invalid_argument("coefficient tables need n >= 1");
}

}  // namespace

CoeffTable coeff_table(unsigned t, unsigned n) {
  TableSource source;
  return source.table(t, n);
}

CoeffTable coeff_table_via_cores(unsigned t, unsigned n) {
  check_table_args(t, n);
  const IntSeries colored = colored_counts(t, n / t);
  const IntSeries cores = tcore_counts(t, n);
  CoeffTable table{t, n, std::vector<BigInt>(n / t + 1)};
  for (unsigned m = 0; m <= n / t; ++m) table.coeffs[m] = colored[m] * cores[n - t * m];
  return table;
}

IntSeries TableSource::cached(const std::string& kind, const std::string& params, std::size_t order,
                              const std::function<IntSeries(std::size_t)>& compute) {
  if (cache_) return cache_->get_or_compute(kind, params, order, compute);
  return compute(order);
}

void TableSource::ensure_partitions(std::size_t n) {
  {
    std::shared_lock lock(mu_);
    if (partitions_ && partitions_->order() >= n) return;
  }
  std::unique_lock lock(mu_);
  if (partitions_ && partitions_->order() >= n) return;
  const std::size_t target = partitions_ ? std::max(n, 2 * partitions_->order()) : n;
  partitions_ = cached("partitions", "all", target, [](std::size_t order) { return partition_numbers(order); });
}

void TableSource::ensure(unsigned t, std::size_t max_n) {
  {
    std::shared_lock lock(mu_);
    if (auto it = per_t_.find(t); it != per_t_.end() && it->second.max_n >= max_n) return;
  }
  std::unique_lock lock(mu_);
  PerT& slot = per_t_[t];
  if (slot.max_n >= max_n) return;

  const std::size_t target = std::max(max_n, 2 * slot.max_n);
  const std::string params = fmt::format("t={}", t);
  slot.colored = cached("colored", params, target / t,
                        [t](std::size_t order) { return colored_counts(t, order); });
  if (t == 2 || t == 3) {
    const std::size_t from = slot.core_values.size();
    slot.core_values.resize(target + 1);
    for (std::size_t k = from; k <= target; ++k) {
      slot.core_values[k] = (t == 2) ? two_core_count(k) : char_sum_c(k);
    }
  } else {
    slot.cores = cached("tcore", params, target, [t](std::size_t order) { return tcore_counts(t, order); });
  }
  slot.max_n = target;
}

void TableSource::prepare(unsigned t, unsigned max_n) {
  check_table_args(t, std::max(max_n, 1u));
  ensure(t, max_n);
  ensure_partitions(max_n);
}

CoeffTable TableSource::table(unsigned t, unsigned n) {
  check_table_args(t, n);
  ensure(t, n);
  std::shared_lock lock(mu_);
  const PerT& slot = per_t_.at(t);
  CoeffTable table{t, n, std::vector<BigInt>(n / t + 1)};
  for (unsigned m = 0; m <= n / t; ++m) {
    const std::size_t k = n - static_cast<std::size_t>(t) * m;
    if (t == 2 || t == 3) {
      const std::int64_t core = slot.core_values[k];
      if (core != 0) table.coeffs[m] = slot.colored[m] * static_cast<long>(core);
    } else {
      table.coeffs[m] = slot.colored[m] * slot.cores[k];
    }
  }
  return table;
}

BigInt TableSource::partition_number(unsigned n) {
  ensure_partitions(n);
  std::shared_lock lock(mu_);
  return (*partitions_)[n];
}

bool TableSource::core_nonzero(unsigned t, std::uint64_t k) {
  ensure(t, k);
  std::shared_lock lock(mu_);
  const PerT& slot = per_t_.at(t);
  if (t == 2 || t == 3) return slot.core_values[k] != 0;
  return sgn(slot.cores[k]) != 0;
}

// ---------------------------------------------------------------------------
// Support statistics

std::string SupportStats::decimal(int places) const {
  BigInt scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  // floor((2 * num * scale + den) / (2 * den)) rounds half up
  BigInt num = BigInt(static_cast<unsigned long>(proportion_num)) * scale * 2 + static_cast<unsigned long>(proportion_den);
  BigInt den = BigInt(static_cast<unsigned long>(proportion_den)) * 2;
  BigInt q = num / den;
  BigInt whole = q / scale;
  BigInt frac = q % scale;
  std::string digits = frac.get_str(10);
  if (digits.size() < static_cast<std::size_t>(places)) digits.insert(0, places - digits.size(), '0');
  if (places == 0) return whole.get_str(10);
  return whole.get_str(10) + "." + digits;
}

SupportStats support_stats(const CoeffTable& table) {
  SupportStats s;
  s.t = table.t;
  s.n = table.n;
  s.degree = table.degree();
  if (s.degree == 0) throw std::domain_error("support_stats: degree floor(n/t) is zero");
  s.nonzero_count = static_cast<std::size_t>(
      std::count_if(table.coeffs.begin(), table.coeffs.end(), [](const BigInt& c) { return sgn(c) != 0; }));
  const std::uint64_t g = std::gcd<std::uint64_t, std::uint64_t>(s.nonzero_count, s.degree);
  s.proportion_num = s.nonzero_count / g;
  s.proportion_den = s.degree / g;
  return s;
}

SupportStats support_stats(unsigned t, unsigned n) { return support_stats(coeff_table(t, n)); }

// ---------------------------------------------------------------------------
// Non-convergence witnesses

std::vector<NonconvergencePoint> nonconvergence_sequence(unsigned t, std::uint64_t q, std::uint64_t n0,
                                                         unsigned count) {
  if (t != 2 && t != 3) throw std::domain_error("nonconvergence_sequence: t must be 2 or 3");
  if (n0 == 0 || n0 % t != 0) throw std::domain_error(fmt::format("nonconvergence_sequence: n0 must be a positive multiple of {}", t));
  if (q > n0 / t) throw std::domain_error("nonconvergence_sequence: q must not exceed n0/t");

  std::vector<NonconvergencePoint> out;
  out.reserve(count);
  for (unsigned j = 1; j <= count; ++j) {
    NonconvergencePoint pt;
    pt.j = j;
    pt.n = static_cast<std::uint64_t>(j) * j * n0;
    pt.m = static_cast<std::uint64_t>(j) * j * (n0 / t) - q * j;
    const std::uint64_t core_weight = pt.n - t * pt.m;  // = t q j
    pt.is_zero = (t == 2) ? !is_triangular(static_cast<std::int64_t>(core_weight)) : char_sum_c(core_weight) == 0;
    out.push_back(pt);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Identities

IdentityReport verify_identities(std::size_t order) {
  IdentityReport report;
  report.order = order;

  const IntSeries two_cores = tcore_counts(2, order);
  for (std::size_t k = 0; k <= order; ++k) {
    if (two_cores[k] != two_core_count(k)) throw IdentityViolation("2-core", k);
    ++report.two_core_checked;
  }

  const IntSeries three_cores = tcore_counts(3, order);
  std::vector<std::int64_t> c(order + 1);
  for (std::size_t k = 0; k <= order; ++k) {
    c[k] = char_sum_c(k);
    if (three_cores[k] != static_cast<long>(c[k])) throw IdentityViolation("3-core", k);
    ++report.three_core_checked;
  }

  const IntSeries d = d_coefficients(order);
  for (std::size_t k = 0; k <= order; ++k) {
    const bool c_zero = c[k] == 0;
    const bool d_zero = sgn(d[k]) == 0;
    if (c_zero != d_zero || c_zero != vanish_t3(k)) throw IdentityViolation("vanishing", k);
    ++report.vanishing_checked;
  }

  for (std::size_t k = 0; k <= order; ++k) {
    if ((c[k] % 2 != 0) != is_perfect_square(3 * k + 1)) throw IdentityViolation("parity", k);
    ++report.parity_checked;
  }
  return report;
}

std::optional<std::uint64_t> first_parity_mismatch(std::uint64_t limit, ParityTarget target) {
  for (std::uint64_t k = 0; k <= limit; ++k) {
    const bool odd = char_sum_c(k) % 2 != 0;
    const bool square = is_perfect_square(target == ParityTarget::Index ? k : 3 * k + 1);
    if (odd != square) return k;
  }
  return std::nullopt;
}

}  // namespace hookdist
