#include "hookdist/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <numbers>

#include <fmt/format.h>

#include "hookdist/dist.hpp"

namespace hookdist {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

CheckResult make(std::string id, std::string name, bool passed, std::string detail, double seconds) {
  return CheckResult{std::move(id), std::move(name), passed, false, std::move(detail), seconds};
}

bool nonincreasing(std::span<const double> values) {
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[i - 1]) return false;
  return true;
}

std::string join(std::span<const double> values, const char* spec = "{:.4g}") {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) s += " -> ";
    s += fmt::format(fmt::runtime(spec), values[i]);
  }
  return s;
}

constexpr unsigned kTs[] = {2, 3};
constexpr unsigned kTrend[] = {500, 2000, 5000};

std::vector<std::vector<SupportStats>> density_table_rows(TableSource& source, std::span<const unsigned> ts,
                                                          std::span<const unsigned> ns) {
  const unsigned max_n = *std::max_element(ns.begin(), ns.end());
  for (unsigned t : ts) source.prepare(t, max_n);
  std::vector<std::vector<SupportStats>> rows;
  for (unsigned n : ns) {
    std::vector<SupportStats> row;
    for (unsigned t : ts) row.push_back(support_stats(source.table(t, n)));
    rows.push_back(std::move(row));
  }
  return rows;
}

// Criterion 1: P_2(100, x) term by term.
std::vector<CheckResult> ac1() {
  const auto start = Clock::now();
  const CoeffTable table = coeff_table(2, 100);
  const double secs = seconds_since(start);
  const std::pair<std::size_t, const char*> expected[] = {
      {11, "752"},        {17, "8470"},       {32, "1046705"},  {36, "3157789"},
      {45, "31551450"},   {47, "51124970"},   {50, "103679156"},
  };
  std::vector<BigInt> want(51, 0);
  for (const auto& [m, c] : expected) want[m] = BigInt(c);
  const bool match = table.coeffs == want;
  return {make("AC1", "P_2(100,x) exact coefficients, under 1 s", match && secs < 1.0,
               fmt::format("{} in {:.3f} s", match ? "all 51 coefficients match" : "coefficient mismatch", secs),
               secs)};
}

// Criterion 2: proportions of nonzero coefficients, 5 decimals.
std::vector<CheckResult> ac2(TableSource& source) {
  struct Cell {
    unsigned n;
    double t2, t3;
  };
  static constexpr Cell kPrinted[] = {
      {100, 0.14000, 0.63636},  {500, 0.06400, 0.50602},  {1000, 0.04600, 0.47147},
      {1500, 0.03600, 0.46200}, {2000, 0.03100, 0.45496}, {2500, 0.02800, 0.44658},
      {3000, 0.02600, 0.44400}, {3500, 0.02400, 0.43825}, {4000, 0.02250, 0.43661},
      {4500, 0.02088, 0.43200}, {5000, 0.02000, 0.43097},
  };
  const auto start = Clock::now();
  std::vector<unsigned> ns;
  for (const auto& c : kPrinted) ns.push_back(c.n);
  const auto rows = density_table_rows(source, kTs, ns);
  const double secs = seconds_since(start);
  std::string detail;
  bool ok = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double printed[] = {kPrinted[i].t2, kPrinted[i].t3};
    for (std::size_t k = 0; k < 2; ++k) {
      const auto& s = rows[i][k];
      const double implied = std::round(printed[k] * static_cast<double>(s.degree));
      const bool cell_ok = implied == static_cast<double>(s.nonzero_count) &&
                           std::abs(s.proportion() - printed[k]) < 1e-5;
      if (!cell_ok && ok) {
        detail = fmt::format("t={} n={}: {}/{} = {:.6f} vs printed {:.5f}", kTs[k], kPrinted[i].n, s.nonzero_count,
                             s.degree, s.proportion(), printed[k]);
      }
      ok = ok && cell_ok;
    }
  }
  if (ok) detail = fmt::format("22 cells match in {:.3f} s", secs);
  return {make("AC2", "nonzero-coefficient proportions table, under 2 min", ok && secs < 120, detail, secs)};
}

// Criterion 3: closed form against enumeration.
std::vector<CheckResult> ac3() {
  const auto start = Clock::now();
  constexpr unsigned kOracleTs[] = {2, 3, 4, 5, 6};
  const auto mismatch = first_oracle_mismatch(kOracleTs, 35, [](unsigned t, unsigned n) { return coeff_table(t, n); });
  const double secs = seconds_since(start);
  const std::string detail =
      mismatch ? fmt::format("first mismatch at t={} n={} m={}", mismatch->t, mismatch->n, mismatch->m)
               : fmt::format("t=2..6, n<=35 agree in {:.2f} s", secs);
  return {make("AC3", "coefficients equal brute-force enumeration", !mismatch && secs < 300, detail, secs)};
}

// Criterion 4: coefficients sum to p(n).
std::vector<CheckResult> ac4(TableSource& source, unsigned max_n) {
  const auto start = Clock::now();
  std::string detail;
  bool ok = true;
  for (unsigned t : kTs) {
    source.prepare(t, max_n);
    for (unsigned n = 1; n <= max_n && ok; ++n) {
      if (source.table(t, n).total() != source.partition_number(n)) {
        ok = false;
        detail = fmt::format("sum differs from p(n) at t={} n={}", t, n);
      }
    }
  }
  const double secs = seconds_since(start);
  if (ok) detail = fmt::format("t=2,3 and n<={} in {:.2f} s", max_n, secs);
  return {make("AC4", "coefficients sum to p(n)", ok, detail, secs)};
}

// Criterion 5: product identities, vanishing and parity.
std::vector<CheckResult> ac5(std::size_t order, std::uint64_t limit, bool literal_parity) {
  std::vector<CheckResult> out;
  auto start = Clock::now();
  bool parity_ok = true;
  try {
    const auto report = verify_identities(std::max<std::size_t>(order, limit));
    out.push_back(make("AC5a", "2-core and 3-core product identities", true,
                       fmt::format("{} and {} coefficients", report.two_core_checked, report.three_core_checked),
                       seconds_since(start)));
    out.push_back(make("AC5b", "c(k)=0 <=> d(k)=0 <=> vanish_t3(k)", true,
                       fmt::format("k <= {}", report.vanishing_checked - 1), 0));
  } catch (const IdentityViolation& e) {
    const bool products = e.identity() == "2-core" || e.identity() == "3-core";
    parity_ok = e.identity() != "parity";
    out.push_back(make("AC5a", "2-core and 3-core product identities", !products,
                       products ? e.what() : "held before a later identity failed", seconds_since(start)));
    out.push_back(make("AC5b", "c(k)=0 <=> d(k)=0 <=> vanish_t3(k)", e.identity() != "vanishing", e.what(), 0));
  }

  if (!literal_parity) {
    out.push_back(make("AC5c", "c(k) odd <=> 3k+1 is a perfect square", parity_ok, fmt::format("k <= {}", limit), 0));
    return out;
  }

  start = Clock::now();
  const auto literal = first_parity_mismatch(limit, ParityTarget::Index);
  out.push_back(make("AC5c", "c(k) odd <=> k is a perfect square", !literal,
                     literal ? fmt::format("fails at k={}: c(k)={}", *literal, char_sum_c(*literal))
                             : fmt::format("k <= {}", limit),
                     seconds_since(start)));

  start = Clock::now();
  const auto corrected = first_parity_mismatch(limit, ParityTarget::Norm);
  auto info = make("AC5c*", "c(k) odd <=> 3k+1 is a perfect square", !corrected,
                   corrected ? fmt::format("fails at k={}", *corrected) : fmt::format("k <= {}", limit),
                   seconds_since(start));
  info.informational = true;
  out.push_back(std::move(info));
  return out;
}

// Criterion 6: degree, leading coefficient and positivity.
std::vector<CheckResult> ac6(TableSource& source, unsigned max_n_small_t, unsigned max_n_large_t) {
  std::vector<CheckResult> out;
  auto start = Clock::now();
  std::string detail;
  bool ok = true;
  for (unsigned t : kTs) {
    source.prepare(t, max_n_small_t);
    for (unsigned n = 1; n <= max_n_small_t && ok; ++n) {
      const auto table = source.table(t, n);
      if (table.degree() != n / t || sgn(table.coeffs.back()) <= 0) {
        ok = false;
        detail = fmt::format("t={} n={}", t, n);
      }
    }
  }
  if (ok) detail = fmt::format("t=2,3 and n<={}", max_n_small_t);
  out.push_back(make("AC6a", "degree floor(n/t) with positive leading coefficient", ok, detail, seconds_since(start)));

  start = Clock::now();
  ok = true;
  for (unsigned t = 4; t <= 12 && ok; ++t) {
    source.prepare(t, max_n_large_t);
    for (unsigned n = 1; n <= max_n_large_t && ok; ++n) {
      const auto table = source.table(t, n);
      for (std::size_t m = 0; m < table.coeffs.size(); ++m) {
        if (sgn(table.coeffs[m]) <= 0) {
          ok = false;
          detail = fmt::format("zero coefficient at t={} n={} m={}", t, n, m);
          break;
        }
      }
    }
  }
  if (ok) detail = fmt::format("t=4..12 and n<={}", max_n_large_t);
  out.push_back(make("AC6b", "all coefficients positive for t>=4", ok, detail, seconds_since(start)));
  return out;
}

// Criterion 7: CDF gap trend.
std::vector<CheckResult> ac7(TableSource& source) {
  std::vector<CheckResult> out;
  for (unsigned t : kTs) {
    const auto start = Clock::now();
    std::vector<double> gaps;
    for (unsigned n : kTrend) {
      const auto table = source.table(t, n);
      double worst = 0;
      for (double x : {-2.0, -1.0, 0.0, 1.0, 2.0}) worst = std::max(worst, std::abs(cdf_at_xi(table, x) - limit_cdf(t, x)));
      gaps.push_back(worst);
    }
    const bool ok = nonincreasing(gaps) && gaps.back() <= 0.05;
    out.push_back(make(fmt::format("AC7.t{}", t), fmt::format("CDF gap shrinks, <= 0.05 at n=5000 (t={})", t), ok,
                       fmt::format("max gap over n=500,2000,5000: {}", join(gaps)), seconds_since(start)));
  }
  return out;
}

// Criterion 8: characteristic-function gap trend.
std::vector<CheckResult> ac8(TableSource& source) {
  std::vector<CheckResult> out;
  constexpr double kRs[] = {-2, -1, -0.5, 0.5, 1, 2};
  for (unsigned t : kTs) {
    const auto start = Clock::now();
    std::vector<CoeffTable> tables;
    for (unsigned n : kTrend) tables.push_back(source.table(t, n));
    bool ok = true;
    std::string detail;
    std::vector<double> worst(std::size(kTrend), 0.0);
    for (double r : kRs) {
      std::vector<double> gaps;
      for (const auto& table : tables) gaps.push_back(std::abs(char_fn(table, r) - limit_char_fn(t, r)));
      for (std::size_t i = 0; i < gaps.size(); ++i) worst[i] = std::max(worst[i], gaps[i]);
      if (ok && (!nonincreasing(gaps) || gaps.back() > 0.05)) {
        ok = false;
        detail = fmt::format("r={}: {}", r, join(gaps));
      }
    }
    if (ok) detail = fmt::format("max gap over n=500,2000,5000: {}", join(worst));
    out.push_back(make(fmt::format("AC8.t{}", t), fmt::format("char. function gap shrinks, <= 0.05 (t={})", t), ok,
                       detail, seconds_since(start)));
  }
  return out;
}

// Criterion 9: saddle-point main term against the exact polynomial.
std::vector<CheckResult> ac9(TableSource& source) {
  std::vector<CheckResult> out;
  constexpr unsigned kNs[] = {1000, 2000, 4000};
  constexpr double kAlphas[] = {0.0, 0.5, 1.0};
  for (unsigned t : kTs) {
    const auto start = Clock::now();
    bool ok = true;
    std::string detail;
    for (double y : kAlphas) {
      std::vector<double> devs;
      double last_ratio = 0;
      for (unsigned n : kNs) {
        const auto table = source.table(t, n);
        const double log_exact = std::log(std::abs(eval_poly_on_circle(table, y / std::sqrt(n)))) +
                                 log_bigint(source.partition_number(n));
        const auto approx = saddle_asymptotic(t, n, {0.0, y});
        last_ratio = std::exp(log_exact - approx.log_magnitude);
        devs.push_back(std::abs(last_ratio - 1));
      }
      detail += fmt::format("{}alpha={}i: ratio {:.4f} at n=4000", detail.empty() ? "" : "; ", y, last_ratio);
      if (!nonincreasing(devs) || last_ratio < 0.9 || last_ratio > 1.1) ok = false;
    }
    out.push_back(make(fmt::format("AC9.t{}", t), fmt::format("saddle-point ratio in [0.9,1.1] (t={})", t), ok, detail,
                       seconds_since(start)));
  }

  const auto start = Clock::now();
  double worst = 0;
  for (unsigned t : kTs)
    for (unsigned n : {1u, 10u, 100u, 1000u, 4000u, 100000u}) {
      const double a = saddle_asymptotic(t, n, {0.0, 0.0}).log_magnitude;
      const double b = hardy_ramanujan_log(n);
      worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(b)));
    }
  out.push_back(make("AC9.hr", "alpha=0 gives the Hardy-Ramanujan main term", worst < 1e-13,
                     fmt::format("max relative difference {:.2e}", worst), seconds_since(start)));
  return out;
}

// Criterion 10: continuous approximation fit.
std::vector<CheckResult> ac10(TableSource& source) {
  std::vector<CheckResult> out;
  for (auto [t, n] : {std::pair{2u, 5000u}, std::pair{3u, 10000u}}) {
    const auto start = Clock::now();
    double worst = 0;
    std::size_t worst_m = 0;
    for (const auto& s : grid_samples(source.table(t, n))) {
      if (s.m < 500 || s.f == 0) continue;
      const double alpha = t == 3 ? static_cast<double>(s.alpha) : 1.0;
      const double dev = std::abs(s.f / (alpha * s.h) - 1);
      if (dev > worst) {
        worst = dev;
        worst_m = s.m;
      }
    }
    out.push_back(make(fmt::format("AC10.t{}", t), fmt::format("|f/(alpha h) - 1| <= 0.10 for m >= 500 (t={}, n={})", t, n),
                       worst <= 0.10, fmt::format("worst {:.4f} at m={}", worst, worst_m), seconds_since(start)));
  }
  const auto start = Clock::now();
  const double target = 3 * std::sqrt(3.0) / (2 * std::numbers::pi) * std::exp(-1.0);
  const double ratio = h3(1'000'000, 1.0) / target;
  out.push_back(make("AC10.h3", "h_3 at x=1, n=10^6 within 1% of its limit", std::abs(ratio - 1) <= 0.01,
                     fmt::format("ratio {:.6f}", ratio), seconds_since(start)));
  return out;
}

// Criterion 11: exact moments against the asymptotics.
std::vector<CheckResult> ac11(TableSource& source) {
  std::vector<CheckResult> out;
  for (unsigned t : kTs) {
    const auto start = Clock::now();
    const auto s = summary(source.table(t, 5000));
    const double dm = std::abs(s.exact_mean / s.asymptotic_mean - 1);
    const double dv = std::abs(s.exact_variance / s.asymptotic_variance - 1);
    out.push_back(make(fmt::format("AC11.t{}", t), fmt::format("mean and variance within 5% at n=5000 (t={})", t),
                       dm <= 0.05 && dv <= 0.05,
                       fmt::format("mean {:.2f} vs {:.2f}, variance {:.2f} vs {:.2f}", s.exact_mean, s.asymptotic_mean,
                                   s.exact_variance, s.asymptotic_variance),
                       seconds_since(start)));
  }
  return out;
}

// Criterion 12: vanishing grid points along n_j = j^2 n0.
std::vector<CheckResult> ac12(TableSource& source, std::uint64_t table_limit) {
  std::vector<CheckResult> out;
  for (auto [t, n0] : {std::pair{2u, std::uint64_t{4}}, std::pair{3u, std::uint64_t{3}}}) {
    const auto start = Clock::now();
    const auto seq = nonconvergence_sequence(t, 1, n0, 50);
    const auto zero = std::find_if(seq.begin(), seq.end(), [](const auto& p) { return p.is_zero; });
    bool consistent = true;
    std::string detail;
    for (const auto& p : seq) {
      if (p.n > table_limit) break;
      const auto table = source.table(t, static_cast<unsigned>(p.n));
      if ((sgn(table.coeffs.at(p.m)) == 0) != p.is_zero) {
        consistent = false;
        detail = fmt::format("table disagrees at j={} (n={}, m={})", p.j, p.n, p.m);
        break;
      }
    }
    const bool ok = zero != seq.end() && consistent;
    if (consistent)
      detail = zero != seq.end() ? fmt::format("q=1 n0={}: first zero at j={} (n={}, m={})", n0, zero->j, zero->n, zero->m)
                                 : fmt::format("q=1 n0={}: no zero for j<=50", n0);
    out.push_back(make(fmt::format("AC12.t{}", t), fmt::format("a vanishing grid point along j^2 n0 (t={})", t), ok,
                       detail, seconds_since(start)));
  }
  return out;
}

}  // namespace

std::optional<OracleMismatch> first_oracle_mismatch(std::span<const unsigned> ts, unsigned max_n,
                                                    const TableFn& table_fn) {
  for (unsigned n = 1; n <= max_n; ++n) {
    std::vector<CoeffTable> truth(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) truth[i] = CoeffTable{ts[i], n, std::vector<BigInt>(n / ts[i] + 1, 0)};
    for_each_partition(n, [&](const Partition& p) {
      for (std::size_t i = 0; i < ts.size(); ++i) truth[i].coeffs[hook_count_divisible(p, ts[i])] += 1;
    }, std::max(max_n, kEnumerationBound));
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const CoeffTable got = table_fn(ts[i], n);
      const std::size_t len = std::max(got.coeffs.size(), truth[i].coeffs.size());
      for (std::size_t m = 0; m < len; ++m) {
        const BigInt a = m < got.coeffs.size() ? got.coeffs[m] : BigInt(0);
        const BigInt b = m < truth[i].coeffs.size() ? truth[i].coeffs[m] : BigInt(0);
        if (a != b) return OracleMismatch{ts[i], n, m};
      }
    }
  }
  return std::nullopt;
}

std::vector<CheckResult> run_criterion(int criterion, TableSource& source) {
  switch (criterion) {
    case 1: return ac1();
    case 2: return ac2(source);
    case 3: return ac3();
    case 4: return ac4(source, 5000);
    case 5: return ac5(2000, 10000, true);
    case 6: return ac6(source, 5000, 2000);
    case 7: return ac7(source);
    case 8: return ac8(source);
    case 9: return ac9(source);
    case 10: return ac10(source);
    case 11: return ac11(source);
    case 12: return ac12(source, 5000);
    default: throw std::invalid_argument(fmt::format("no acceptance criterion {}", criterion));
  }
}

std::vector<CheckResult> run_verification(VerifyLevel level, TableSource& source) {
  std::vector<CheckResult> out;
  const auto append = [&](std::vector<CheckResult> more) {
    for (auto& r : more) out.push_back(std::move(r));
  };
  if (level == VerifyLevel::Full) {
    for (int c = 1; c <= 12; ++c) append(run_criterion(c, source));
    return out;
  }
  append(ac1());
  append(ac3());
  append(ac4(source, 500));
  append(ac5(500, 500, false));
  append(ac6(source, 500, 500));
  append(ac12(source, 500));
  return out;
}

bool all_passed(std::span<const CheckResult> results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& r) { return r.passed || r.informational; });
}

}  // namespace hookdist
