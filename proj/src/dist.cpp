#include "hookdist/dist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

namespace hookdist {

namespace {

using std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_t(unsigned t) {
  if (t < 2) throw std::invalid_argument(fmt::format("t must be at least 2, got {}", t));
}

struct Sums {
  BigInt total;
  BigInt first;   // sum m p_t(m,n)
  BigInt second;  // sum m^2 p_t(m,n)
};

Sums moment_sums(const CoeffTable& table) {
  Sums s;
  for (std::size_t m = 0; m < table.coeffs.size(); ++m) {
    const auto& c = table.coeffs[m];
    if (sgn(c) == 0) continue;
    const BigInt weighted = c * static_cast<unsigned long>(m);
    s.total += c;
    s.first += weighted;
    s.second += weighted * static_cast<unsigned long>(m);
  }
  return s;
}

}  // namespace

GammaParams GammaParams::for_t(unsigned t) {
  require_t(t);
  const double tm1 = t - 1.0;
  return GammaParams{t, tm1 / 2.0, std::sqrt(2.0 / tm1), -1.0, std::sqrt(2.0 * tm1) / 2.0};
}

// ---------------------------------------------------------------------------
// Grid

double grid_scale(unsigned t, unsigned n) {
  require_t(t);
  return std::sqrt(3.0 * (t - 1.0) * n) / (t * pi);
}

double grid_x(unsigned t, unsigned n, std::size_t m) {
  return (static_cast<double>(n) / t - static_cast<double>(m)) / grid_scale(t, n);
}

GridPoint grid_point(unsigned t, unsigned n, std::size_t m) {
  if (m > n / t) throw std::out_of_range(fmt::format("grid index {} exceeds degree {}", m, n / t));
  return GridPoint{t, n, m, grid_x(t, n, m)};
}

std::vector<GridPoint> grid(unsigned t, unsigned n) {
  std::vector<GridPoint> out;
  out.reserve(n / t + 1);
  for (std::size_t m = n / t + 1; m-- > 0;) out.push_back(grid_point(t, n, m));
  return out;
}

// ---------------------------------------------------------------------------
// Big-integer conversions

double ratio_to_double(const BigInt& num, const BigInt& den) {
  if (sgn(den) == 0) throw std::domain_error("ratio_to_double: zero denominator");
  if (sgn(num) == 0) return 0.0;
  const long num_bits = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2));
  const long den_bits = static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
  const long shift = den_bits - num_bits + 64;
  BigInt scaled_num = num;
  BigInt scaled_den = den;
  if (shift >= 0)
    scaled_num <<= static_cast<mp_bitcnt_t>(shift);
  else
    scaled_den <<= static_cast<mp_bitcnt_t>(-shift);
  BigInt q;
  mpz_tdiv_q(q.get_mpz_t(), scaled_num.get_mpz_t(), scaled_den.get_mpz_t());
  return std::ldexp(q.get_d(), static_cast<int>(-shift));
}

double log_bigint(const BigInt& v) {
  if (sgn(v) <= 0) throw std::domain_error("log_bigint: argument must be positive");
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, v.get_mpz_t());
  return std::log(mantissa) + static_cast<double>(exponent) * std::numbers::ln2;
}

// ---------------------------------------------------------------------------
// Mass functions

double pmf(const CoeffTable& table, std::size_t m) {
  if (m > table.degree()) throw std::out_of_range(fmt::format("pmf index {} exceeds degree {}", m, table.degree()));
  return ratio_to_double(table.coeffs[m], table.total());
}

std::vector<double> pmf_values(const CoeffTable& table) {
  const BigInt total = table.total();
  std::vector<double> out(table.coeffs.size());
  for (std::size_t m = 0; m < out.size(); ++m) out[m] = ratio_to_double(table.coeffs[m], total);
  return out;
}

double scaled_pmf(const CoeffTable& table, const GridPoint& point) {
  if (point.t != table.t || point.n != table.n || point.m > table.degree())
    throw std::invalid_argument("scaled_pmf: point does not belong to this table's grid");
  const double expected = grid_x(table.t, table.n, point.m);
  if (std::abs(point.x - expected) > 1e-9 * std::max(1.0, std::abs(expected)))
    throw std::invalid_argument(fmt::format("scaled_pmf: x = {} is off the grid (index {} has x = {})", point.x,
                                            point.m, expected));
  return grid_scale(table.t, table.n) * pmf(table, point.m);
}

// ---------------------------------------------------------------------------
// Gamma law

double gamma_pdf(const GammaParams& params, double x) {
  if (x < 0) throw std::domain_error("gamma_pdf: negative argument");
  const double k = params.shape;
  const double theta = params.scale;
  if (x == 0) {
    if (k < 1) return HUGE_VAL;
    if (k == 1) return 1.0 / theta;
    return 0.0;
  }
  return std::exp((k - 1) * std::log(x) - x / theta - std::lgamma(k) - k * std::log(theta));
}

namespace {

constexpr int kMaxIterations = 10'000;
constexpr double kEps = 1e-16;

// P(s, x) by its power series; converges quickly for x < s + 1.
double gamma_p_series(double s, double x) {
  double term = 1.0 / s;
  double sum = term;
  for (int n = 1; n < kMaxIterations; ++n) {
    term *= x / (s + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) break;
  }
  return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

// Q(s, x) by the modified Lentz continued fraction; for x >= s + 1.
double gamma_q_fraction(double s, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - s;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - s);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return std::exp(-x + s * std::log(x) - std::lgamma(s)) * h;
}

void check_gamma_args(double s, double x) {
  if (!(s > 0)) throw std::domain_error("incomplete gamma: s must be positive");
  if (!(x >= 0)) throw std::domain_error("incomplete gamma: x must be nonnegative");
}

}  // namespace

double regularized_lower_gamma(double s, double x) {
  check_gamma_args(s, x);
  if (x == 0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return x < s + 1 ? gamma_p_series(s, x) : 1.0 - gamma_q_fraction(s, x);
}

double lower_incomplete_gamma(double s, double x) { return regularized_lower_gamma(s, x) * std::tgamma(s); }

double limit_cdf(unsigned t, double x) {
  const auto g = GammaParams::for_t(t);
  const double arg = (g.b - x) / g.scale;  // k - sqrt(k) x
  if (arg <= 0) return 1.0;
  return 1.0 - regularized_lower_gamma(g.shape, arg);
}

double mirrored_limit_cdf(unsigned t, double x) {
  const auto g = GammaParams::for_t(t);
  const double arg = std::sqrt(g.shape) * x + g.shape;
  if (arg <= 0) return 0.0;
  return regularized_lower_gamma(g.shape, arg);
}

// ---------------------------------------------------------------------------
// Continuous approximations

namespace {

double checked_inner(unsigned n, double x, double coefficient) {
  const double inner = n - coefficient * std::sqrt(static_cast<double>(n)) * x / pi;
  if (!(inner > 0))
    throw std::domain_error(fmt::format("continuous approximation undefined at x = {} for n = {}", x, n));
  return inner;
}

double exponent_term(unsigned n, double inner) {
  return pi * std::sqrt(2.0 / 3.0) * (std::sqrt(inner) - std::sqrt(static_cast<double>(n)));
}

}  // namespace

double h2(unsigned n, double x) {
  const double inner = checked_inner(n, x, std::sqrt(3.0));
  const double nn = n;
  return std::pow(3.0, 0.25) * std::pow(nn, 1.5) * std::exp(exponent_term(n, inner)) /
         (2 * pi * std::pow(inner / 2, 1.25));
}

double h3(unsigned n, double x) {
  const double inner = checked_inner(n, x, std::sqrt(6.0));
  const double nn = n;
  return 3 * std::sqrt(3.0) * std::pow(nn, 1.5) * std::exp(exponent_term(n, inner)) / (2 * pi * std::pow(inner, 1.5));
}

double continuous_approximation(unsigned t, unsigned n, double x) {
  if (t == 2) return h2(n, x);
  if (t == 3) return h3(n, x);
  throw std::invalid_argument(fmt::format("no continuous approximation for t = {}", t));
}

std::int64_t alpha_factor(const CoeffTable& table, const GridPoint& point) {
  if (table.t != 3 || point.t != 3) throw std::invalid_argument("alpha_factor is defined for t = 3 only");
  if (point.n != table.n || point.m > table.degree()) throw std::invalid_argument("alpha_factor: point not on this grid");
  const std::int64_t c = char_sum_c(table.n - 3 * point.m);
  if (c == 0) throw std::domain_error(fmt::format("alpha_factor: f vanishes at grid index {}", point.m));
  return c;
}

// ---------------------------------------------------------------------------
// Moments and reports

double asymptotic_mean(unsigned t, unsigned n) {
  require_t(t);
  return static_cast<double>(n) / t - (t - 1.0) * std::sqrt(6.0 * n) / (2 * pi * t);
}

double asymptotic_variance(unsigned t, unsigned n) {
  require_t(t);
  return 3.0 * (t - 1.0) * n / (pi * pi * t * t);
}

double asymptotic_mode(unsigned t, unsigned n) {
  require_t(t);
  return static_cast<double>(n) / t - (t - 3.0) * std::sqrt(6.0 * n) / (2 * pi * t);
}

DistReport summary(const CoeffTable& table) {
  DistReport r;
  r.t = table.t;
  r.n = table.n;
  const Sums s = moment_sums(table);
  r.exact_mean = ratio_to_double(s.first, s.total);
  r.exact_variance = ratio_to_double(s.total * s.second - s.first * s.first, s.total * s.total);
  const auto top = std::max_element(table.coeffs.begin(), table.coeffs.end(),
                                    [](const BigInt& a, const BigInt& b) { return a < b; });
  r.exact_mode = static_cast<std::size_t>(top - table.coeffs.begin());
  r.asymptotic_mean = asymptotic_mean(table.t, table.n);
  r.asymptotic_variance = asymptotic_variance(table.t, table.n);
  r.asymptotic_mode = asymptotic_mode(table.t, table.n);
  r.mode_extrapolated = r.asymptotic_mode < 0 || r.asymptotic_mode > static_cast<double>(table.degree());
  return r;
}

std::vector<GridSample> grid_samples(const CoeffTable& table) {
  const auto params = GammaParams::for_t(table.t);
  const auto masses = pmf_values(table);
  const double scale = grid_scale(table.t, table.n);
  std::vector<GridSample> out;
  out.reserve(masses.size());
  for (const auto& pt : grid(table.t, table.n)) {
    GridSample s;
    s.m = pt.m;
    s.x = pt.x;
    s.f = scale * masses[pt.m];
    s.h = kNaN;
    if (table.t == 2 || table.t == 3) {
      try {
        s.h = continuous_approximation(table.t, table.n, pt.x);
      } catch (const std::domain_error&) {
        // m = 0 end of the grid: the closed form has a pole there.
      }
    }
    if (table.t == 3 && sgn(table.coeffs[pt.m]) != 0) s.alpha = alpha_factor(table, pt);
    s.g = pt.x >= 0 ? gamma_pdf(params, pt.x) : kNaN;
    out.push_back(s);
  }
  return out;
}

DistReport build_report(const CoeffTable& table, std::span<const double> xs, std::span<const double> rs) {
  DistReport r = summary(table);
  r.grid = grid_samples(table);
  for (double x : xs) {
    CdfSample s{x, cdf_at_xi(table, x), limit_cdf(table.t, x), 0};
    s.gap = std::abs(s.cdf - s.limit);
    r.cdf.push_back(s);
  }
  for (double rr : rs) {
    CharSample s{rr, char_fn(table, rr), limit_char_fn(table.t, rr), 0};
    s.gap = std::abs(s.value - s.limit);
    r.char_fn.push_back(s);
  }
  return r;
}

// ---------------------------------------------------------------------------
// CDFs and characteristic functions

double cdf(const CoeffTable& table, std::int64_t k) {
  if (k < 0) return 0.0;
  if (static_cast<std::uint64_t>(k) >= table.degree()) return 1.0;
  BigInt partial = 0;
  for (std::int64_t m = 0; m <= k; ++m) partial += table.coeffs[static_cast<std::size_t>(m)];
  return ratio_to_double(partial, table.total());
}

double cdf_at_xi(const CoeffTable& table, double x) {
  const double xi = asymptotic_mean(table.t, table.n) + std::sqrt(asymptotic_variance(table.t, table.n)) * x;
  const double k = std::floor(xi);
  if (k < 0) return 0.0;
  if (k >= static_cast<double>(table.degree())) return 1.0;
  return cdf(table, static_cast<std::int64_t>(k));
}

std::complex<double> char_fn(const CoeffTable& table, double r) {
  const double mu = asymptotic_mean(table.t, table.n);
  const double sigma = std::sqrt(asymptotic_variance(table.t, table.n));
  const auto masses = pmf_values(table);
  std::complex<double> sum = 0;
  for (std::size_t m = 0; m < masses.size(); ++m) {
    if (masses[m] == 0) continue;
    sum += masses[m] * std::polar(1.0, (static_cast<double>(m) - mu) * r / sigma);
  }
  return sum;
}

std::complex<double> limit_char_fn(unsigned t, double r) {
  const auto g = GammaParams::for_t(t);
  const std::complex<double> base(1.0, -g.scale * g.a * r);
  return std::polar(1.0, g.b * r) / std::pow(base, g.shape);
}

std::complex<double> eval_poly_on_circle(const CoeffTable& table, double theta) {
  const auto masses = pmf_values(table);
  std::complex<double> sum = 0;
  for (std::size_t m = 0; m < masses.size(); ++m) {
    if (masses[m] == 0) continue;
    sum += masses[m] * std::polar(1.0, static_cast<double>(m) * theta);
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Saddle point

LogComplex saddle_asymptotic(unsigned t, unsigned n, std::complex<double> alpha) {
  if (t != 2 && t != 3) throw std::invalid_argument("saddle_asymptotic: t must be 2 or 3");
  if (alpha.real() != 0) throw std::domain_error("saddle_asymptotic: alpha must be purely imaginary");
  using C = std::complex<double>;
  const double pt = pi * t;
  const double nn = n;
  const C log_value = -std::log(std::pow(2.0, 1.75) * std::pow(3.0, 0.25) * nn) +
                      0.5 * std::log(1.0 / std::sqrt(6.0) + alpha / pt) +
                      (t / 2.0) * std::log(C(pt) / (pt + alpha * std::sqrt(6.0))) +
                      pi * std::sqrt(nn) * (std::sqrt(2.0 / 3.0) + alpha / pt);
  return LogComplex{log_value.real(), std::remainder(log_value.imag(), 2 * pi)};
}

double hardy_ramanujan_log(unsigned n) {
  const double nn = n;
  return pi * std::sqrt(2 * nn / 3) - std::log(4 * std::sqrt(3.0) * nn);
}

}  // namespace hookdist
