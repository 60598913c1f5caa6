#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hookdist/hookstat.hpp"

namespace hookdist {

// Limit law of the number of hooks divisible by t: shape k = (t-1)/2,
// scale theta = sqrt(2/(t-1)); the standardized count tends to a X + b with
// a = -1, b = sqrt(2(t-1))/2.
struct GammaParams {
  unsigned t = 0;
  double shape = 0;
  double scale = 0;
  double a = -1;
  double b = 0;

  // Throws std::invalid_argument for t < 2.
  static GammaParams for_t(unsigned t);
};

// A point of S_{t;n}: grid index m and x = (n/t - m) t pi / sqrt(3(t-1)n).
struct GridPoint {
  unsigned t = 0;
  unsigned n = 0;
  std::size_t m = 0;
  double x = 0;
};

// sqrt(3(t-1)n) / (t pi), the factor turning a mass into f_{t;n}.
double grid_scale(unsigned t, unsigned n);
double grid_x(unsigned t, unsigned n, std::size_t m);
// Throws std::out_of_range for m > floor(n/t).
GridPoint grid_point(unsigned t, unsigned n, std::size_t m);
// Every grid point, ascending in x (descending in m).
std::vector<GridPoint> grid(unsigned t, unsigned n);

// num/den rounded toward zero to double precision, via an integer quotient
// carrying at least 60 significant bits.
double ratio_to_double(const BigInt& num, const BigInt& den);
// Natural log of a positive big integer from its bit length and leading bits.
double log_bigint(const BigInt& v);

// P(count = m) = p_t(m,n) / p(n). Throws std::out_of_range past the degree.
double pmf(const CoeffTable& table, std::size_t m);
std::vector<double> pmf_values(const CoeffTable& table);

// f_{t;n}(x) at a grid point. Throws std::invalid_argument for a point that
// does not belong to the table's grid.
double scaled_pmf(const CoeffTable& table, const GridPoint& point);

// Gamma density. Throws std::domain_error for x < 0; at x = 0 with shape < 1
// (t = 2) the density is unbounded and HUGE_VAL is returned.
double gamma_pdf(const GammaParams& params, double x);

// gamma(s, x) = int_0^x u^{s-1} e^{-u} du; series for x < s+1, continued
// fraction otherwise. Throws std::domain_error unless s > 0 and x >= 0.
double lower_incomplete_gamma(double s, double x);
// gamma(s, x) / Gamma(s).
double regularized_lower_gamma(double s, double x);

// Limiting CDF of (count - mu_t(n)) / sigma_t(n): P(b - X <= x) with
// X ~ Gamma(k, theta), i.e. 1 - P(k, k - sqrt(k) x), and 1 for x >= b.
double limit_cdf(unsigned t, double x);
// gamma(k, sqrt(k) x + k) / Gamma(k), 0 below x = -sqrt(k): the law of
// X - b, the mirror image of limit_cdf. Kept for comparison output.
double mirrored_limit_cdf(unsigned t, double x);

// Continuous curves through the nonzero values of f_{2;n} and f_{3;n}.
// Throw std::domain_error when n - sqrt(3(t-1)n) x / pi <= 0.
double h2(unsigned n, double x);
double h3(unsigned n, double x);
// Dispatches on t; throws std::invalid_argument for t other than 2, 3.
double continuous_approximation(unsigned t, unsigned n, double x);

// c(n - 3m): the integer multiple of h3 that the nonzero value of f_{3;n}
// follows at this point. Throws std::invalid_argument for t != 3 and
// std::domain_error at a vanishing point.
std::int64_t alpha_factor(const CoeffTable& table, const GridPoint& point);

// Asymptotic moments of the count.
double asymptotic_mean(unsigned t, unsigned n);
double asymptotic_variance(unsigned t, unsigned n);
double asymptotic_mode(unsigned t, unsigned n);

struct GridSample {
  std::size_t m = 0;
  double x = 0;
  double f = 0;
  double h = 0;          // NaN where no continuous approximation exists
  std::int64_t alpha = 0;  // t = 3, nonzero points only
  double g = 0;          // NaN for x < 0
};

struct CdfSample {
  double x = 0;
  double cdf = 0;
  double limit = 0;
  double gap = 0;
};

struct CharSample {
  double r = 0;
  std::complex<double> value;
  std::complex<double> limit;
  double gap = 0;
};

struct DistReport {
  unsigned t = 0;
  unsigned n = 0;
  double exact_mean = 0;
  double exact_variance = 0;
  std::size_t exact_mode = 0;
  double asymptotic_mean = 0;
  double asymptotic_variance = 0;
  double asymptotic_mode = 0;
  // The asymptotic mode lies outside 0..floor(n/t) (always so for t = 2).
  bool mode_extrapolated = false;
  std::vector<GridSample> grid;
  std::vector<CdfSample> cdf;
  std::vector<CharSample> char_fn;
};

// Exact moments and mode (smallest m on ties) alongside the asymptotics.
DistReport summary(const CoeffTable& table);
// summary() plus grid values, CDF comparisons at xs and characteristic
// function comparisons at rs.
DistReport build_report(const CoeffTable& table, std::span<const double> xs, std::span<const double> rs);
std::vector<GridSample> grid_samples(const CoeffTable& table);

// F_t(k, n), computed from exact partial sums; 0 for k < 0, 1 past the degree.
double cdf(const CoeffTable& table, std::int64_t k);
// F_t(floor(mu_t(n) + sigma_t(n) x), n).
double cdf_at_xi(const CoeffTable& table, double x);

// E[exp(i (Y - mu_t(n)) r / sigma_t(n))] with asymptotic mu and sigma.
std::complex<double> char_fn(const CoeffTable& table, double r);
// exp(i b r) / (1 - i theta a r)^k, principal branch.
std::complex<double> limit_char_fn(unsigned t, double r);

// sum_m (p_t(m,n)/p(n)) e^{i m theta}; multiply by p(n) for P_t(n, e^{i theta}).
std::complex<double> eval_poly_on_circle(const CoeffTable& table, double theta);

// A complex number as log|z| and arg z in (-pi, pi].
struct LogComplex {
  double log_magnitude = 0;
  double phase = 0;
};

// Main term of the saddle-point estimate of P_t(n, exp(alpha/sqrt(n))) for
// purely imaginary alpha (alpha = 0 allowed). Throws std::invalid_argument
// for t other than 2, 3 and std::domain_error when Re(alpha) != 0.
LogComplex saddle_asymptotic(unsigned t, unsigned n, std::complex<double> alpha);

// log of exp(pi sqrt(2n/3)) / (4 sqrt(3) n).
double hardy_ramanujan_log(unsigned n);

}  // namespace hookdist
