#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "hookdist/dist.hpp"
#include "oracles.hpp"

using namespace hookdist;
using std::numbers::pi;

namespace {

const CoeffTable& table_2_100() {
  static const CoeffTable t = coeff_table(2, 100);
  return t;
}

}  // namespace

TEST_CASE("gamma parameters") {
  const auto g2 = GammaParams::for_t(2);
  CHECK(g2.shape == doctest::Approx(0.5));
  CHECK(g2.scale == doctest::Approx(std::sqrt(2.0)));
  CHECK(g2.b == doctest::Approx(std::sqrt(2.0) / 2));
  const auto g3 = GammaParams::for_t(3);
  CHECK(g3.shape == 1);
  CHECK(g3.scale == doctest::Approx(1));
  CHECK(g3.b == doctest::Approx(1));
  for (unsigned t = 2; t <= 12; ++t) {
    const auto g = GammaParams::for_t(t);
    CHECK(g.shape * g.scale * g.scale == doctest::Approx(1));  // unit variance
    CHECK(g.shape * g.scale == doctest::Approx(g.b));          // mean zero
  }
  CHECK_THROWS_AS(GammaParams::for_t(1), std::invalid_argument);
}

TEST_CASE("grid") {
  const auto pts = grid(2, 100);
  REQUIRE(pts.size() == 51);
  CHECK(pts.front().m == 50);
  CHECK(pts.front().x == doctest::Approx(0).epsilon(1e-12));
  for (std::size_t i = 1; i < pts.size(); ++i) CHECK(pts[i].x > pts[i - 1].x);
  CHECK(grid_x(3, 300, 0) == doctest::Approx(100 * 3 * pi / std::sqrt(6.0 * 300)));
  CHECK(grid_scale(2, 100) == doctest::Approx(std::sqrt(300.0) / (2 * pi)));
  CHECK_THROWS_AS(grid_point(2, 100, 51), std::out_of_range);
}

TEST_CASE("big integer conversions") {
  CHECK(ratio_to_double(BigInt(1), BigInt(3)) == doctest::Approx(1.0 / 3).epsilon(1e-15));
  BigInt big = 1;
  big <<= 400;
  CHECK(ratio_to_double(big * 2 + 1, big * 3) == doctest::Approx(2.0 / 3).epsilon(1e-15));
  CHECK(ratio_to_double(BigInt(0), big) == 0);
  BigInt googol = 1;
  for (int i = 0; i < 100; ++i) googol *= 10;
  CHECK(log_bigint(googol) == doctest::Approx(100 * std::log(10.0)).epsilon(1e-14));
  CHECK(log_bigint(BigInt(1)) == 0);
}

TEST_CASE("mass function of P_2(100, x)") {
  const auto& t = table_2_100();
  CHECK(pmf(t, 50) == doctest::Approx(103679156.0 / 190569292.0).epsilon(1e-14));
  CHECK(pmf(t, 12) == 0);
  CHECK_THROWS_AS(pmf(t, 51), std::out_of_range);
  double sum = 0;
  for (double v : pmf_values(t)) sum += v;
  CHECK(sum == doctest::Approx(1).epsilon(1e-14));
  const auto pt = grid_point(2, 100, 50);
  CHECK(scaled_pmf(t, pt) == doctest::Approx(grid_scale(2, 100) * pmf(t, 50)));
  CHECK_THROWS_AS(scaled_pmf(t, grid_point(2, 102, 50)), std::invalid_argument);
}

TEST_CASE("cdf of P_2(100, x)") {
  const auto& t = table_2_100();
  CHECK(cdf(t, 10) == 0);
  CHECK(cdf(t, 11) == doctest::Approx(752.0 / 190569292.0).epsilon(1e-14));
  CHECK(cdf(t, -3) == 0);
  CHECK(cdf(t, 50) == 1);
  CHECK(cdf(t, 49) == doctest::Approx(1 - 103679156.0 / 190569292.0).epsilon(1e-14));
}

TEST_CASE("summary of P_2(100, x)") {
  const auto s = summary(table_2_100());
  const double terms[][2] = {{11, 752},      {17, 8470},     {32, 1046705},  {36, 3157789},
                             {45, 31551450}, {47, 51124970}, {50, 103679156}};
  double mean = 0, second = 0;
  for (const auto& [m, c] : terms) {
    mean += m * c / 190569292.0;
    second += m * m * c / 190569292.0;
  }
  CHECK(s.exact_mean == doctest::Approx(mean).epsilon(1e-12));
  CHECK(s.exact_variance == doctest::Approx(second - mean * mean).epsilon(1e-9));
  CHECK(s.exact_mode == 50);
  CHECK(s.mode_extrapolated);
  CHECK(asymptotic_variance(2, 5000) == doctest::Approx(15000 / (4 * pi * pi)));
  CHECK(asymptotic_mean(3, 5000) == doctest::Approx(5000.0 / 3 - 2 * std::sqrt(30000.0) / (6 * pi)));
  CHECK(asymptotic_mode(3, 900) == doctest::Approx(300));
}

TEST_CASE("incomplete gamma against quadrature and closed forms") {
  for (double s : {0.5, 1.0, 1.5, 2.0, 3.5, 5.5})
    for (double x : {0.01, 0.3, 1.0, 2.5, 6.0, 15.0}) {
      CAPTURE(s);
      CAPTURE(x);
      CHECK(lower_incomplete_gamma(s, x) == doctest::Approx(oracle::lower_gamma(s, x)).epsilon(1e-7));
    }
  for (double x : {0.0, 0.2, 1.0, 7.0, 40.0}) {
    CHECK(regularized_lower_gamma(1.0, x) == doctest::Approx(1 - std::exp(-x)).epsilon(1e-13));
    CHECK(regularized_lower_gamma(0.5, x) == doctest::Approx(std::erf(std::sqrt(x))).epsilon(1e-13));
  }
  CHECK_THROWS_AS(lower_incomplete_gamma(0, 1), std::domain_error);
  CHECK_THROWS_AS(lower_incomplete_gamma(1, -1), std::domain_error);
}

TEST_CASE("gamma density") {
  const auto g3 = GammaParams::for_t(3);
  CHECK(gamma_pdf(g3, 0.7) == doctest::Approx(std::exp(-0.7)));
  const auto g2 = GammaParams::for_t(2);
  CHECK(gamma_pdf(g2, 0) == HUGE_VAL);
  CHECK_THROWS_AS(gamma_pdf(g2, -0.1), std::domain_error);
  const auto g5 = GammaParams::for_t(5);
  const double mass = oracle::simpson([&](double x) { return gamma_pdf(g5, x); }, 0, 40);
  CHECK(mass == doctest::Approx(1).epsilon(1e-8));
}

TEST_CASE("limit cdf") {
  // t = 3: exponential with unit mean, reflected.
  for (double x : {-3.0, -1.0, 0.0, 0.5, 0.99})
    CHECK(limit_cdf(3, x) == doctest::Approx(std::exp(x - 1)).epsilon(1e-13));
  CHECK(limit_cdf(3, 1.0) == 1);
  CHECK(limit_cdf(3, 4.0) == 1);
  const double b2 = std::sqrt(2.0) / 2;
  for (double x : {-2.0, 0.0, 0.5})
    CHECK(limit_cdf(2, x) == doctest::Approx(std::erfc(std::sqrt((b2 - x) / std::sqrt(2.0)))).epsilon(1e-12));
  for (unsigned t = 2; t <= 8; ++t)
    for (double x : {-1.5, -0.2, 0.4, 1.1}) CHECK(mirrored_limit_cdf(t, x) == doctest::Approx(1 - limit_cdf(t, -x)));
}

TEST_CASE("limit characteristic function") {
  const std::complex<double> i(0, 1);
  CHECK(std::abs(limit_char_fn(3, 1) - std::exp(i) / (1.0 + i)) < 1e-14);
  CHECK(std::abs(limit_char_fn(2, 0) - 1.0) < 1e-15);
  // Second-order expansion: unit variance and mean zero.
  for (unsigned t : {2u, 3u, 7u}) {
    const double r = 1e-3;
    CHECK(limit_char_fn(t, r).real() == doctest::Approx(1 - r * r / 2).epsilon(1e-9));
    CHECK(std::abs(limit_char_fn(t, r).imag()) < 1e-8);
  }
}

TEST_CASE("empirical characteristic function") {
  const auto t = coeff_table(3, 600);
  CHECK(std::abs(char_fn(t, 0) - 1.0) < 1e-14);
  CHECK(std::abs(eval_poly_on_circle(t, 0) - 1.0) < 1e-14);
  // char_fn is the shifted, rescaled polynomial.
  const double mu = asymptotic_mean(3, 600);
  const double sigma = std::sqrt(asymptotic_variance(3, 600));
  const double r = 0.7;
  const auto direct = eval_poly_on_circle(t, r / sigma) * std::polar(1.0, -mu * r / sigma);
  CHECK(std::abs(char_fn(t, r) - direct) < 1e-12);
  CHECK(std::abs(char_fn(t, -r) - std::conj(char_fn(t, r))) < 1e-13);
}

TEST_CASE("continuous approximations") {
  CHECK(h3(1'000'000, 1.0) == doctest::Approx(3 * std::sqrt(3.0) / (2 * pi) * std::exp(-1.0)).epsilon(0.01));
  CHECK(h2(5000, 0.8) == continuous_approximation(2, 5000, 0.8));
  CHECK_THROWS_AS(continuous_approximation(4, 100, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(h2(100, 100.0), std::domain_error);
  CHECK_THROWS_AS(h3(100, 100.0), std::domain_error);
}

TEST_CASE("alpha factor") {
  const auto t = coeff_table(3, 300);
  for (std::size_t m = 0; m <= t.degree(); ++m) {
    const auto pt = grid_point(3, 300, m);
    if (t.coeffs[m] == 0) {
      CHECK_THROWS_AS(alpha_factor(t, pt), std::domain_error);
    } else {
      CHECK(alpha_factor(t, pt) == oracle::divisor_sum_c(300 - 3 * m));
    }
  }
  CHECK_THROWS_AS(alpha_factor(coeff_table(2, 10), grid_point(2, 10, 1)), std::invalid_argument);
}

TEST_CASE("grid samples") {
  const auto samples = grid_samples(coeff_table(3, 120));
  REQUIRE(samples.size() == 41);
  for (const auto& s : samples) {
    if (s.x < 0) CHECK(std::isnan(s.g));
    if (s.f != 0) CHECK(s.alpha == oracle::divisor_sum_c(120 - 3 * s.m));
  }
}

TEST_CASE("report") {
  const double xs[] = {-1, 0, 1};
  const double rs[] = {0.5};
  const auto r = build_report(coeff_table(2, 400), xs, rs);
  CHECK(r.cdf.size() == 3);
  CHECK(r.char_fn.size() == 1);
  CHECK(r.grid.size() == 201);
  for (const auto& c : r.cdf) CHECK(c.gap == doctest::Approx(std::abs(c.cdf - c.limit)));
}

TEST_CASE("saddle point") {
  for (unsigned n : {1u, 50u, 4000u}) {
    CHECK(saddle_asymptotic(2, n, 0).log_magnitude == doctest::Approx(hardy_ramanujan_log(n)).epsilon(1e-14));
    CHECK(saddle_asymptotic(3, n, 0).log_magnitude == doctest::Approx(hardy_ramanujan_log(n)).epsilon(1e-14));
    CHECK(saddle_asymptotic(2, n, 0).phase == 0);
  }
  CHECK(hardy_ramanujan_log(1000) == doctest::Approx(log_bigint(partition_numbers(1000)[1000])).epsilon(2e-3));
  CHECK_THROWS_AS(saddle_asymptotic(4, 100, 0), std::invalid_argument);
  CHECK_THROWS_AS(saddle_asymptotic(2, 100, {0.5, 0}), std::domain_error);
  const auto s = saddle_asymptotic(3, 4000, {0, 1});
  CHECK(s.phase > -pi);
  CHECK(s.phase <= pi);
}

TEST_CASE("property: cdf is a distribution function") {
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 15; ++trial) {
    const unsigned t = std::uniform_int_distribution<unsigned>(2, 6)(rng);
    const unsigned n = std::uniform_int_distribution<unsigned>(t, 800)(rng);
    const auto table = coeff_table(t, n);
    double prev = 0;
    for (std::int64_t k = -1; k <= static_cast<std::int64_t>(table.degree()); ++k) {
      const double f = cdf(table, k);
      CHECK(f >= prev);
      CHECK(f <= 1);
      prev = f;
    }
    CHECK(prev == 1);
    double x_prev = -10, f_prev = 0;
    for (int i = 0; i < 20; ++i) {
      const double x = x_prev + std::uniform_real_distribution<double>(0, 1)(rng);
      const double f = cdf_at_xi(table, x);
      CHECK(f >= f_prev);
      x_prev = x;
      f_prev = f;
    }
  }
}

TEST_CASE("property: limit cdf is nondecreasing and bounded") {
  std::mt19937 rng(77);
  for (unsigned t = 2; t <= 10; ++t) {
    std::vector<double> xs(40);
    for (auto& x : xs) x = std::uniform_real_distribution<double>(-6, 4)(rng);
    std::sort(xs.begin(), xs.end());
    double prev = 0;
    for (double x : xs) {
      const double f = limit_cdf(t, x);
      CHECK(f >= prev - 1e-15);
      CHECK(f <= 1);
      prev = f;
    }
  }
}

TEST_CASE("property: regularized gamma matches quadrature") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const double s = std::uniform_real_distribution<double>(0.3, 6)(rng);
    const double x = std::uniform_real_distribution<double>(0.01, 20)(rng);
    CAPTURE(s);
    CAPTURE(x);
    CHECK(regularized_lower_gamma(s, x) == doctest::Approx(oracle::lower_gamma(s, x) / std::tgamma(s)).epsilon(1e-6));
  }
}
