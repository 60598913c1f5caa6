#include "hookdist/series.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace hookdist {

IntSeries::IntSeries(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::invalid_argument("IntSeries needs at least one coefficient");
}

IntSeries::IntSeries(std::initializer_list<long> coeffs) {
  if (coeffs.size() == 0) throw std::invalid_argument("IntSeries needs at least one coefficient");
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
}

IntSeries IntSeries::one(std::size_t order) {
  IntSeries s(order);
  s[0] = 1;
  return s;
}

IntSeries IntSeries::truncated(std::size_t order) const {
  IntSeries out(order);
  const std::size_t n = std::min(order, this->order());
  for (std::size_t k = 0; k <= n; ++k) out[k] = coeffs_[k];
  return out;
}

IntSeries& IntSeries::operator+=(const IntSeries& rhs) {
  if (rhs.order() < order()) coeffs_.resize(rhs.order() + 1);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += rhs[k];
  return *this;
}

IntSeries& IntSeries::operator-=(const IntSeries& rhs) {
  if (rhs.order() < order()) coeffs_.resize(rhs.order() + 1);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= rhs[k];
  return *this;
}

IntSeries operator+(const IntSeries& a, const IntSeries& b) {
  IntSeries out = a;
  out += b;
  return out;
}

IntSeries operator-(const IntSeries& a, const IntSeries& b) {
  IntSeries out = a;
  out -= b;
  return out;
}

IntSeries series_mul(const IntSeries& a, const IntSeries& b, std::size_t order) {
  IntSeries out(order);
  const std::size_t a_top = std::min(order, a.order());
  for (std::size_t i = 0; i <= a_top; ++i) {
    const BigInt& ai = a[i];
    if (sgn(ai) == 0) continue;
    const std::size_t b_top = std::min(order - i, b.order());
    for (std::size_t j = 0; j <= b_top; ++j) {
      mpz_addmul(out[i + j].get_mpz_t(), ai.get_mpz_t(), b[j].get_mpz_t());
    }
  }
  return out;
}

void apply_geometric_inverse(IntSeries& s, std::size_t step) {
  for (std::size_t k = step; k <= s.order(); ++k) s[k] += s[k - step];
}

namespace {

// Generalized pentagonal numbers g = k(3k-1)/2 for k = 1, -1, 2, -2, ...
// paired with the sign (-1)^k, visited while g <= limit.
template <typename Visit>
void for_each_pentagonal(std::size_t limit, Visit&& visit) {
  for (std::size_t k = 1;; ++k) {
    const std::size_t g1 = k * (3 * k - 1) / 2;
    if (g1 > limit) break;
    const int sign = (k % 2 == 1) ? -1 : 1;
    visit(g1, sign);
    const std::size_t g2 = k * (3 * k + 1) / 2;
    if (g2 <= limit) visit(g2, sign);
  }
}

// prod_m (1 - q^{scale*m}) to `order`.
IntSeries scaled_euler_function(unsigned scale, std::size_t order) {
  IntSeries s(order);
  s[0] = 1;
  for_each_pentagonal(order / scale, [&](std::size_t g, int sign) { s[g * scale] = sign; });
  return s;
}

}  // namespace

IntSeries euler_function(std::size_t order) { return scaled_euler_function(1, order); }

IntSeries partition_numbers(std::size_t order) {
  IntSeries p(order);
  p[0] = 1;
  for (std::size_t n = 1; n <= order; ++n) {
    BigInt acc = 0;
    // p(n) = sum_k -(-1)^k p(n - g_k)
    for_each_pentagonal(n, [&](std::size_t g, int sign) {
      if (sign < 0)
        acc += p[n - g];
      else
        acc -= p[n - g];
    });
    p[n] = std::move(acc);
  }
  return p;
}

IntSeries eta_quotient_expand(std::span<const EtaFactor> factors, std::size_t order) {
  for (const auto& f : factors) {
    if (f.scale == 0) throw std::invalid_argument("eta factor scale must be positive");
  }
  IntSeries result = IntSeries::one(order);
  for (const auto& f : factors) {
    if (f.exponent <= 0 || f.scale > order) continue;
    const IntSeries eta = scaled_euler_function(f.scale, order);
    for (int e = 0; e < f.exponent; ++e) result = series_mul(eta, result, order);
  }
  for (const auto& f : factors) {
    if (f.exponent >= 0 || f.scale > order) continue;
    for (int e = 0; e < -f.exponent; ++e) {
      for (std::size_t step = f.scale; step <= order; step += f.scale) {
        apply_geometric_inverse(result, step);
      }
    }
  }
  return result;
}

IntSeries eta_quotient_expand(std::initializer_list<EtaFactor> factors, std::size_t order) {
  return eta_quotient_expand(std::span<const EtaFactor>(factors.begin(), factors.size()), order);
}

}  // namespace hookdist
