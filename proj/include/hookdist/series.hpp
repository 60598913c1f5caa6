#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace hookdist {

using BigInt = mpz_class;

// Power series in q truncated after q^order. Coefficients are exact
// integers; there are always order() + 1 of them.
class IntSeries {
 public:
  IntSeries() : coeffs_(1) {}
  explicit IntSeries(std::size_t order) : coeffs_(order + 1) {}
  explicit IntSeries(std::vector<BigInt> coeffs);
  IntSeries(std::initializer_list<long> coeffs);

  static IntSeries one(std::size_t order);

  std::size_t order() const noexcept { return coeffs_.size() - 1; }

  const BigInt& operator[](std::size_t k) const { return coeffs_[k]; }
  BigInt& operator[](std::size_t k) { return coeffs_[k]; }

  // Coefficient of q^k, or zero past the truncation order.
  BigInt at(std::size_t k) const { return k <= order() ? coeffs_[k] : BigInt(0); }

  std::span<const BigInt> coeffs() const noexcept { return coeffs_; }

  // Drops or zero-pads coefficients so that the result has the given order.
  IntSeries truncated(std::size_t order) const;

  IntSeries& operator+=(const IntSeries& rhs);
  IntSeries& operator-=(const IntSeries& rhs);

  friend bool operator==(const IntSeries& a, const IntSeries& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::vector<BigInt> coeffs_;
};

// Sum and difference keep the smaller of the two orders.
IntSeries operator+(const IntSeries& a, const IntSeries& b);
IntSeries operator-(const IntSeries& a, const IntSeries& b);

// Cauchy product truncated at `order`; coefficients past either input's
// order are taken as zero. Zero coefficients of `a` are skipped, so a sparse
// left operand costs O(nnz(a) * order).
IntSeries series_mul(const IntSeries& a, const IntSeries& b, std::size_t order);

// The eta-type factor prod_{m >= 1} (1 - q^{scale*m})^exponent.
struct EtaFactor {
  unsigned scale = 1;
  int exponent = 0;
};

// Exact expansion of a product of eta-type factors to the given order.
//
// Factors are applied one at a time, truncating after each multiply.
// Positive exponents multiply by the sparse pentagonal expansion of the
// factor; negative exponents are applied as repeated in-place geometric
// series 1/(1 - q^j). A factor whose
// scale exceeds the order contributes only its constant term and is skipped.
// Throws std::invalid_argument on a zero scale.
IntSeries eta_quotient_expand(std::span<const EtaFactor> factors, std::size_t order);
IntSeries eta_quotient_expand(std::initializer_list<EtaFactor> factors, std::size_t order);

// prod_{m >= 1} (1 - q^m) from Euler's pentagonal number theorem.
IntSeries euler_function(std::size_t order);

// p(0..order) via the pentagonal-number recurrence.
IntSeries partition_numbers(std::size_t order);

// Multiplies `s` in place by (1 - q^step)^{-1}, i.e. s[k] += s[k - step].
void apply_geometric_inverse(IntSeries& s, std::size_t step);

}  // namespace hookdist
