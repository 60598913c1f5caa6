#pragma once

// Slow, independent reference implementations used only by the tests.

#include <cmath>
#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "hookdist/series.hpp"

namespace oracle {

using hookdist::BigInt;

// Dense truncated product, one factor (1 - q^k)^{+-1} at a time.
inline std::vector<BigInt> naive_eta(const std::vector<std::pair<unsigned, int>>& factors, std::size_t order) {
  std::vector<BigInt> s(order + 1, 0);
  s[0] = 1;
  for (auto [scale, exponent] : factors) {
    for (std::size_t m = 1; scale * m <= order; ++m) {
      const std::size_t step = scale * m;
      std::vector<BigInt> f(order + 1, 0);
      if (exponent > 0) {
        f[0] = 1;
        f[step] = -1;
      } else {
        for (std::size_t k = 0; k <= order; k += step) f[k] = 1;
      }
      for (int rep = 0; rep < std::abs(exponent); ++rep) {
        std::vector<BigInt> out(order + 1, 0);
        for (std::size_t i = 0; i <= order; ++i)
          for (std::size_t j = 0; i + j <= order; ++j) out[i + j] += s[i] * f[j];
        s = std::move(out);
      }
    }
  }
  return s;
}

// p(0..order) by counting with parts 1..order.
inline std::vector<BigInt> partitions_by_parts(std::size_t order) {
  std::vector<BigInt> p(order + 1, 0);
  p[0] = 1;
  for (std::size_t part = 1; part <= order; ++part)
    for (std::size_t k = part; k <= order; ++k) p[k] += p[k - part];
  return p;
}

// Visits partitions of n as ascending-size-agnostic part lists.
inline void partitions(unsigned n, unsigned max_part, std::vector<unsigned>& acc,
                       const std::function<void(const std::vector<unsigned>&)>& visit) {
  if (n == 0) {
    visit(acc);
    return;
  }
  for (unsigned part = std::min(n, max_part); part >= 1; --part) {
    acc.push_back(part);
    partitions(n - part, part, acc, visit);
    acc.pop_back();
  }
}

// Hook lengths through the conjugate partition.
inline std::vector<unsigned> hooks(const std::vector<unsigned>& parts) {
  std::vector<unsigned> conj(parts.empty() ? 0 : parts.front(), 0);
  for (unsigned p : parts)
    for (unsigned j = 0; j < p; ++j) ++conj[j];
  std::vector<unsigned> out;
  for (unsigned i = 0; i < parts.size(); ++i)
    for (unsigned j = 0; j < parts[i]; ++j) out.push_back((parts[i] - j - 1) + (conj[j] - i - 1) + 1);
  return out;
}

inline unsigned count_divisible(const std::vector<unsigned>& parts, unsigned t) {
  unsigned c = 0;
  for (unsigned h : hooks(parts)) c += h % t == 0;
  return c;
}

// Number of t-cores of n by enumeration.
inline long core_count(unsigned t, unsigned n) {
  if (n == 0) return 1;
  long c = 0;
  std::vector<unsigned> acc;
  partitions(n, n, acc, [&](const std::vector<unsigned>& p) { c += count_divisible(p, t) == 0; });
  return c;
}

inline int legendre3(std::uint64_t d) {
  switch (d % 3) {
    case 1: return 1;
    case 2: return -1;
    default: return 0;
  }
}

inline long divisor_sum_c(std::uint64_t k) {
  const std::uint64_t v = 3 * k + 1;
  long s = 0;
  for (std::uint64_t d = 1; d <= v; ++d)
    if (v % d == 0) s += legendre3(d);
  return s;
}

// Composite Simpson on [a, b] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4 : 2);
  return s * h / 3;
}

// gamma(s, x) by quadrature, substituting u = v^2 (s >= 1) or w = u^s (s < 1).
inline double lower_gamma(double s, double x) {
  if (s >= 1)
    return simpson([s](double v) { return 2 * std::pow(v, 2 * s - 1) * std::exp(-v * v); }, 0, std::sqrt(x), 200000);
  return simpson([s](double w) { return std::exp(-std::pow(w, 1 / s)) / s; }, 0, std::pow(x, s), 200000);
}

inline std::vector<unsigned> random_partition(std::mt19937& rng, unsigned n) {
  std::vector<unsigned> parts;
  unsigned left = n;
  while (left > 0) {
    parts.push_back(std::uniform_int_distribution<unsigned>(1, left)(rng));
    left -= parts.back();
  }
  std::sort(parts.rbegin(), parts.rend());
  return parts;
}

}  // namespace oracle
