#pragma once

// Truncated power series over a field, as coefficient vectors c_0..c_N.

#include <cstddef>
#include <string>
#include <type_traits>
#include <vector>

#include "kolberg/errors.hpp"
#include "kolberg/ratfunc.hpp"

namespace kolberg {

// a * c for a rational scalar c, without a gcd when K is a rational function field.
template <class K>
K scale(const K& a, const BigRational& c) {
  if constexpr (std::is_same_v<K, BigRational>) {
    return a * c;
  } else {
    return a.scaled(c);
  }
}

template <class K>
std::vector<K> series_mul(const std::vector<K>& a, const std::vector<K>& b, std::size_t order) {
  std::vector<K> r(order + 1, K(0));
  for (std::size_t i = 0; i < a.size() && i <= order; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size() && i + j <= order; ++j)
      if (!b[j].is_zero()) r[i + j] = r[i + j] + a[i] * b[j];
  }
  return r;
}

// 1/a to the given order; a_0 must be nonzero.
template <class K>
std::vector<K> series_inverse(const std::vector<K>& a, std::size_t order) {
  if (a.empty() || a[0].is_zero()) throw DomainError("series_inverse: zero constant term");
  const K inv0 = K(1) / a[0];
  std::vector<K> r(order + 1, K(0));
  r[0] = inv0;
  for (std::size_t n = 1; n <= order; ++n) {
    K acc(0);
    for (std::size_t j = 1; j <= n && j < a.size(); ++j)
      if (!a[j].is_zero()) acc = acc + a[j] * r[n - j];
    r[n] = -(acc * inv0);
  }
  return r;
}

// Taylor coefficients at 0 of a rational function without a pole there.
template <class K, char V>
std::vector<K> taylor(const RatFunc<K, V>& f, std::size_t order) {
  if (f.den().coeff(0).is_zero())
    throw DomainError(std::string("pole at ") + V + " = 0: denominator " + f.den().to_string());
  std::vector<K> num = f.num().coeffs();
  if (f.den().is_one()) {
    num.resize(order + 1, K(0));
    return num;
  }
  return series_mul(num, series_inverse(f.den().coeffs(), order), order);
}

}  // namespace kolberg
