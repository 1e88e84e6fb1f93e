#pragma once

#include <set>

#include "kolberg/poly.hpp"
#include "kolberg/rational.hpp"

namespace kolberg {

namespace detail {
std::set<BigRational> rational_roots_impl(const std::vector<BigRational>& coeffs);
}

// Every rational root of p, each verified by exact evaluation. Throws InvalidArgument
// on the zero polynomial.
template <char V>
std::set<BigRational> rational_roots(const PolyQ<V>& p) {
  return detail::rational_roots_impl(p.coeffs());
}

}  // namespace kolberg
