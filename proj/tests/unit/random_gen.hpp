#pragma once

// Seeded generators for the property tests.

#include <random>
#include <vector>

#include "kolberg/ratfunc.hpp"

namespace testgen {

using Rng = std::mt19937_64;

inline kolberg::BigRational random_rational(Rng& rng, int range = 6, int max_den = 4) {
  std::uniform_int_distribution<long> n(-range, range), d(1, max_den);
  return kolberg::BigRational(kolberg::BigInt(n(rng)), kolberg::BigInt(d(rng)));
}

inline kolberg::PolyY random_poly_y(Rng& rng, int max_deg) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::vector<kolberg::BigRational> c(static_cast<std::size_t>(deg(rng)) + 1);
  for (auto& x : c) x = random_rational(rng);
  return kolberg::PolyY(std::move(c));
}

inline kolberg::RatFuncY random_ratfunc_y(Rng& rng, int max_deg = 2) {
  auto d = random_poly_y(rng, max_deg);
  if (d.is_zero()) d = kolberg::PolyY(kolberg::BigRational(1));
  return kolberg::RatFuncY(random_poly_y(rng, max_deg), d);
}

inline kolberg::PolyT random_poly_t(Rng& rng, int max_deg, int coeff_deg) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::vector<kolberg::RatFuncY> c(static_cast<std::size_t>(deg(rng)) + 1);
  for (auto& x : c) x = random_ratfunc_y(rng, coeff_deg);
  return kolberg::PolyT(std::move(c));
}

inline kolberg::RatFuncT random_ratfunc_t(Rng& rng, int max_deg = 2, int coeff_deg = 1) {
  auto d = random_poly_t(rng, max_deg, coeff_deg);
  if (d.is_zero()) d = kolberg::PolyT(kolberg::RatFuncY(1));
  return kolberg::RatFuncT(random_poly_t(rng, max_deg, coeff_deg), d);
}

}  // namespace testgen
