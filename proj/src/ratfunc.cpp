#include "kolberg/ratfunc.hpp"

namespace kolberg {

RatFuncQ<'t'> substitute_y(const RatFuncT& f, const BigRational& r) {
  return f.map_coeffs([&](const RatFuncY& c) { return c(r); });
}

}  // namespace kolberg
