#pragma once

// Fertile quatuors: Z-indexed families F_k(t,y) = t^y R_k(t,y) linked by
//   d/dt F_{k+1} = (1-t)/t F_k,
// stored through their rational parts R_k on a finite contiguous range of levels.
// The companion families are views: G_k = R_k e^{yt}, H_k(t e^{-t}) = G_k, K_k = x^y H_k.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "kolberg/assoc.hpp"
#include "kolberg/ratfunc.hpp"
#include "kolberg/rational.hpp"

namespace kolberg {

// F(t,y) = t^y R(t,y) with R a nonzero element of Q(y)(t).
class AdHocFunction {
 public:
  explicit AdHocFunction(RatFuncT r);

  const RatFuncT& rational_part() const noexcept { return r_; }
  std::string to_string() const { return "t^y*(" + r_.to_string() + ")"; }

  friend bool operator==(const AdHocFunction& a, const AdHocFunction& b) { return a.r_ == b.r_; }

 private:
  RatFuncT r_;
};

// step_up could not stay inside the ad hoc class.
struct Infertile {
  RatFuncT rhs;  // (1-t) R_k, the right-hand side that admits no rational antiderivative
  std::string reason;
};

using StepUpResult = std::variant<AdHocFunction, Infertile>;

// R_k = (y R_{k+1} + t dR_{k+1}/dt) / (1 - t).
AdHocFunction step_down(const AdHocFunction& upper);

// Solves y S + t dS/dt = (1-t) R_k for S in Q(y)(t). The solution is unique when it
// exists; the result is re-checked with step_down before it is returned.
StepUpResult step_up(const AdHocFunction& lower);

struct FertilityReport {
  int requested_min = 0, requested_max = 0;
  int achieved_min = 0, achieved_max = 0;
  std::optional<int> failure_level;
  std::optional<RatFuncT> failure_witness;

  bool fertile() const { return !failure_level.has_value(); }
};

class Quatuor {
 public:
  // Verifies the level relation between every pair of neighbours; throws
  // VerificationError when it fails and InvalidArgument on an empty range.
  Quatuor(int k_min, int generator_level, std::vector<AdHocFunction> levels);

  int k_min() const noexcept { return k_min_; }
  int k_max() const noexcept { return k_min_ + static_cast<int>(levels_.size()) - 1; }
  int generator_level() const noexcept { return generator_level_; }
  bool contains(int k) const noexcept { return k >= k_min() && k <= k_max(); }
  const AdHocFunction& level(int k) const;
  const std::vector<AdHocFunction>& levels() const noexcept { return levels_; }

  friend bool operator==(const Quatuor& a, const Quatuor& b) {
    return a.k_min_ == b.k_min_ && a.generator_level_ == b.generator_level_ && a.levels_ == b.levels_;
  }

 private:
  int k_min_;
  int generator_level_;
  std::vector<AdHocFunction> levels_;
};

// Builds levels [k_min, k_max] from a generator: downward steps always succeed,
// upward steps stop at the first infertile level.
std::pair<Quatuor, FertilityReport> generate_range(const RatFuncT& generator, int generator_level, int k_min,
                                                   int k_max);

// Level k of the result is level k + d of q.
Quatuor shift(const Quatuor& q, int d);

// Levelwise sum of lambda_i q_i on the intersection of the ranges.
Quatuor linear_combine(const std::vector<std::pair<BigRational, Quatuor>>& terms);

// v_n = n! [t^n] R(t,y) e^{yt}; throws DomainError if R has a pole at t = 0.
CoeffSeq<RatFuncY> g_coeffs(const AdHocFunction& f, std::size_t order);
// u_n with H(t e^{-t}) = G(t).
CoeffSeq<RatFuncY> h_coeffs(const AdHocFunction& f, std::size_t order);

// The same sequences already specialized at y = r, computed exactly over Q.
CoeffSeq<BigRational> g_coeffs_at(const AdHocFunction& f, const BigRational& r, std::size_t order);
CoeffSeq<BigRational> h_coeffs_at(const AdHocFunction& f, const BigRational& r, std::size_t order);

// (y+n)^(n-k): H-coefficients of level k of the Kolberg quatuor.
RatFuncY kolberg_h_closed(int k, int n);
// (y+2)(y^2 + 2ny + 2n^2 - n)(y+n)^(n-3): H-coefficients of level 0 of the sharp quatuor.
RatFuncY sharp_un_closed(int n);

// Level-0 generator 1 + 2/y + t^2 of the sharp quatuor.
RatFuncT sharp_generator();
// Level-1 generator 1/y of the Kolberg quatuor (F_1 = t^y / y).
RatFuncT kolberg_generator();
inline constexpr int kolberg_generator_level = 1;

struct PoleSet {
  std::set<BigRational> rational_poles;
  std::vector<PolyY> denominators;  // monic, deduplicated, in order of discovery
};

// Every y-denominator of every coefficient of R_k for k in `levels`, with rational roots.
PoleSet pole_set(const Quatuor& q, const std::vector<int>& levels);

// {-m} if g = c s^m, otherwise empty. Throws InvalidArgument on g = 0.
std::set<long> exceptional_set(const RatFuncQ<'s'>& g);

struct KolbergizeResult {
  RatFuncQ<'t'> g;                // sum_k A_k R_k(t, r)
  BigRational exponent;           // r, so that the combination equals t^r g(t)
  std::set<long> exceptional;     // exceptional set of g
  bool criterion_applies = true;  // r lies outside the exceptional set
};

// Specializes sum_k A_k F_k(t, y) at y = r. Throws DomainError when r is a pole of
// some coefficient of a level in the support of A, InvalidArgument on a zero
// combination or a level outside the quatuor.
KolbergizeResult kolbergize(const Quatuor& q, const std::map<int, BigRational>& weights, const BigRational& r);

}  // namespace kolberg
