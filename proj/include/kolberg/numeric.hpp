#pragma once

// High-precision evaluation on the real slice 0 <= |x| < 1/e of the change of
// variable x = t e^{-t}: tree-function inversion, the three theorem series with
// rigorous tail bounds, and the identity certificate K_k(x, r) = F_k(t, r).

#include <functional>
#include <optional>

#include "kolberg/bigfloat.hpp"
#include "kolberg/poly.hpp"
#include "kolberg/quatuor.hpp"
#include "kolberg/rational.hpp"

namespace kolberg {

struct EvalResult {
  BigFloat value;
  BigFloat error_bound;  // >= |true value - value|
  long terms_used = 0;
  long precision_bits = 0;
};

// Certified test of a < 1/e for rational a >= 0, using exact bounds on e.
bool below_inverse_e(const BigRational& a);

struct Inversion {
  BigFloat t;
  BigFloat residual;  // |t e^{-t} - x| evaluated at the working precision
  int iterations = 0;
};

// Principal real solution of t e^{-t} = x: t in (0,1) for x > 0, and for x < 0 the
// unique negative root, which lies in (-0.2785, 0). DomainError when |x| >= 1/e,
// NumericError if Newton does not converge.
Inversion invert_xt_checked(const BigRational& x, long precision);
BigFloat invert_xt(const BigRational& x, long precision);

// How t^r and x^r are read for a negative base and non-integer r. `real` rejects
// the case; `modulus` uses |t|^r, which strips the common phase e^{i pi r}.
enum class PowerMode { real, modulus };

// t^r R(t, r).
BigFloat eval_F_closed(const RatFuncT& R, const BigRational& r, const BigFloat& t, long precision,
                       PowerMode mode = PowerMode::real);

enum class Family { kolberg, sharp, example0, custom };

// u_n for the custom family, with a growth certificate |u_n| <= c n^e n^n for n >= 1.
struct CustomH {
  std::function<BigRational(long)> u;
  BigRational growth_c{1};
  long growth_exponent = 0;
};

struct SeriesSpec {
  Family family = Family::kolberg;
  long a = 1;
  BigRational r;
  PolyQ<'n'> P{1};
  BigRational x;
  CustomH custom;
};

// Checks 0 < |x| < 1/e, P != 0 and that no term has a zero base with a negative
// exponent. Throws DomainError / InvalidArgument.
void validate(const SeriesSpec& spec);
long series_start(const SeriesSpec& spec);
BigRational series_term(const SeriesSpec& spec, long n);
// Exact sum of the terms with series_start <= n <= N.
BigRational partial_sum(const SeriesSpec& spec, long N);
// Upper bound on sum_{n > N} |term_n|.
BigFloat tail_bound(const SeriesSpec& spec, long N);

EvalResult eval_theorem_series(const SeriesSpec& spec, long precision, const BigFloat& target_tol);

// Fault injection: u_index += delta before summation.
struct CoeffPerturbation {
  std::size_t index = 0;
  BigRational delta;
};

// sum_{n <= N} u_n(r) x^n / n! for the H-series of F at y = r, with a Cauchy tail
// bound on a circle strictly inside |x| < 1/e.
EvalResult eval_H_series(const AdHocFunction& F, const BigRational& r, const BigRational& x, long N, long precision,
                         const std::optional<CoeffPerturbation>& perturb = std::nullopt);

// Smallest N (over a grid of circles) whose H tail bound is below tol.
long h_series_terms(const AdHocFunction& F, const BigRational& r, const BigRational& x, const BigFloat& tol);

struct IdentityCheck {
  bool pass = false;
  BigFloat K, F;
  BigFloat residual;   // |K - F|
  BigFloat allowance;  // tol plus both error bounds
  long terms_used = 0;
  bool modulus_convention = false;
};

// K = x^r H(x) against F = t^r R(t, r) at t = invert_xt(x).
IdentityCheck check_identity(const AdHocFunction& F, const BigRational& r, const BigRational& x, const BigFloat& tol,
                             long precision, const std::optional<CoeffPerturbation>& perturb = std::nullopt);

}  // namespace kolberg
