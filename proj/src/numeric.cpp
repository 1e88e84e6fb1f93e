#include "kolberg/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "kolberg/errors.hpp"
#include "kolberg/parallel.hpp"
#include "kolberg/roots.hpp"

namespace kolberg {
namespace {

// Bounds are carried at this precision with round-to-nearest and widened once at
// the end by `slack`, which covers a few hundred roundings.
constexpr long bound_prec = 64;

BigFloat slack(const BigFloat& b) { return b * (BigFloat(1, bound_prec) + BigFloat::exp2(-40, bound_prec)); }

BigFloat magnitude(const BigRational& q) { return BigFloat(q.abs(), bound_prec, MPFR_RNDU); }

// Bound on |S - value| for value = S rounded to nearest; zero when exact.
BigFloat rounding_error(const BigRational& S, const BigFloat& value) {
  mpq_class back;
  mpfr_get_q(back.get_mpq_t(), value.get());
  if (BigRational(back) == S) return BigFloat(bound_prec);
  return value.abs().with_precision(bound_prec) * BigFloat::exp2(-value.precision() + 1, bound_prec);
}

void check_precision(long precision) {
  if (precision < BigFloat::min_precision)
    throw InvalidArgument("precision must be at least " + std::to_string(BigFloat::min_precision) + " bits");
}

// Partial sums of 1/k!: lo = sum_{k<=K}, hi = lo + (K+2)/((K+1)! (K+1)).
std::pair<BigRational, BigRational> e_bounds(unsigned long K) {
  BigRational s(0);
  BigRational term(1);
  for (unsigned long k = 0; k <= K; ++k) {
    s += term;
    term = term / BigRational(static_cast<long>(k + 1));
  }
  return {s, s + term * BigRational(BigInt(K + 2), BigInt(K + 1))};
}

const BigRational& e_upper() {
  static const BigRational hi = e_bounds(40).second;
  return hi;
}

// t^r with the sign conventions of PowerMode.
BigFloat real_power(const BigFloat& t, const BigRational& r, PowerMode mode) {
  if (r.is_integer()) {
    if (t.is_zero() && r.sign() < 0) throw DomainError("zero base with negative exponent " + r.to_string());
    return t.pow(r.num().get_si());
  }
  if (t.sign() < 0 && mode == PowerMode::real)
    throw DomainError("negative base with non-integer exponent " + r.to_string());
  if (t.is_zero() && r.sign() < 0) throw DomainError("zero base with negative exponent " + r.to_string());
  return t.pow_abs(r);
}

template <char V>
BigFloat horner(const PolyQ<V>& p, const BigFloat& t) {
  BigFloat acc(t.precision());
  for (int i = p.degree(); i >= 0; --i) acc = acc * t + BigFloat(p.coeff(i), t.precision());
  return acc;
}

struct FValue {
  BigFloat value, derivative;
};

// t^r R(t) and its t-derivative t^r (r R / t + R'), at the precision of t.
FValue eval_F_parts(const RatFuncQ<'t'>& R, const BigRational& r, const BigFloat& t, PowerMode mode) {
  const BigFloat den = horner(R.den(), t);
  if (den.is_zero()) throw DomainError("pole: t is a root of " + R.den().to_string());
  const BigFloat rt = horner(R.num(), t) / den;
  const BigFloat pw = real_power(t, r, mode);
  FValue out{pw * rt, BigFloat(t.precision())};
  const RatFuncQ<'t'> dR = R.derivative();
  const BigFloat drt = horner(dR.num(), t) / horner(dR.den(), t);
  BigFloat inner = drt;
  if (!r.is_zero()) inner = inner + BigFloat(r, t.precision()) * rt / t;
  out.derivative = pw * inner;
  return out;
}

// ---- theorem series ------------------------------------------------------------

// |term_n| <= C n^expo q^n for n >= from, with q = e |x|.
struct Growth {
  BigFloat C{bound_prec};
  long expo = 0;
  long from = 1;
  BigFloat q{bound_prec};
};

long floor_of(const BigRational& q) {
  BigInt f;
  mpz_fdiv_q(f.get_mpz_t(), q.num().get_mpz_t(), q.den().get_mpz_t());
  return f.get_si();
}

Growth growth(const SeriesSpec& s) {
  Growth g;
  g.q = magnitude(s.x) * BigFloat(e_upper(), bound_prec, MPFR_RNDU);
  BigFloat sumP(bound_prec);
  for (const auto& c : s.P.coeffs()) sumP += magnitude(c);
  const long d = s.P.degree();
  const BigRational absr = s.r.abs();
  // For n > 2|r|: |n+r|^n <= n^n e^{|r|} since (1 + |r|/n)^n <= e^{|r|}, and
  // |n+r|^{-a} <= 2^{|a|} n^{-a}. With n^n/n! <= e^n and |P(n)| <= sum|p_i| n^d.
  const BigFloat e_r = BigFloat(absr, bound_prec, MPFR_RNDU).exp();
  const BigFloat two_a = BigFloat::exp2(std::labs(s.a), bound_prec);
  switch (s.family) {
    case Family::kolberg:
      g.C = e_r * two_a * sumP;
      g.expo = d - s.a;
      g.from = std::max(1L, floor_of(absr * BigRational(2)) + 1);
      break;
    case Family::sharp:
      // |r^2 + 2nr + 2n^2 - n| <= (r^2 + 2|r| + 3) n^2 for n >= 1.
      g.C = e_r * two_a * sumP * magnitude(s.r * s.r + absr * BigRational(2) + BigRational(3));
      g.expo = d + 2 - s.a;
      g.from = std::max(1L, floor_of(absr * BigRational(2)) + 1);
      break;
    case Family::example0:
      // (n-1) n^{n+a} |P(1/n)| <= sum|p_i| n^{1+a} n^n.
      g.C = sumP;
      g.expo = 1 + s.a;
      g.from = 2;
      break;
    case Family::custom:
      g.C = magnitude(s.custom.growth_c);
      g.expo = s.custom.growth_exponent;
      g.from = 1;
      break;
  }
  return g;
}

BigFloat growth_term(const Growth& g, long n) {
  return g.C * BigFloat(n, bound_prec).pow(g.expo) * g.q.pow(n);
}

// Past this index (1 + 1/n)^expo q < 1, so the bounds decrease geometrically.
long ratio_threshold(const Growth& g) {
  if (g.expo <= 0) return g.from;
  const double lq = -std::log(g.q.to_double());
  return std::max(g.from, static_cast<long>(std::floor(static_cast<double>(g.expo) / lq)) + 1);
}

BigFloat tail_with(const SeriesSpec& s, const Growth& g, long N) {
  BigFloat acc(bound_prec);
  long n = std::max(N + 1, series_start(s));
  for (; n < g.from; ++n) acc += magnitude(series_term(s, n));
  const long m_star = ratio_threshold(g);
  if (m_star - n > 2000000) throw NumericError("tail bound: geometric regime starts too late (|x| too close to 1/e)");
  for (; n < m_star; ++n) acc += growth_term(g, n);
  BigFloat ratio = g.q;
  const BigFloat one(1, bound_prec);
  if (g.expo > 0) {
    for (;; ++n) {
      ratio = (one + one / BigFloat(n, bound_prec)).pow(g.expo) * g.q;
      if (ratio < one) break;
      acc += growth_term(g, n);
    }
  }
  acc += growth_term(g, n) / (one - ratio);
  return slack(acc);
}

// ---- H series ------------------------------------------------------------------

// den = prod (t - a_j)^{m_j} * rest with the a_j rational.
struct DenSplit {
  std::vector<std::pair<BigRational, int>> roots;
  PolyQ<'t'> rest;
};

DenSplit split_den(const PolyQ<'t'>& den) {
  DenSplit out{{}, den};
  if (den.is_constant()) return out;
  for (const auto& a : rational_roots(den)) {
    int m = 0;
    const PolyQ<'t'> lin(std::vector<BigRational>{-a, 1});
    while (out.rest.degree() > 0 && out.rest(a).is_zero()) {
      out.rest = out.rest.exact_div(lin);
      ++m;
    }
    out.roots.emplace_back(a, m);
  }
  return out;
}

// Upper bound on T(rho), the principal solution of t e^{-t} = rho; nullopt if >= 1.
std::optional<double> tree_upper(double rho) {
  double t = rho;
  for (int i = 0; i < 200; ++i) {
    const double f = t * std::exp(-t) - rho;
    const double fp = (1 - t) * std::exp(-t);
    if (fp <= 0) break;
    const double nt = t - f / fp;
    if (std::abs(nt - t) <= 1e-17) {
      t = nt;
      break;
    }
    t = nt;
  }
  double step = 1e-12;
  while (t * std::exp(-t) - rho <= 1e-15) {
    t += step;
    step *= 2;
    if (t >= 1) return std::nullopt;
  }
  if (t >= 1) return std::nullopt;
  return t;
}

// M(rho) >= max_{|x| = rho} |H(x)| via |T(x)| <= T(|x|) =: tau and
// |H| <= e^{|r| tau} max_{|t| <= tau} |R(t)|.
std::optional<BigFloat> circle_max(const RatFuncQ<'t'>& R, const DenSplit& split, const BigRational& r, double rho) {
  const auto tau_d = tree_upper(rho);
  if (!tau_d) return std::nullopt;
  const BigFloat tau = BigFloat::from_double(*tau_d, bound_prec);
  BigFloat numer(bound_prec);
  for (int i = R.num().degree(); i >= 0; --i) numer = numer * tau + magnitude(R.num().coeff(i));
  BigFloat lower(1, bound_prec);
  for (const auto& [a, m] : split.roots) {
    const BigFloat gap = magnitude(a) - tau;
    if (gap.sign() <= 0) return std::nullopt;
    lower = lower * gap.pow(m);
  }
  BigFloat rest = magnitude(split.rest.coeff(0));
  BigFloat tp(1, bound_prec);
  for (int i = 1; i <= split.rest.degree(); ++i) {
    tp = tp * tau;
    rest = rest - magnitude(split.rest.coeff(i)) * tp;
  }
  if (rest.sign() <= 0) return std::nullopt;
  lower = lower * rest;
  return (BigFloat(r.abs(), bound_prec, MPFR_RNDU) * tau).exp() * numer / lower;
}

struct Circle {
  BigFloat M{bound_prec};
  BigFloat q{bound_prec};  // |x| / rho
};

std::vector<Circle> circles(const RatFuncQ<'t'>& R, const BigRational& r, const BigRational& x) {
  const DenSplit split = split_den(R.den());
  const double ax = x.abs().to_double();
  const double inv_e = 0.36787944117144;  // slightly below 1/e
  std::vector<Circle> out;
  for (int i = 1; i <= 19; ++i) {
    const double rho = ax + (inv_e - ax) * (0.05 * i);
    if (!(rho > ax)) continue;
    auto M = circle_max(R, split, r, rho);
    if (!M) continue;
    Circle c;
    c.M = *M;
    c.q = magnitude(x) / BigFloat::from_double(rho, bound_prec);
    // rho was rounded to a double: only circles with a clear margin are kept.
    if (c.q.to_double() >= 1 - 1e-9) continue;
    out.push_back(std::move(c));
  }
  if (out.empty()) throw NumericError("no admissible circle for the H tail bound (a pole of R is too close)");
  return out;
}

BigFloat circle_tail(const Circle& c, long N) {
  const BigFloat one(1, bound_prec);
  return slack(c.M * c.q.pow(N + 1) / (one - c.q));
}

void check_x(const BigRational& x, bool allow_zero) {
  if (x.is_zero()) {
    if (allow_zero) return;
    throw DomainError("x must be nonzero");
  }
  if (!below_inverse_e(x.abs())) throw DomainError("x = " + x.to_string() + " is outside |x| < 1/e");
}

}  // namespace

bool below_inverse_e(const BigRational& a) {
  const BigRational m = a.abs();
  for (unsigned long K = 16; K <= 4096; K *= 2) {
    auto [lo, hi] = e_bounds(K);
    if (m * hi < BigRational(1)) return true;
    if (!(m * lo < BigRational(1))) return false;
  }
  throw NumericError("cannot decide |x| < 1/e: x is too close to 1/e");
}

Inversion invert_xt_checked(const BigRational& x, long precision) {
  check_precision(precision);
  Inversion out{BigFloat(precision), BigFloat(precision), 0};
  if (x.is_zero()) return out;
  check_x(x, false);
  const long wp = precision + 32;

  // Newton from t0 = x. f(t) = t e^{-t} - x is increasing and concave on (-1, 1),
  // so the iterates approach the root monotonically from the left.
  const double xd = x.to_double();
  double td = xd;
  for (int i = 0; i < 400; ++i) {
    const double e = std::exp(-td);
    const double fp = (1 - td) * e;
    if (fp <= 0) break;
    const double nt = td - (td * e - xd) / fp;
    if (!std::isfinite(nt) || nt >= 1 || nt <= -1) break;
    if (nt == td) break;
    td = nt;
  }
  BigFloat t = BigFloat::from_double(td, wp);
  const BigFloat xf(x, wp);
  const BigFloat one(1, wp);
  const BigFloat target = BigFloat::exp2(-(wp - 4), wp);
  BigFloat residual(wp);
  int it = 0;
  for (; it < 10000; ++it) {
    const BigFloat e = (-t).exp();
    const BigFloat f = t * e - xf;
    residual = f.abs();
    if (residual <= target) break;
    const BigFloat fp = (one - t) * e;
    if (fp.sign() <= 0) throw NumericError("invert_xt: Newton left the principal branch");
    t = t - f / fp;
  }
  residual = (t * (-t).exp() - xf).abs();
  if (!(residual < BigFloat::exp2(-precision + 8, wp)))
    throw NumericError("invert_xt: Newton did not converge for x = " + x.to_string());
  out.t = t;
  out.residual = residual;
  out.iterations = it;
  return out;
}

BigFloat invert_xt(const BigRational& x, long precision) {
  return invert_xt_checked(x, precision).t.with_precision(precision);
}

BigFloat eval_F_closed(const RatFuncT& R, const BigRational& r, const BigFloat& t, long precision, PowerMode mode) {
  check_precision(precision);
  const RatFuncQ<'t'> Rr = substitute_y(R, r);
  const BigFloat tt = t.with_precision(precision + 32);
  const BigFloat den = horner(Rr.den(), tt);
  if (den.is_zero()) throw DomainError("pole: t is a root of " + Rr.den().to_string());
  const BigFloat v = real_power(tt, r, mode) * horner(Rr.num(), tt) / den;
  return v.with_precision(precision);
}

void validate(const SeriesSpec& s) {
  if (s.family == Family::custom) {
    if (!s.custom.u) throw InvalidArgument("custom family without a coefficient supplier");
    if (s.custom.growth_c.sign() < 0) throw InvalidArgument("custom growth constant must be >= 0");
  } else if (s.P.is_zero()) {
    throw InvalidArgument("P must be a nonzero polynomial");
  }
  check_x(s.x, false);
  if ((s.family == Family::kolberg || s.family == Family::sharp) && s.r.is_integer()) {
    const long n = -s.r.num().get_si();
    if (n >= series_start(s) && n < s.a)
      throw DomainError("r = " + s.r.to_string() + " makes n + r vanish at n = " + std::to_string(n) +
                        " with negative exponent n - a");
  }
}

long series_start(const SeriesSpec& s) {
  switch (s.family) {
    case Family::kolberg:
      return 1;
    case Family::example0:
      return 2;
    default:
      return 0;
  }
}

BigRational series_term(const SeriesSpec& s, long n) {
  const BigRational nn(n);
  const BigRational scale = s.x.pow(n) / BigRational(factorial(static_cast<unsigned long>(n)));
  switch (s.family) {
    case Family::kolberg:
      return (nn + s.r).pow(n - s.a) * s.P(nn) * scale;
    case Family::sharp: {
      const BigRational quad = s.r * s.r + BigRational(2) * nn * s.r + BigRational(2) * nn * nn - nn;
      return quad * (nn + s.r).pow(n - s.a) * s.P(nn) * scale;
    }
    case Family::example0:
      return BigRational(n - 1) * nn.pow(n + s.a) * s.P(nn.inverse()) * scale;
    case Family::custom:
      return s.custom.u(n) * scale;
  }
  return BigRational(0);
}

BigRational partial_sum(const SeriesSpec& s, long N) {
  validate(s);
  const long start = series_start(s);
  if (N < start) return BigRational(0);
  std::vector<BigRational> terms(static_cast<std::size_t>(N - start + 1));
  parallel_for(terms.size(), [&](std::size_t i) { terms[i] = series_term(s, start + static_cast<long>(i)); });
  BigRational sum(0);
  for (const auto& t : terms) sum += t;
  return sum;
}

BigFloat tail_bound(const SeriesSpec& s, long N) {
  validate(s);
  return tail_with(s, growth(s), N);
}

EvalResult eval_theorem_series(const SeriesSpec& s, long precision, const BigFloat& target_tol) {
  check_precision(precision);
  if (target_tol.sign() <= 0) throw InvalidArgument("tolerance must be positive");
  validate(s);
  const Growth g = growth(s);
  const BigFloat half = target_tol.with_precision(bound_prec) / BigFloat(2, bound_prec);
  long N = series_start(s);
  // Cheap forward jump: below the geometric regime the bound is not informative.
  N = std::max(N, std::min(ratio_threshold(g), 100000L) - 1);
  BigFloat tail = tail_with(s, g, N);
  // Exponential then binary search for the first N with tail < half.
  long lo = N - 1, hi = N;
  while (!(tail < half)) {
    lo = hi;
    hi = hi + std::max(8L, hi - series_start(s));
    if (hi > 200000) throw NumericError("tolerance needs more than 200000 terms");
    tail = tail_with(s, g, hi);
  }
  while (hi - lo > 1) {
    const long mid = lo + (hi - lo) / 2;
    BigFloat tm = tail_with(s, g, mid);
    if (tm < half) {
      hi = mid;
      tail = tm;
    } else {
      lo = mid;
    }
  }
  N = hi;
  tail = tail_with(s, g, N);

  const BigRational S = partial_sum(s, N);
  const long wp = precision + 32;
  EvalResult out{BigFloat(S, wp), BigFloat(bound_prec), N - series_start(s) + 1, precision};
  if (out.value.abs().with_precision(bound_prec) * BigFloat::exp2(-precision, bound_prec) >= half)
    throw NumericError("target tolerance unreachable at " + std::to_string(precision) + " bits");
  out.error_bound = slack(tail + rounding_error(S, out.value));
  return out;
}

EvalResult eval_H_series(const AdHocFunction& F, const BigRational& r, const BigRational& x, long N, long precision,
                         const std::optional<CoeffPerturbation>& perturb) {
  check_precision(precision);
  if (N < 0) throw InvalidArgument("N must be >= 0");
  check_x(x, true);
  const RatFuncQ<'t'> Rr = substitute_y(F.rational_part(), r);
  auto u = h_coeffs_at(F, r, static_cast<std::size_t>(N)).values;
  if (perturb && perturb->index < u.size()) u[perturb->index] += perturb->delta;

  std::vector<BigRational> terms(u.size());
  parallel_for(terms.size(), [&](std::size_t n) {
    terms[n] = u[n] * x.pow(static_cast<long>(n)) / BigRational(factorial(n));
  });
  BigRational S(0);
  for (const auto& t : terms) S += t;

  const long wp = precision + 32;
  EvalResult out{BigFloat(S, wp), BigFloat(bound_prec), N + 1, precision};
  BigFloat tail(bound_prec);
  if (!x.is_zero()) {
    auto cs = circles(Rr, r, x);
    tail = circle_tail(cs.front(), N);
    for (const auto& c : cs) {
      BigFloat b = circle_tail(c, N);
      if (b < tail) tail = b;
    }
  }
  out.error_bound = slack(tail + rounding_error(S, out.value));
  return out;
}

long h_series_terms(const AdHocFunction& F, const BigRational& r, const BigRational& x, const BigFloat& tol) {
  if (tol.sign() <= 0) throw InvalidArgument("tolerance must be positive");
  check_x(x, false);
  const RatFuncQ<'t'> Rr = substitute_y(F.rational_part(), r);
  const double ltol = tol.with_precision(bound_prec).log().to_double();
  long best = std::numeric_limits<long>::max();
  for (const auto& c : circles(Rr, r, x)) {
    // M q^{N+1} / (1 - q) < tol
    const double lq = c.q.log().to_double();
    const double lhead = c.M.log().to_double() - std::log1p(-c.q.to_double());
    long N = std::max(0L, static_cast<long>(std::ceil((ltol - lhead) / lq)));
    while (!(circle_tail(c, N) < tol)) ++N;
    best = std::min(best, N);
  }
  if (best > 20000) throw NumericError("H series needs more than 20000 terms at this tolerance");
  return best;
}

IdentityCheck check_identity(const AdHocFunction& F, const BigRational& r, const BigRational& x, const BigFloat& tol,
                             long precision, const std::optional<CoeffPerturbation>& perturb) {
  check_precision(precision);
  if (tol.sign() <= 0) throw InvalidArgument("tolerance must be positive");
  check_x(x, false);
  const long wp = precision + 32;
  IdentityCheck out;
  out.modulus_convention = x.sign() < 0 && !r.is_integer();
  const PowerMode mode = out.modulus_convention ? PowerMode::modulus : PowerMode::real;

  const BigFloat quarter = tol.with_precision(bound_prec) / BigFloat(4, bound_prec);
  const long N = h_series_terms(F, r, x, quarter);
  const EvalResult H = eval_H_series(F, r, x, N, wp, perturb);
  const BigFloat xr = real_power(BigFloat(x, wp), r, mode);
  out.K = xr * H.value;
  const BigFloat errK = xr.abs().with_precision(bound_prec) * H.error_bound +
                        out.K.abs().with_precision(bound_prec) * BigFloat::exp2(-wp + 4, bound_prec);

  const Inversion inv = invert_xt_checked(x, wp);
  const RatFuncQ<'t'> Rr = substitute_y(F.rational_part(), r);
  const FValue fv = eval_F_parts(Rr, r, inv.t, mode);
  out.F = fv.value;
  // |dt| <= 2 (residual + rounding) / |(1 - t) e^{-t}| near the root.
  const BigFloat t64 = inv.t.with_precision(bound_prec);
  const BigFloat slope = ((BigFloat(1, bound_prec) - t64) * (-t64).exp()).abs();
  const BigFloat dt = BigFloat(2, bound_prec) *
                      (inv.residual.with_precision(bound_prec) + BigFloat::exp2(-wp + 4, bound_prec)) / slope;
  const BigFloat errF = BigFloat(2, bound_prec) * fv.derivative.abs().with_precision(bound_prec) * dt +
                        out.F.abs().with_precision(bound_prec) * BigFloat::exp2(-wp + 8, bound_prec);

  out.residual = (out.K - out.F).abs();
  out.allowance = slack(tol.with_precision(bound_prec) + errK + errF);
  out.pass = out.residual.with_precision(bound_prec) <= out.allowance;
  out.terms_used = N + 1;
  return out;
}

}  // namespace kolberg
