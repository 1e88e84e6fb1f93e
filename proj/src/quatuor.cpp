#include "kolberg/quatuor.hpp"

#include <algorithm>

#include "kolberg/errors.hpp"
#include "kolberg/roots.hpp"
#include "kolberg/series.hpp"

namespace kolberg {
namespace {

const RatFuncT& one_minus_t() {
  static const RatFuncT v = RatFuncT(1) - RatFuncT::var();
  return v;
}

RatFuncT step_down_raw(const RatFuncT& r) {
  const RatFuncT y(RatFuncY::var());
  return (y * r + RatFuncT::var() * diff_t(r)) / one_minus_t();
}

}  // namespace

AdHocFunction::AdHocFunction(RatFuncT r) : r_(std::move(r)) {
  if (r_.is_zero()) throw InvalidArgument("ad hoc function with zero rational part");
}

AdHocFunction step_down(const AdHocFunction& upper) {
  RatFuncT r = step_down_raw(upper.rational_part());
  // y R + t R' = 0 forces R = c t^{-y}, which is not rational.
  assert(!r.is_zero());
  return AdHocFunction(std::move(r));
}

StepUpResult step_up(const AdHocFunction& lower) {
  const RatFuncT target = one_minus_t() * lower.rational_part();
  const PolyT& num = target.num();
  const PolyT& den = target.den();  // monic
  const PolyT dden = den.derivative();
  const int deg_d = den.degree();
  const int bound = num.degree() + deg_d + 1;
  const PolyT rhs = num * den;

  // Unknown numerator A = sum a_i t^i with y A D + t (A' D - A D') = N D. The column
  // of a_i is L_i = (y+i) t^i D - t^{i+1} D', whose top coefficient y+i-deg D never
  // vanishes in Q(y): the system is triangular from the top.
  const RatFuncY y = RatFuncY::var();
  std::vector<PolyT> cols;
  cols.reserve(static_cast<std::size_t>(bound) + 1);
  for (int i = 0; i <= bound; ++i) {
    PolyT l = den.shifted(i).scaled(y + RatFuncY(i)) - dden.shifted(i + 1);
    cols.push_back(std::move(l));
  }
  std::vector<RatFuncY> a(static_cast<std::size_t>(bound) + 1, RatFuncY(0));
  auto residual_at = [&](int d) {
    RatFuncY acc = rhs.coeff(d);
    for (int i = 0; i <= bound; ++i) {
      const auto& ai = a[static_cast<std::size_t>(i)];
      if (ai.is_zero()) continue;
      RatFuncY c = cols[static_cast<std::size_t>(i)].coeff(d);
      if (!c.is_zero()) acc -= ai * c;
    }
    return acc;
  };
  const int top = std::max(bound + deg_d, rhs.degree());
  for (int d = top; d > bound + deg_d; --d)
    if (!residual_at(d).is_zero()) return Infertile{target, "degree bound exceeded"};
  for (int i = bound; i >= 0; --i) {
    const int d = i + deg_d;
    const RatFuncY pivot = cols[static_cast<std::size_t>(i)].coeff(d);
    a[static_cast<std::size_t>(i)] = residual_at(d) / pivot;
  }
  for (int d = deg_d - 1; d >= 0; --d)
    if (!residual_at(d).is_zero())
      return Infertile{target, "no rational antiderivative: linear system inconsistent at t^" + std::to_string(d)};

  AdHocFunction upper(RatFuncT(PolyT(std::move(a)), den));
  if (!(step_down(upper) == lower)) throw VerificationError("step_up: solution failed the step_down check");
  return upper;
}

Quatuor::Quatuor(int k_min, int generator_level, std::vector<AdHocFunction> levels)
    : k_min_(k_min), generator_level_(generator_level), levels_(std::move(levels)) {
  if (levels_.empty()) throw InvalidArgument("quatuor with an empty level range");
  if (!contains(generator_level_)) throw InvalidArgument("generator level outside the level range");
  for (std::size_t i = 0; i + 1 < levels_.size(); ++i)
    if (!(step_down(levels_[i + 1]) == levels_[i]))
      throw VerificationError("level relation fails between levels " + std::to_string(k_min_ + static_cast<int>(i)) +
                              " and " + std::to_string(k_min_ + static_cast<int>(i) + 1));
}

const AdHocFunction& Quatuor::level(int k) const {
  if (!contains(k))
    throw InvalidArgument("level " + std::to_string(k) + " outside [" + std::to_string(k_min()) + ", " +
                          std::to_string(k_max()) + "]");
  return levels_[static_cast<std::size_t>(k - k_min_)];
}

std::pair<Quatuor, FertilityReport> generate_range(const RatFuncT& generator, int generator_level, int k_min,
                                                   int k_max) {
  if (generator.is_zero()) throw InvalidArgument("zero generator");
  if (!(k_min <= generator_level && generator_level <= k_max))
    throw InvalidArgument("generator level must lie in the requested range");
  FertilityReport report;
  report.requested_min = k_min;
  report.requested_max = k_max;

  std::vector<AdHocFunction> down{AdHocFunction(generator)};
  for (int k = generator_level; k > k_min; --k) down.push_back(step_down(down.back()));
  std::vector<AdHocFunction> levels(down.rbegin(), down.rend());

  int reached = generator_level;
  for (int k = generator_level + 1; k <= k_max; ++k) {
    auto next = step_up(levels.back());
    if (auto* bad = std::get_if<Infertile>(&next)) {
      report.failure_level = k;
      report.failure_witness = bad->rhs;
      break;
    }
    levels.push_back(std::get<AdHocFunction>(std::move(next)));
    reached = k;
  }
  report.achieved_min = k_min;
  report.achieved_max = reached;
  return {Quatuor(k_min, generator_level, std::move(levels)), std::move(report)};
}

Quatuor shift(const Quatuor& q, int d) { return Quatuor(q.k_min() - d, q.generator_level() - d, q.levels()); }

Quatuor linear_combine(const std::vector<std::pair<BigRational, Quatuor>>& terms) {
  if (terms.empty()) throw InvalidArgument("linear_combine: no terms");
  int lo = terms.front().second.k_min(), hi = terms.front().second.k_max();
  for (const auto& [lambda, q] : terms) {
    lo = std::max(lo, q.k_min());
    hi = std::min(hi, q.k_max());
  }
  if (lo > hi) throw InvalidArgument("linear_combine: empty common range");
  std::vector<AdHocFunction> levels;
  for (int k = lo; k <= hi; ++k) {
    RatFuncT sum;
    for (const auto& [lambda, q] : terms) sum += q.level(k).rational_part().scaled(RatFuncY(lambda));
    if (sum.is_zero()) throw InvalidArgument("linear_combine: combination is identically zero");
    levels.emplace_back(std::move(sum));
  }
  const int gen = std::clamp(terms.front().second.generator_level(), lo, hi);
  return Quatuor(lo, gen, std::move(levels));
}

namespace {

// n! [t^n] of (taylor series) * e^{rate t}.
template <class K>
std::vector<K> times_exponential(const std::vector<K>& series, const K& rate, std::size_t order) {
  std::vector<K> exp_series(order + 1, K(0));
  K power(1);
  BigInt fact = 1;
  for (std::size_t j = 0; j <= order; ++j) {
    if (j > 0) {
      power = power * rate;
      fact *= static_cast<unsigned long>(j);
    }
    exp_series[j] = scale(power, BigRational(BigInt(1), fact));
  }
  auto prod = series_mul(series, exp_series, order);
  BigInt nf = 1;
  for (std::size_t n = 0; n <= order; ++n) {
    if (n > 0) nf *= static_cast<unsigned long>(n);
    prod[n] = scale(prod[n], BigRational(nf));
  }
  return prod;
}

}  // namespace

CoeffSeq<RatFuncY> g_coeffs(const AdHocFunction& f, std::size_t order) {
  auto series = taylor(f.rational_part(), order);
  return {SeqKind::v, times_exponential(series, RatFuncY::var(), order)};
}

CoeffSeq<RatFuncY> h_coeffs(const AdHocFunction& f, std::size_t order) {
  return from_associated(g_coeffs(f, order), order);
}

CoeffSeq<BigRational> g_coeffs_at(const AdHocFunction& f, const BigRational& r, std::size_t order) {
  auto series = taylor(substitute_y(f.rational_part(), r), order);
  return {SeqKind::v, times_exponential(series, r, order)};
}

CoeffSeq<BigRational> h_coeffs_at(const AdHocFunction& f, const BigRational& r, std::size_t order) {
  return from_associated(g_coeffs_at(f, r, order), order);
}

RatFuncY kolberg_h_closed(int k, int n) {
  if (n < 0) throw InvalidArgument("kolberg_h_closed: n must be >= 0");
  return RatFuncY(PolyY(std::vector<BigRational>{n, 1})).pow(n - k);
}

RatFuncY sharp_un_closed(int n) {
  if (n < 0) throw InvalidArgument("sharp_un_closed: n must be >= 0");
  const BigRational nn(n);
  PolyY quad(std::vector<BigRational>{BigRational(2) * nn * nn - nn, BigRational(2) * nn, 1});
  RatFuncY r(PolyY(std::vector<BigRational>{2, 1}) * quad);
  return r * RatFuncY(PolyY(std::vector<BigRational>{nn, 1})).pow(n - 3);
}

RatFuncT sharp_generator() {
  const RatFuncY y = RatFuncY::var();
  return RatFuncT(PolyT(std::vector<RatFuncY>{RatFuncY(1) + RatFuncY(2) / y, RatFuncY(0), RatFuncY(1)}));
}

RatFuncT kolberg_generator() { return RatFuncT(RatFuncY(1) / RatFuncY::var()); }

PoleSet pole_set(const Quatuor& q, const std::vector<int>& levels) {
  PoleSet out;
  auto add = [&](const RatFuncY& c) {
    if (c.den().is_one()) return;
    if (std::find(out.denominators.begin(), out.denominators.end(), c.den()) != out.denominators.end()) return;
    out.denominators.push_back(c.den());
    auto roots = rational_roots(c.den());
    out.rational_poles.insert(roots.begin(), roots.end());
  };
  for (int k : levels) {
    const RatFuncT& r = q.level(k).rational_part();
    for (const auto& c : r.num().coeffs()) add(c);
    for (const auto& c : r.den().coeffs()) add(c);
  }
  return out;
}

std::set<long> exceptional_set(const RatFuncQ<'s'>& g) {
  if (g.is_zero()) throw InvalidArgument("exceptional_set: zero rational function");
  if (g.num().term_count() != 1 || g.den().term_count() != 1) return {};
  return {-static_cast<long>(g.num().degree() - g.den().degree())};
}

KolbergizeResult kolbergize(const Quatuor& q, const std::map<int, BigRational>& weights, const BigRational& r) {
  std::vector<int> support;
  for (const auto& [k, a] : weights) {
    if (a.is_zero()) continue;
    if (!q.contains(k)) throw InvalidArgument("kolbergize: level " + std::to_string(k) + " outside the quatuor");
    support.push_back(k);
  }
  if (support.empty()) throw InvalidArgument("kolbergize: all weights are zero");
  PoleSet poles = pole_set(q, support);
  if (poles.rational_poles.contains(r)) {
    for (const auto& d : poles.denominators)
      if (d(r).is_zero())
        throw DomainError("kolbergize: r = " + r.to_string() + " is a pole (root of " + d.to_string() + ")");
  }
  RatFuncQ<'t'> g;
  for (int k : support) g += substitute_y(q.level(k).rational_part(), r).scaled(weights.at(k));
  if (g.is_zero()) throw InvalidArgument("kolbergize: the combination vanishes at y = " + r.to_string());
  KolbergizeResult res{g, r, {}, true};
  res.exceptional = exceptional_set(g.map_coeffs<'s'>([](const BigRational& c) { return c; }));
  res.criterion_applies = !(r.is_integer() && res.exceptional.contains(r.num().get_si()));
  return res;
}

}  // namespace kolberg
