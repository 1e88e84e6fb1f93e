#include "kolberg/roots.hpp"

#include <vector>

#include "kolberg/errors.hpp"

namespace kolberg::detail {
namespace {

using Poly = PolyQ<'z'>;

// Sign changes of a Sturm sequence at a point, zeros skipped.
int sign_changes(const std::vector<Poly>& seq, const BigRational& at) {
  int changes = 0, last = 0;
  for (const auto& p : seq) {
    int s = p(at).sign();
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

std::vector<Poly> sturm_sequence(const Poly& p) {
  std::vector<Poly> seq{p, p.derivative()};
  while (!seq.back().is_zero() && seq.back().degree() > 0) {
    auto r = Poly::divmod(seq[seq.size() - 2], seq.back()).second;
    seq.push_back(-r);
  }
  if (seq.back().is_zero()) seq.pop_back();
  return seq;
}

// Integer roots of a squarefree monic integer polynomial with q(0) != 0. Rational
// roots of a monic integer polynomial are integers, so half-integers are never roots
// and make safe Sturm evaluation points; bisection on integer bounds then isolates
// each unit cell (b - 1/2, b + 1/2] and the integer b is tested exactly.
void integer_roots(const Poly& q, std::set<BigInt>& out) {
  BigInt bound = 1;
  for (const auto& c : q.coeffs()) {
    BigInt a = abs(c.num());
    if (a > bound) bound = a;
  }
  bound += 1;
  const auto seq = sturm_sequence(q);
  const BigRational half(BigInt(1), BigInt(2));
  struct Cell {
    BigInt lo, hi;  // integers in (lo, hi]
  };
  std::vector<Cell> stack{{-bound - 1, bound}};
  while (!stack.empty()) {
    Cell c = stack.back();
    stack.pop_back();
    const int count = sign_changes(seq, BigRational(c.lo) + half) - sign_changes(seq, BigRational(c.hi) + half);
    if (count <= 0) continue;
    if (c.hi - c.lo == 1) {
      if (q(BigRational(c.hi)).is_zero()) out.insert(c.hi);
      continue;
    }
    BigInt mid = c.lo + (c.hi - c.lo) / 2;
    stack.push_back({mid, c.hi});
    stack.push_back({c.lo, mid});
  }
}

}  // namespace

std::set<BigRational> rational_roots_impl(const std::vector<BigRational>& coeffs) {
  Poly p{std::vector<BigRational>(coeffs)};
  if (p.is_zero()) throw InvalidArgument("rational_roots: zero polynomial");
  std::set<BigRational> roots;
  if (p.coeff(0).is_zero()) {
    roots.insert(BigRational(0));
    int k = 0;
    while (p.coeff(k).is_zero()) ++k;
    p = Poly(std::vector<BigRational>(p.coeffs().begin() + k, p.coeffs().end()));
  }
  if (p.degree() < 1) return roots;
  Poly g = gcd(p, p.derivative());
  if (!g.is_one()) p = p.exact_div(g);
  p = primitive_integer_part(p);
  // q(z) = lc^(d-1) p(z / lc) is monic with integer coefficients.
  const BigInt lc = p.lead().num();
  const int d = p.degree();
  std::vector<BigRational> qc(static_cast<std::size_t>(d) + 1);
  BigInt scale = 1;
  for (int i = d; i >= 0; --i) {
    qc[static_cast<std::size_t>(i)] = i == d ? BigRational(1) : BigRational(BigInt(p.coeff(i).num() * scale));
    if (i < d) scale *= lc;
  }
  // scale built top-down: coefficient i gets lc^(d-1-i).
  Poly q{std::move(qc)};
  std::set<BigInt> zs;
  integer_roots(q, zs);
  for (const auto& z : zs) {
    BigRational r(z, lc);
    if (Poly{std::vector<BigRational>(coeffs)}(r).is_zero()) roots.insert(r);
  }
  return roots;
}

}  // namespace kolberg::detail
