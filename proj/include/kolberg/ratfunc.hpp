#pragma once

#include <string>
#include <utility>

#include "kolberg/errors.hpp"
#include "kolberg/poly.hpp"
#include "kolberg/rational.hpp"

namespace kolberg {

// Element of the rational function field K(Var), kept canonical: numerator and
// denominator coprime, denominator monic, zero stored as 0/1. Equality is structural.
template <class K, char Var>
class RatFunc {
 public:
  using coeff_type = K;
  using poly_type = UniPoly<K, Var>;
  static constexpr char variable = Var;

  RatFunc() : den_(K(1)) {}
  RatFunc(long c) : num_(K(c)), den_(K(1)) {}  // NOLINT
  RatFunc(const K& c) : num_(c), den_(K(1)) {}  // NOLINT
  RatFunc(poly_type p) : num_(std::move(p)), den_(K(1)) {}  // NOLINT
  RatFunc(poly_type num, poly_type den) : num_(std::move(num)), den_(std::move(den)) {
    normalize();
  }
  // Hard-wired constructor for a pair already known to be canonical.
  static RatFunc from_canonical(poly_type num, poly_type den) {
    RatFunc r;
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    return r;
  }

  static RatFunc var() { return RatFunc(poly_type::x()); }

  const poly_type& num() const noexcept { return num_; }
  const poly_type& den() const noexcept { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return den_.is_one() && num_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  // Value of a constant rational function.
  K constant_value() const { return num_.coeff(0); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) {
      if (a.den_.is_one()) return from_canonical(a.num_ + b.num_, a.den_);
      return RatFunc(a.num_ + b.num_, a.den_);
    }
    if (a.den_.is_one()) return from_canonical(a.num_ * b.den_ + b.num_, b.den_);
    if (b.den_.is_one()) return from_canonical(a.num_ + b.num_ * a.den_, a.den_);
    const poly_type g = gcd(a.den_, b.den_);
    if (g.is_one()) return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    const poly_type bd = b.den_.exact_div(g);
    return RatFunc(a.num_ * bd + b.num_ * a.den_.exact_div(g), a.den_ * bd);
  }
  RatFunc operator-() const { return from_canonical(-num_, den_); }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc();
    if (a.den_.is_one() && b.den_.is_one()) return from_canonical(a.num_ * b.num_, a.den_);
    // Cross-cancel so the product is already reduced.
    poly_type g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
    poly_type n1 = g1.is_one() ? a.num_ : a.num_.exact_div(g1);
    poly_type d2 = g1.is_one() ? b.den_ : b.den_.exact_div(g1);
    poly_type n2 = g2.is_one() ? b.num_ : b.num_.exact_div(g2);
    poly_type d1 = g2.is_one() ? a.den_ : a.den_.exact_div(g2);
    poly_type n = n1 * n2, d = d1 * d2;
    const K l = d.lead();
    if (!l.is_one()) {
      const K inv = K(1) / l;
      n = n.scaled(inv);
      d = d.scaled(inv);
    }
    return from_canonical(std::move(n), std::move(d));
  }
  RatFunc inverse() const {
    if (is_zero()) throw DivisionByZero();
    return RatFunc(den_, num_);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

  // Multiplication by a coefficient-field constant needs no gcd.
  RatFunc scaled(const K& s) const {
    if (s.is_zero()) return RatFunc();
    return from_canonical(num_.scaled(s), den_);
  }

  RatFunc pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    // Powers of coprime polynomials stay coprime.
    return from_canonical(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)));
  }

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  // Formal derivative with respect to Var.
  RatFunc derivative() const {
    if (den_.is_one()) return from_canonical(num_.derivative(), den_);
    return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
  }

  // Value at a point of K; throws DomainError at a pole.
  K operator()(const K& at) const {
    K d = den_(at);
    if (d.is_zero())
      throw DomainError(std::string("pole: ") + Var + " = " + at.to_string() + " is a root of the denominator " +
                        den_.to_string());
    return num_(at) / d;
  }

  // Maps every coefficient of numerator and denominator through `f` and renormalizes.
  template <char NewVar = Var, class F>
  auto map_coeffs(F&& f) const {
    auto n = num_.template map_coeffs<NewVar>(f);
    auto d = den_.template map_coeffs<NewVar>(f);
    using K2 = typename decltype(n)::coeff_type;
    if (d.is_zero()) throw DivisionByZero("denominator vanished under coefficient map");
    return RatFunc<K2, NewVar>(std::move(n), std::move(d));
  }

  bool needs_parens() const { return den_.is_one() && num_.needs_parens(); }

  std::string to_string() const {
    if (den_.is_one()) return num_.to_string();
    std::string n = num_.to_string();
    if (num_.term_count() > 1) n = "(" + n + ")";
    std::string d = den_.to_string();
    if (den_.term_count() > 1 || !den_.lead().is_one() || den_.is_constant()) d = "(" + d + ")";
    return n + "/" + d;
  }

 private:
  void normalize() {
    if (den_.is_zero()) throw DivisionByZero();
    if (num_.is_zero()) {
      den_ = poly_type(K(1));
      return;
    }
    if (!den_.is_constant()) {
      poly_type g = gcd(num_, den_);
      if (!g.is_one()) {
        num_ = num_.exact_div(g);
        den_ = den_.exact_div(g);
      }
    }
    const K l = den_.lead();
    if (!l.is_one()) {
      const K inv = K(1) / l;
      num_ = num_.scaled(inv);
      den_ = den_.scaled(inv);
    }
  }

  poly_type num_;
  poly_type den_;
};

template <class K, char V>
bool display_negative(const RatFunc<K, V>& r) {
  return display_negative(r.num());
}

// The tower Q -> Q(y) -> Q(y)(t).
using RatFuncY = RatFunc<BigRational, 'y'>;
using RatFuncT = RatFunc<RatFuncY, 't'>;
using PolyY = UniPoly<BigRational, 'y'>;
using PolyT = UniPoly<RatFuncY, 't'>;
// Rational functions in one variable over Q (specializations y := r, g(s), ...).
template <char V>
using RatFuncQ = RatFunc<BigRational, V>;

// Specialization y := r of an element of Q(y)(t). Throws DomainError naming the
// offending y-denominator when r is a pole of some coefficient.
RatFuncQ<'t'> substitute_y(const RatFuncT& f, const BigRational& r);

// Derivative with respect to t.
inline RatFuncT diff_t(const RatFuncT& f) { return f.derivative(); }

}  // namespace kolberg
