#pragma once

#include <cassert>
#include <concepts>
#include <string>
#include <utility>
#include <vector>

#include "kolberg/errors.hpp"
#include "kolberg/rational.hpp"

namespace kolberg {

// What a coefficient type must provide to sit under UniPoly / RatFunc.
template <class K>
concept Field = requires(const K& a, const K& b, long n) {
  K(n);
  { a + b } -> std::convertible_to<K>;
  { a - b } -> std::convertible_to<K>;
  { a * b } -> std::convertible_to<K>;
  { a / b } -> std::convertible_to<K>;
  { -a } -> std::convertible_to<K>;
  { a == b } -> std::convertible_to<bool>;
  { a.is_zero() } -> std::convertible_to<bool>;
  { a.is_one() } -> std::convertible_to<bool>;
  { a.to_string() } -> std::convertible_to<std::string>;
  { a.needs_parens() } -> std::convertible_to<bool>;
};

inline bool display_negative(const BigRational& c) { return c.sign() < 0; }

// Dense univariate polynomial in the variable `Var`, lowest degree first.
// The zero polynomial has no stored coefficients.
template <class K, char Var>
class UniPoly {
 public:
  using coeff_type = K;
  static constexpr char variable = Var;

  UniPoly() = default;
  UniPoly(K constant) {  // NOLINT
    if (!constant.is_zero()) c_.push_back(std::move(constant));
  }
  UniPoly(long constant) : UniPoly(K(constant)) {}  // NOLINT
  explicit UniPoly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }

  static UniPoly monomial(K coeff, int degree) {
    if (coeff.is_zero()) return {};
    std::vector<K> c(static_cast<std::size_t>(degree) + 1, K(0));
    c.back() = std::move(coeff);
    return UniPoly(std::move(c));
  }
  static UniPoly x() { return monomial(K(1), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
  bool is_constant() const { return c_.size() <= 1; }
  const K& lead() const {
    assert(!c_.empty());
    return c_.back();
  }
  K coeff(int i) const {
    return i >= 0 && i < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(i)] : K(0);
  }
  const std::vector<K>& coeffs() const noexcept { return c_; }
  int term_count() const {
    int n = 0;
    for (const auto& a : c_) n += a.is_zero() ? 0 : 1;
    return n;
  }

  UniPoly& operator+=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), K(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
    trim();
    return *this;
  }
  UniPoly& operator-=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), K(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
    trim();
    return *this;
  }
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  UniPoly operator-() const {
    UniPoly r = *this;
    for (auto& a : r.c_) a = -a;
    return r;
  }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<K> r(a.c_.size() + b.c_.size() - 1, K(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        if (b.c_[j].is_zero()) continue;
        r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
      }
    }
    return UniPoly(std::move(r));
  }
  UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }

  UniPoly scaled(const K& s) const {
    if (s.is_zero()) return {};
    UniPoly r = *this;
    for (auto& a : r.c_) a = a * s;
    return r;
  }
  UniPoly shifted(int k) const {  // multiply by Var^k, k >= 0
    if (is_zero()) return {};
    UniPoly r;
    r.c_.assign(static_cast<std::size_t>(k), K(0));
    r.c_.insert(r.c_.end(), c_.begin(), c_.end());
    return r;
  }

  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

  // Euclidean division over the field K; throws on a zero divisor.
  static std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw DivisionByZero();
    if (a.degree() < b.degree()) return {UniPoly(), a};
    std::vector<K> rem = a.c_;
    std::vector<K> quo(a.c_.size() - b.c_.size() + 1, K(0));
    const K inv_lead = K(1) / b.lead();
    const std::size_t db = b.c_.size() - 1;
    for (std::size_t i = quo.size(); i-- > 0;) {
      const K& top = rem[i + db];
      if (top.is_zero()) continue;
      K q = b.lead().is_one() ? top : top * inv_lead;
      for (std::size_t j = 0; j <= db; ++j)
        if (!b.c_[j].is_zero()) rem[i + j] = rem[i + j] - q * b.c_[j];
      quo[i] = std::move(q);
    }
    rem.resize(db);
    return {UniPoly(std::move(quo)), UniPoly(std::move(rem))};
  }
  // Exact quotient; asserts that the remainder vanishes.
  UniPoly exact_div(const UniPoly& b) const {
    auto [q, r] = divmod(*this, b);
    assert(r.is_zero());
    return q;
  }

  UniPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<K> d(c_.size() - 1, K(0));
    for (std::size_t i = 1; i < c_.size(); ++i)
      d[i - 1] = c_[i] * K(static_cast<long>(i));
    return UniPoly(std::move(d));
  }

  UniPoly monic() const {
    if (is_zero() || lead().is_one()) return *this;
    return scaled(K(1) / lead());
  }

  UniPoly pow(unsigned e) const {
    UniPoly r(K(1)), b = *this;
    while (e) {
      if (e & 1u) r *= b;
      e >>= 1u;
      if (e) b *= b;
    }
    return r;
  }

  // Horner evaluation at a point of any type that K multiplies into.
  template <class T>
  T evaluate(const T& at) const {
    T acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * at + T(c_[i]);
    return acc;
  }
  K operator()(const K& at) const { return evaluate<K>(at); }

  // Rewrite each coefficient through `f`; the variable may change.
  template <char NewVar = Var, class F>
  auto map_coeffs(F&& f) const {
    using K2 = decltype(f(std::declval<const K&>()));
    std::vector<K2> r;
    r.reserve(c_.size());
    for (const auto& a : c_) r.push_back(f(a));
    return UniPoly<K2, NewVar>(std::move(r));
  }

  bool needs_parens() const { return term_count() > 1; }

  // Terms in decreasing degree, e.g. "2*y^2 - y + 1/3".
  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
      const K& a = c_[i];
      if (a.is_zero()) continue;
      const bool neg = display_negative(a);
      const K mag = neg ? -a : a;
      if (first) {
        if (neg) out += "-";
      } else {
        out += neg ? " - " : " + ";
      }
      first = false;
      std::string cs = mag.to_string();
      if (mag.needs_parens() && !(mag.is_one() && i > 0)) cs = "(" + cs + ")";
      if (i == 0) {
        out += cs;
        continue;
      }
      if (!mag.is_one()) out += cs + "*";
      out += Var;
      if (i > 1) out += "^" + std::to_string(i);
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<K> c_;
};

template <class K, char V>
bool display_negative(const UniPoly<K, V>& p) {
  return !p.is_zero() && display_negative(p.lead());
}

namespace detail {

template <char V>
UniPoly<BigRational, V> primitive_integer_part(const UniPoly<BigRational, V>& p) {
  BigInt l = 1, g = 0;
  for (const auto& a : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a.den().get_mpz_t());
  std::vector<BigRational> c;
  c.reserve(p.coeffs().size());
  for (const auto& a : p.coeffs()) {
    BigInt v = a.num() * (l / a.den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    c.emplace_back(v);
  }
  if (g != 0 && g != 1)
    for (auto& a : c) a = BigRational(BigInt(a.num() / g));
  return UniPoly<BigRational, V>(std::move(c));
}

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b, computed without division.
template <class K, char V>
UniPoly<K, V> pseudo_remainder(UniPoly<K, V> a, const UniPoly<K, V>& b) {
  const int db = b.degree();
  const K lb = b.lead();
  while (!a.is_zero() && a.degree() >= db) {
    const int shift = a.degree() - db;
    UniPoly<K, V> next = a.scaled(lb) - b.shifted(shift).scaled(a.lead());
    a = std::move(next);
  }
  return a;
}

template <class K, char V>
UniPoly<K, V> primitive_part(const UniPoly<K, V>& p);

}  // namespace detail

template <class K, char Var>
class RatFunc;

namespace detail {
template <class K>
struct is_ratfunc_over_q : std::false_type {};
template <char W>
struct is_ratfunc_over_q<RatFunc<BigRational, W>> : std::true_type {};
}  // namespace detail

// Monic gcd over the coefficient field. Over Q and over Q(w) the computation runs
// as a primitive remainder sequence over Z, resp. Q[w], which keeps coefficient
// growth in check; any other field falls back to Euclid with monic remainders.
template <class K, char V>
UniPoly<K, V> gcd(UniPoly<K, V> a, UniPoly<K, V> b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return UniPoly<K, V>(K(1));
  if (a.degree() < b.degree()) std::swap(a, b);
  if constexpr (std::is_same_v<K, BigRational> || detail::is_ratfunc_over_q<K>::value) {
    a = detail::primitive_part(a);
    b = detail::primitive_part(b);
    while (!b.is_zero()) {
      auto r = detail::pseudo_remainder(a, b);
      a = std::move(b);
      b = r.is_zero() ? r : detail::primitive_part(r);
    }
    return a.monic();
  } else {
    a = a.monic();
    b = b.monic();
    while (!b.is_zero()) {
      auto r = UniPoly<K, V>::divmod(a, b).second;
      a = std::move(b);
      b = r.monic();
    }
    return a;
  }
}

namespace detail {

template <class K, char V>
UniPoly<K, V> primitive_part(const UniPoly<K, V>& p) {
  if constexpr (std::is_same_v<K, BigRational>) {
    return primitive_integer_part(p);
  } else {
    // K = RatFunc<BigRational, W>: clear denominators, then divide out the content in Q[W].
    using Inner = typename K::poly_type;
    Inner l(BigRational(1));
    for (const auto& a : p.coeffs()) {
      if (a.den().is_one()) continue;
      Inner g = gcd(l, a.den());
      l = l * a.den().exact_div(g);
    }
    std::vector<Inner> nums;
    nums.reserve(p.coeffs().size());
    Inner content;
    for (const auto& a : p.coeffs()) {
      nums.push_back(a.den().is_one() ? a.num() * l : a.num() * l.exact_div(a.den()));
      content = content.is_constant() && !content.is_zero() ? content : gcd(content, nums.back());
    }
    BigInt den_lcm = 1, num_gcd = 0;
    for (auto& n : nums) {
      if (!content.is_constant()) n = n.exact_div(content);
      for (const auto& q : n.coeffs()) {
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), q.den().get_mpz_t());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), q.num().get_mpz_t());
      }
    }
    const BigRational factor(den_lcm, num_gcd == 0 ? BigInt(1) : num_gcd);
    std::vector<K> c;
    c.reserve(nums.size());
    for (auto& n : nums) c.push_back(K::from_canonical(n.scaled(factor), Inner(BigRational(1))));
    return UniPoly<K, V>(std::move(c));
  }
}

}  // namespace detail

template <char V>
using PolyQ = UniPoly<BigRational, V>;

}  // namespace kolberg
