#include "kolberg/bigfloat.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kolberg/errors.hpp"

namespace kolberg {
namespace {

long clamp_precision(long p) { return std::max(p, BigFloat::min_precision); }

long joint(const BigFloat& a, const BigFloat& b) { return std::max(a.precision(), b.precision()); }

}  // namespace

BigFloat::BigFloat(long precision) {
  mpfr_init2(v_, clamp_precision(precision));
  mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(long value, long precision) {
  mpfr_init2(v_, clamp_precision(precision));
  mpfr_set_si(v_, value, MPFR_RNDN);
}

BigFloat::BigFloat(const BigRational& q, long precision, mpfr_rnd_t rnd) {
  mpfr_init2(v_, clamp_precision(precision));
  mpfr_set_q(v_, q.raw().get_mpq_t(), rnd);
}

BigFloat BigFloat::parse(std::string_view text, long precision) {
  BigFloat r(precision);
  std::string s(text);
  char* end = nullptr;
  if (!s.empty()) mpfr_strtofr(r.v_, s.c_str(), &end, 10, MPFR_RNDN);
  if (s.empty() || end == s.c_str() || *end != '\0' || !r.is_finite())
    throw ParseError("malformed decimal '" + s + "'", 0);
  return r;
}

BigFloat BigFloat::from_double(double v, long precision) {
  BigFloat r(precision);
  mpfr_set_d(r.v_, v, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::e(long precision) {
  BigFloat one(1, precision);
  return one.exp();
}

BigFloat::BigFloat(const BigFloat& o) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::with_precision(long precision) const {
  BigFloat r(precision);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

BigFloat operator+(const BigFloat& a, const BigFloat& b) {
  BigFloat r(joint(a, b));
  mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}
BigFloat operator-(const BigFloat& a, const BigFloat& b) {
  BigFloat r(joint(a, b));
  mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}
BigFloat operator*(const BigFloat& a, const BigFloat& b) {
  BigFloat r(joint(a, b));
  mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}
BigFloat operator/(const BigFloat& a, const BigFloat& b) {
  if (b.is_zero()) throw DivisionByZero();
  BigFloat r(joint(a, b));
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::operator-() const {
  BigFloat r(precision());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::abs() const {
  BigFloat r(precision());
  mpfr_abs(r.v_, v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::exp() const {
  BigFloat r(precision());
  mpfr_exp(r.v_, v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::log() const {
  if (sign() <= 0) throw DomainError("log of a non-positive number");
  BigFloat r(precision());
  mpfr_log(r.v_, v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::pow(long e) const {
  if (e < 0 && is_zero()) throw DivisionByZero();
  BigFloat r(precision());
  mpfr_pow_si(r.v_, v_, e, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::pow(const BigFloat& e) const {
  BigFloat r(joint(*this, e));
  mpfr_pow(r.v_, v_, e.v_, MPFR_RNDN);
  if (!r.is_finite()) throw DomainError("pow: result is not a real number");
  return r;
}

BigFloat BigFloat::pow_abs(const BigRational& r) const {
  BigFloat a = abs();
  if (r.is_integer()) return a.pow(r.num().get_si());
  if (a.is_zero()) {
    if (r.sign() < 0) throw DivisionByZero();
    return a;
  }
  if (!r.num().fits_slong_p() || !r.den().fits_ulong_p()) return a.pow(BigFloat(r, precision()));
  BigFloat p = a.pow(r.num().get_si());
  BigFloat out(precision());
  mpfr_rootn_ui(out.v_, p.v_, r.den().get_ui(), MPFR_RNDN);
  return out;
}

BigFloat BigFloat::exp2(long e, long precision) {
  BigFloat r(precision);
  mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
  return r;
}

std::string BigFloat::to_string(int digits, mpfr_rnd_t rnd) const {
  if (is_zero()) return "0";
  if (!is_finite()) return mpfr_nan_p(v_) ? "nan" : (sign() > 0 ? "inf" : "-inf");
  mpfr_exp_t exp10 = 0;
  char* raw = mpfr_get_str(nullptr, &exp10, 10, static_cast<size_t>(std::max(digits, 2)), v_, rnd);
  std::string m(raw);
  mpfr_free_str(raw);
  std::string sign;
  if (!m.empty() && m[0] == '-') {
    sign = "-";
    m.erase(0, 1);
  }
  // m holds the digits d1 d2 ... with value 0.d1d2... * 10^exp10
  std::string out = sign + m.substr(0, 1);
  if (m.size() > 1) out += "." + m.substr(1);
  const long e = static_cast<long>(exp10) - 1;
  out += (e < 0 ? "e-" : "e+") + std::to_string(e < 0 ? -e : e);
  return out;
}

int BigFloat::decimal_digits() const {
  return static_cast<int>(std::floor(static_cast<double>(precision()) * 0.30102999566398120));
}

BigFloat max(const BigFloat& a, const BigFloat& b) { return a < b ? b : a; }

}  // namespace kolberg
