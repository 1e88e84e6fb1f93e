#pragma once

#include <mpfr.h>

#include <string>
#include <string_view>

#include "kolberg/rational.hpp"

namespace kolberg {

// RAII handle on an MPFR number with an explicit mantissa precision. Binary
// operations round to nearest at the larger of the two operand precisions.
class BigFloat {
 public:
  static constexpr long min_precision = 64;

  explicit BigFloat(long precision = min_precision);
  BigFloat(long value, long precision);
  BigFloat(const BigRational& q, long precision, mpfr_rnd_t rnd = MPFR_RNDN);
  // Decimal or scientific text such as "1e-30" or "0.25".
  static BigFloat parse(std::string_view text, long precision);
  static BigFloat from_double(double v, long precision);
  static BigFloat e(long precision);

  BigFloat(const BigFloat& o);
  BigFloat(BigFloat&& o) noexcept;
  BigFloat& operator=(const BigFloat& o);
  BigFloat& operator=(BigFloat&& o) noexcept;
  ~BigFloat();

  long precision() const { return static_cast<long>(mpfr_get_prec(v_)); }
  BigFloat with_precision(long precision) const;

  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
  BigFloat operator-() const;
  BigFloat& operator+=(const BigFloat& o) { return *this = *this + o; }
  BigFloat& operator-=(const BigFloat& o) { return *this = *this - o; }
  BigFloat& operator*=(const BigFloat& o) { return *this = *this * o; }

  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return b < a; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return b <= a; }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }

  BigFloat abs() const;
  BigFloat exp() const;
  BigFloat log() const;
  BigFloat pow(long e) const;
  BigFloat pow(const BigFloat& e) const;
  // |this|^r for rational r, computed as a root of an integer power.
  BigFloat pow_abs(const BigRational& r) const;
  // 2^e at the given precision.
  static BigFloat exp2(long e, long precision);

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // Scientific notation with `digits` significant decimal digits, e.g. "1.2340e-5".
  std::string to_string(int digits, mpfr_rnd_t rnd = MPFR_RNDN) const;
  // Significant digits that the precision supports.
  int decimal_digits() const;

 private:
  mpfr_t v_;
};

BigFloat max(const BigFloat& a, const BigFloat& b);

}  // namespace kolberg
