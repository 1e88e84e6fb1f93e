#include "kolberg/rational.hpp"

#include <cctype>
#include <string>

#include "kolberg/errors.hpp"

namespace kolberg {

BigRational::BigRational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw DivisionByZero();
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

BigRational BigRational::parse(std::string_view text) {
  std::size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  std::string s(text.substr(b, e - b));
  auto valid_int = [](const std::string& p, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && i < p.size() && (p[i] == '-' || p[i] == '+')) ++i;
    if (i == p.size()) return false;
    for (; i < p.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(p[i]))) return false;
    return true;
  };
  auto slash = s.find('/');
  std::string n = s.substr(0, slash);
  std::string d = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(n, true) || !valid_int(d, false))
    throw ParseError("malformed rational '" + s + "'", 0);
  if (!n.empty() && n[0] == '+') n.erase(0, 1);
  return BigRational(BigInt(n), BigInt(d));
}

BigRational BigRational::inverse() const {
  if (is_zero()) throw DivisionByZero();
  return BigRational(mpq_class(1) / q_);
}

BigRational BigRational::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  BigRational r;
  mpz_pow_ui(r.q_.get_num_mpz_t(), q_.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(r.q_.get_den_mpz_t(), q_.get_den_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

BigRational& BigRational::operator/=(const BigRational& o) {
  if (o.is_zero()) throw DivisionByZero();
  q_ /= o.q_;
  return *this;
}

std::string BigRational::to_string() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

// Multiplicative formula: after step i the running value is C(n-k+i, i), so every
// division is exact.
BigInt binomial(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt c = 1;
  for (unsigned long i = 1; i <= k; ++i) {
    c *= n - k + i;
    mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), i);
  }
  return c;
}

BigInt factorial(unsigned long n) {
  BigInt f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

}  // namespace kolberg
