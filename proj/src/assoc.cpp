#include "kolberg/assoc.hpp"

#include <string>

#include "kolberg/errors.hpp"
#include "kolberg/parallel.hpp"
#include "kolberg/series.hpp"

namespace kolberg {
namespace {

template <class K>
void check_input(const CoeffSeq<K>& s, SeqKind expected, std::size_t order, const char* op) {
  if (s.kind != expected)
    throw InvalidArgument(std::string(op) + ": wrong sequence kind (expected " +
                          (expected == SeqKind::u ? "u" : "v") + ")");
  if (s.values.size() < order + 1)
    throw InvalidArgument(std::string(op) + ": sequence has " + std::to_string(s.values.size()) +
                          " entries, need " + std::to_string(order + 1));
}

// base^exp with 0^0 = 1.
BigInt ipow(const BigInt& base, unsigned long exp) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

}  // namespace

template <class K>
CoeffSeq<K> to_associated(const CoeffSeq<K>& u, std::size_t order) {
  check_input(u, SeqKind::u, order, "to_associated");
  CoeffSeq<K> v{SeqKind::v, std::vector<K>(order + 1, K(0))};
  v.values[0] = u.values[0];
  parallel_for(order, [&](std::size_t i) {
    const unsigned long n = i + 1;
    K acc(0);
    for (unsigned long m = 1; m <= n; ++m) {
      if (u.values[m].is_zero()) continue;
      BigInt c = binomial(n, m) * ipow(BigInt(-static_cast<long>(m)), n - m);
      acc = acc + scale(u.values[m], BigRational(c));
    }
    v.values[n] = std::move(acc);
  });
  return v;
}

template <class K>
CoeffSeq<K> from_associated(const CoeffSeq<K>& v, std::size_t order) {
  check_input(v, SeqKind::v, order, "from_associated");
  CoeffSeq<K> u{SeqKind::u, std::vector<K>(order + 1, K(0))};
  u.values[0] = v.values[0];
  parallel_for(order, [&](std::size_t i) {
    const unsigned long n = i + 1;
    K acc(0);
    for (unsigned long m = 1; m <= n; ++m) {
      if (v.values[m].is_zero()) continue;
      BigInt c = binomial(n - 1, m - 1) * ipow(BigInt(n), n - m);
      acc = acc + scale(v.values[m], BigRational(c));
    }
    u.values[n] = std::move(acc);
  });
  return u;
}

template <class K>
CoeffSeq<K> compose_oracle(const CoeffSeq<K>& u, std::size_t order) {
  check_input(u, SeqKind::u, order, "compose_oracle");
  // e^{-t} = sum (-1)^j t^j / j!
  std::vector<BigRational> exp_minus(order + 1);
  for (std::size_t j = 0; j <= order; ++j)
    exp_minus[j] = BigRational(BigInt(j % 2 ? -1 : 1), factorial(j));

  std::vector<K> g(order + 1, K(0));
  std::vector<BigRational> power(order + 1, BigRational(0));  // (e^{-t})^n
  power[0] = 1;
  BigInt n_fact = 1;
  for (std::size_t n = 0; n <= order; ++n) {
    if (n > 0) {
      power = series_mul(power, exp_minus, order - n);
      n_fact *= static_cast<unsigned long>(n);
    }
    if (!u.values[n].is_zero()) {
      for (std::size_t j = 0; j + n <= order; ++j) {
        if (power[j].is_zero()) continue;
        g[j + n] = g[j + n] + scale(u.values[n], power[j] / BigRational(n_fact));
      }
    }
  }
  CoeffSeq<K> v{SeqKind::v, std::vector<K>(order + 1, K(0))};
  for (std::size_t k = 0; k <= order; ++k) v.values[k] = scale(g[k], BigRational(factorial(k)));
  return v;
}

template CoeffSeq<BigRational> to_associated(const CoeffSeq<BigRational>&, std::size_t);
template CoeffSeq<RatFuncY> to_associated(const CoeffSeq<RatFuncY>&, std::size_t);
template CoeffSeq<BigRational> from_associated(const CoeffSeq<BigRational>&, std::size_t);
template CoeffSeq<RatFuncY> from_associated(const CoeffSeq<RatFuncY>&, std::size_t);
template CoeffSeq<BigRational> compose_oracle(const CoeffSeq<BigRational>&, std::size_t);
template CoeffSeq<RatFuncY> compose_oracle(const CoeffSeq<RatFuncY>&, std::size_t);

}  // namespace kolberg
