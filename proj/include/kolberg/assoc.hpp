#pragma once

// Coefficient transforms between an exponential generating series
//   H(x) = sum u_n x^n / n!
// and its associated series
//   G(t) = H(t e^{-t}) = sum v_n t^n / n!.

#include <cstddef>
#include <vector>

#include "kolberg/ratfunc.hpp"
#include "kolberg/rational.hpp"

namespace kolberg {

enum class SeqKind { u, v };  // u: coefficients of H, v: coefficients of G

template <class K>
struct CoeffSeq {
  SeqKind kind = SeqKind::u;
  std::vector<K> values;

  std::size_t order() const { return values.empty() ? 0 : values.size() - 1; }
  friend bool operator==(const CoeffSeq& a, const CoeffSeq& b) {
    return a.kind == b.kind && a.values == b.values;
  }
};

// v_0 = u_0, v_n = sum_{m=1..n} C(n,m) (-m)^(n-m) u_m.
template <class K>
CoeffSeq<K> to_associated(const CoeffSeq<K>& u, std::size_t order);

// u_0 = v_0, u_n = sum_{m=1..n} C(n-1,m-1) n^(n-m) v_m.
template <class K>
CoeffSeq<K> from_associated(const CoeffSeq<K>& v, std::size_t order);

// Independent route to to_associated: expands sum_n u_n t^n (e^{-t})^n / n! by
// truncated series multiplication and reads off n! [t^n].
template <class K>
CoeffSeq<K> compose_oracle(const CoeffSeq<K>& u, std::size_t order);

extern template CoeffSeq<BigRational> to_associated(const CoeffSeq<BigRational>&, std::size_t);
extern template CoeffSeq<RatFuncY> to_associated(const CoeffSeq<RatFuncY>&, std::size_t);
extern template CoeffSeq<BigRational> from_associated(const CoeffSeq<BigRational>&, std::size_t);
extern template CoeffSeq<RatFuncY> from_associated(const CoeffSeq<RatFuncY>&, std::size_t);
extern template CoeffSeq<BigRational> compose_oracle(const CoeffSeq<BigRational>&, std::size_t);
extern template CoeffSeq<RatFuncY> compose_oracle(const CoeffSeq<RatFuncY>&, std::size_t);

}  // namespace kolberg
