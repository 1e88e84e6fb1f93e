#include <doctest.h>

#include "kolberg/assoc.hpp"
#include "kolberg/expr.hpp"
#include "random_gen.hpp"

using namespace kolberg;

namespace {

RatFuncY Y(const char* s) { return parse_ratfunc_y(s); }

template <class K>
CoeffSeq<K> useq(std::vector<K> v) {
  return {SeqKind::u, std::move(v)};
}

// The transform as first published, with (-n)^(n-m) in place of (-m)^(n-m).
CoeffSeq<BigRational> to_associated_uncorrected(const CoeffSeq<BigRational>& u, std::size_t order) {
  CoeffSeq<BigRational> v{SeqKind::v, std::vector<BigRational>(order + 1)};
  v.values[0] = u.values[0];
  for (unsigned long n = 1; n <= order; ++n)
    for (unsigned long m = 1; m <= n; ++m)
      v.values[n] += u.values[m] * BigRational(binomial(n, m)) * BigRational(-static_cast<long>(n)).pow(static_cast<long>(n - m));
  return v;
}

}  // namespace

TEST_CASE("to_associated examples") {
  auto c = useq<RatFuncY>({Y("y^2+1"), 0, 0, 0, 0});
  auto v = to_associated(c, 4);
  CHECK(v.kind == SeqKind::v);
  CHECK(v.values == std::vector<RatFuncY>{Y("y^2+1"), 0, 0, 0, 0});

  auto sharp = useq<RatFuncY>({Y("(y+2)/y"), Y("y+2"), Y("y^2+4*y+6"), Y("(y+2)*(y^2+6*y+15)")});
  CHECK(to_associated(sharp, 3).values ==
        std::vector<RatFuncY>{Y("(y+2)/y"), Y("y+2"), Y("y^2+2*y+2"), Y("(y^2+2*y+6)*y")});

  // H = x: t e^{-t} has v_n = (-1)^(n-1) n.
  std::vector<BigRational> x(12, 0);
  x[1] = 1;
  auto vx = to_associated(useq(x), 11);
  for (long n = 1; n <= 11; ++n) CHECK(vx.values[static_cast<std::size_t>(n)] == BigRational(n % 2 ? n : -n));
  CHECK(vx.values[0].is_zero());
}

TEST_CASE("from_associated examples") {
  std::vector<RatFuncY> v{Y("(y+2)/y")};
  for (int n = 1; n <= 7; ++n)
    v.push_back(Y("y^2+2*y") * RatFuncY::var().pow(n - 2) +
                RatFuncY(static_cast<long>(n) * (n - 1)) * RatFuncY::var().pow(n - 2));
  auto u = from_associated(CoeffSeq<RatFuncY>{SeqKind::v, v}, 7);
  CHECK(u.values[5] == Y("(y+2)*(y^2+10*y+45)*(y+5)^2"));
  CHECK(u.values[7] == Y("(y+2)*(y^2+14*y+91)*(y+7)^4"));

  CoeffSeq<BigRational> c{SeqKind::v, {BigRational(3), 0, 0, 0}};
  CHECK(from_associated(c, 3).values == std::vector<BigRational>{3, 0, 0, 0});

  CHECK_THROWS_AS(from_associated(useq<BigRational>({1, 2}), 1), InvalidArgument);
  CHECK_THROWS_AS(from_associated(CoeffSeq<BigRational>{SeqKind::v, {1, 2}}, 5), InvalidArgument);
}

TEST_CASE("compose_oracle examples") {
  std::vector<BigRational> x(8, 0);
  x[1] = 1;
  auto v = compose_oracle(useq(x), 7);
  for (long n = 1; n <= 7; ++n) CHECK(v.values[static_cast<std::size_t>(n)] == BigRational(n % 2 ? n : -n));

  auto e = compose_oracle(useq<BigRational>({1, 1, 1, 1, 1}), 4);
  CHECK(e.values[2] == BigRational(-1));
  CHECK(e.values[1] == BigRational(1));

  auto c = compose_oracle(useq<BigRational>({5, 0, 0}), 2);
  CHECK(c.values == std::vector<BigRational>{5, 0, 0});
}

TEST_CASE("roundtrip and oracle equivalence over Q") {
  testgen::Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t order = 1 + rng() % 60;
    std::vector<BigRational> u(order + 1);
    for (auto& a : u) a = testgen::random_rational(rng, 20, 9);
    auto v = to_associated(useq(u), order);
    REQUIRE(from_associated(v, order).values == u);
    if (order <= 25) REQUIRE(compose_oracle(useq(u), order) == v);
  }
}

TEST_CASE("roundtrip and oracle equivalence over Q(y)") {
  testgen::Rng rng(6);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t order = 1 + rng() % 25;
    std::vector<RatFuncY> u(order + 1);
    for (auto& a : u) a = testgen::random_ratfunc_y(rng, 3);
    auto v = to_associated(useq(u), order);
    REQUIRE(from_associated(v, order).values == u);
    REQUIRE(compose_oracle(useq(u), order) == v);
  }
}

TEST_CASE("transforms are linear") {
  testgen::Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t order = 12;
    std::vector<RatFuncY> a(order + 1), b(order + 1), s(order + 1);
    RatFuncY lambda = testgen::random_ratfunc_y(rng, 1);
    for (std::size_t i = 0; i <= order; ++i) {
      a[i] = testgen::random_ratfunc_y(rng, 2);
      b[i] = testgen::random_ratfunc_y(rng, 2);
      s[i] = lambda * a[i] + b[i];
    }
    auto ta = to_associated(useq(a), order), tb = to_associated(useq(b), order), ts = to_associated(useq(s), order);
    for (std::size_t i = 0; i <= order; ++i) REQUIRE(ts.values[i] == lambda * ta.values[i] + tb.values[i]);
    CoeffSeq<RatFuncY> va{SeqKind::v, a}, vb{SeqKind::v, b}, vs{SeqKind::v, s};
    auto fa = from_associated(va, order), fb = from_associated(vb, order), fs = from_associated(vs, order);
    for (std::size_t i = 0; i <= order; ++i) REQUIRE(fs.values[i] == lambda * fa.values[i] + fb.values[i]);
  }
}

TEST_CASE("the (-n) exponent base breaks the roundtrip") {
  auto u = useq<BigRational>({0, 1, 1, 0, 0});
  bool failed = false;
  for (std::size_t order = 1; order <= 4 && !failed; ++order) {
    auto bad = to_associated_uncorrected(u, order);
    bad.kind = SeqKind::v;
    auto back = from_associated(bad, order);
    std::vector<BigRational> expect(u.values.begin(), u.values.begin() + static_cast<long>(order) + 1);
    if (back.values != expect) failed = true;
  }
  CHECK(failed);
  CHECK(from_associated(to_associated(u, 4), 4).values == u.values);
}
