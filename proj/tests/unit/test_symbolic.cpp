#include <doctest.h>

#include <random>

#include "kolberg/expr.hpp"
#include "kolberg/ratfunc.hpp"
#include "kolberg/roots.hpp"
#include "random_gen.hpp"

using namespace kolberg;

TEST_CASE("BigRational basics") {
  BigRational a = BigRational::parse("-6/4");
  CHECK(a == BigRational(BigInt(-3), BigInt(2)));
  CHECK(a.to_string() == "-3/2");
  CHECK(BigRational(0).den() == 1);
  CHECK(BigRational::parse(" 7 ") == BigRational(7));
  CHECK_THROWS_AS(BigRational::parse("1/0"), DivisionByZero);
  CHECK_THROWS_AS(BigRational::parse("1/-2"), ParseError);
  CHECK_THROWS_AS(BigRational(1) / BigRational(0), DivisionByZero);
  CHECK(BigRational(BigInt(2), BigInt(3)).pow(-2) == BigRational(BigInt(9), BigInt(4)));
}

TEST_CASE("binomial matches GMP") {
  for (unsigned long n = 0; n < 70; ++n)
    for (unsigned long k = 0; k <= n + 1; ++k) {
      BigInt ref;
      mpz_bin_uiui(ref.get_mpz_t(), n, k);
      REQUIRE(binomial(n, k) == ref);
    }
}

TEST_CASE("parse_expr examples") {
  RatFuncT r = parse_ratfunc_t("1+2/y+t^2");
  RatFuncY y = RatFuncY::var();
  RatFuncT expected = RatFuncT(PolyT(std::vector<RatFuncY>{(y + RatFuncY(2)) / y, RatFuncY(0), RatFuncY(1)}));
  CHECK(r == expected);
  CHECK(r.to_string() == "t^2 + (y + 2)/y");
  // Same value as the fully expanded (t^2*y + y + 2)/y.
  CHECK(parse_ratfunc_t("(t^2*y + y + 2)/y") == r);
  CHECK(parse_ratfunc_t("(1-t)*(1/(1-t))") == RatFuncT(1));
  CHECK_THROWS_AS(parse_ratfunc_t("1/0"), ParseError);
  CHECK_THROWS_AS(parse_ratfunc_t("1/(t-t)"), ParseError);
  CHECK_THROWS_AS(parse_ratfunc_t("(t^2"), ParseError);
  CHECK_THROWS_AS(parse_ratfunc_t("z+1"), ParseError);
  CHECK_THROWS_AS(parse_ratfunc_t("s+1"), ParseError);
  CHECK_THROWS_AS(parse_ratfunc_t("t^y"), ParseError);
  try {
    parse_ratfunc_t("t + * 2");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
  CHECK(parse_ratfunc_t("-t^2") == -parse_ratfunc_t("t^2"));
  CHECK(parse_ratfunc_t("t^-2") == parse_ratfunc_t("1/t^2"));
  CHECK(parse_rational_expr("3/10") == BigRational(BigInt(3), BigInt(10)));
  CHECK(parse_poly_n("n^2+1").degree() == 2);
  CHECK_THROWS_AS(parse_poly_n("1/n"), ParseError);
}

TEST_CASE("ring_ops examples") {
  auto t = RatFuncT::var();
  RatFuncT y(RatFuncY::var());
  CHECK((y / (RatFuncT(1) - t)) * (RatFuncT(1) - t) == y);
  CHECK(t * t + RatFuncT(1) - t * t == RatFuncT(1));
  RatFuncY yy = RatFuncY::var();
  CHECK(((yy + RatFuncY(2)) / yy).pow(2) == parse_ratfunc_y("(y^2+4*y+4)/y^2"));
  CHECK_THROWS_AS(t / RatFuncT(0), DivisionByZero);
}

TEST_CASE("diff_t examples") {
  CHECK(diff_t(parse_ratfunc_t("t^2")) == parse_ratfunc_t("2*t"));
  CHECK(diff_t(parse_ratfunc_t("y/(1-t)")) == parse_ratfunc_t("y/(1-t)^2"));
  CHECK(diff_t(parse_ratfunc_t("(y^2+1)/(y-3)")).is_zero());
}

TEST_CASE("substitute_y examples") {
  auto r = parse_ratfunc_t("1+2/y+t^2");
  CHECK(substitute_y(r, 2) == parse_ratfunc_q_t("2+t^2"));
  CHECK(substitute_y(r, 1) == parse_ratfunc_q_t("3+t^2"));
  CHECK_THROWS_AS(substitute_y(parse_ratfunc_t("1/y"), 0), DomainError);
  try {
    substitute_y(parse_ratfunc_t("t/(y^2-1) + 1"), 1);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("y^2 - 1") != std::string::npos);
  }
}

TEST_CASE("rational_roots examples") {
  auto roots = [](const char* s) { return rational_roots(parse_ratfunc_y(s).num()); };
  CHECK(roots("y^2+3*y+2") == std::set<BigRational>{-1, -2});
  CHECK(roots("y^2+1").empty());
  CHECK(roots("y^3") == std::set<BigRational>{0});
  CHECK(roots("(2*y-1)*(3*y+2)^2*(y^2-2)") ==
        std::set<BigRational>{BigRational(BigInt(1), BigInt(2)), BigRational(BigInt(-2), BigInt(3))});
  CHECK(roots("y*(y+1)*(y+2)*(y+3)") == std::set<BigRational>{0, -1, -2, -3});
  CHECK(roots("7").empty());
  CHECK_THROWS_AS(rational_roots(PolyQ<'y'>()), InvalidArgument);
}

TEST_CASE("rational_roots finds planted roots") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> d(-9, 9);
  for (int trial = 0; trial < 60; ++trial) {
    PolyQ<'y'> p(BigRational(d(rng) == 0 ? 1 : 3));
    std::set<BigRational> planted;
    for (int i = 0; i < 3; ++i) {
      long num = d(rng), den = 1 + (d(rng) + 9) % 4;
      BigRational r{BigInt(num), BigInt(den)};
      planted.insert(r);
      p *= PolyQ<'y'>(std::vector<BigRational>{-r, BigRational(1)});
    }
    p *= PolyQ<'y'>(std::vector<BigRational>{2, 0, 1});  // y^2 + 2, no rational roots
    CHECK(rational_roots(p) == planted);
  }
}

TEST_CASE("field properties on random elements") {
  testgen::Rng rng(2024);
  for (int i = 0; i < 60; ++i) {
    RatFuncT a = testgen::random_ratfunc_t(rng);
    RatFuncT b = testgen::random_ratfunc_t(rng);
    if (b.is_zero()) continue;
    CHECK((a * b) / b == a);
    CHECK(a + b - b == a);
    CHECK(diff_t(a * b) == diff_t(a) * b + a * diff_t(b));
    // canonical invariants
    auto c = a * b + a;
    CHECK((c.den().is_one() || c.den().lead().is_one()));
    CHECK(gcd(c.num(), c.den()).is_one());
  }
}

TEST_CASE("substitute_y is a ring homomorphism away from poles") {
  testgen::Rng rng(77);
  for (int i = 0; i < 60; ++i) {
    RatFuncT a = testgen::random_ratfunc_t(rng);
    RatFuncT b = testgen::random_ratfunc_t(rng);
    BigRational r(BigInt(static_cast<long>(rng() % 11) + 5), BigInt(static_cast<long>(rng() % 3) + 7));
    try {
      auto sa = substitute_y(a, r), sb = substitute_y(b, r);
      CHECK(substitute_y(a + b, r) == sa + sb);
      CHECK(substitute_y(a * b, r) == sa * sb);
    } catch (const DomainError&) {
      // r hit a pole of one of the random coefficients
    }
  }
}

TEST_CASE("parse(print(R)) == R") {
  testgen::Rng rng(99);
  for (int i = 0; i < 1000; ++i) {
    RatFuncT a = testgen::random_ratfunc_t(rng);
    std::string s = a.to_string();
    INFO(s);
    REQUIRE(parse_ratfunc_t(s) == a);
  }
}
