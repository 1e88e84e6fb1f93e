// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "kolberg/assoc.hpp"
#include "kolberg/errors.hpp"
#include "kolberg/expr.hpp"
#include "kolberg/numeric.hpp"
#include "kolberg/quatuor.hpp"

using namespace kolberg;

namespace {

// Pinned tolerances and limits.
constexpr long kPrecision = 256;
const char* const kTreeTol = "1e-40";
const char* const kIdentityTol = "1e-30";
const char* const kConsistencyTol = "1e-30";
constexpr double kTableSeconds = 1.0;
constexpr double kClosedFormSeconds = 30.0;
constexpr double kTreeSeconds = 5.0;

struct Verdict {
  bool pass;
  std::string detail;
};

BigFloat tol(const char* s) { return BigFloat::parse(s, kPrecision); }

RatFuncY Y(const char* s) { return parse_ratfunc_y(s); }

BigRational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> n(-40, 40), d(1, 9);
  return BigRational(BigInt(n(rng)), BigInt(d(rng)));
}

RatFuncY random_ratfunc_y(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> deg(0, 2);
  auto poly = [&] {
    std::vector<BigRational> c(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& x : c) x = random_rational(rng);
    return PolyY(std::move(c));
  };
  PolyY den = poly();
  if (den.is_zero()) den = PolyY(BigRational(1));
  return RatFuncY(poly(), den);
}

std::pair<Quatuor, FertilityReport> sharp_range(int lo, int hi) { return generate_range(sharp_generator(), 0, lo, hi); }
std::pair<Quatuor, FertilityReport> kolberg_range(int lo, int hi) {
  return generate_range(kolberg_generator(), kolberg_generator_level, lo, hi);
}

// 1. Sharp table u_0..u_7 in factored form.
Verdict table_reproduction() {
  const std::vector<RatFuncY> printed{
      Y("(y+2)/y"),
      Y("y+2"),
      Y("y^2 + 4*y + 6"),
      Y("(y+2)*(y^2 + 6*y + 15)"),
      Y("(y+2)*(y^2 + 8*y + 28)*(y+4)"),
      Y("(y+2)*(y^2 + 10*y + 45)*(y+5)^2"),
      Y("(y+2)*(y^2 + 12*y + 66)*(y+6)^3"),
      Y("(y+2)*(y^2 + 14*y + 91)*(y+7)^4"),
  };
  const auto t0 = std::chrono::steady_clock::now();
  const auto u = h_coeffs(AdHocFunction(sharp_generator()), 7);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  int bad = -1;
  for (std::size_t n = 0; n < printed.size() && bad < 0; ++n)
    if (!(u.values[n] == printed[n])) bad = static_cast<int>(n);
  if (bad >= 0) return {false, "u_" + std::to_string(bad) + " differs from the table"};
  return {secs < kTableSeconds, "u_0..u_7 exact, " + std::to_string(secs) + " s"};
}

// 2. Closed form for n <= 40.
Verdict closed_form() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto u = h_coeffs(AdHocFunction(sharp_generator()), 40);
  for (int n = 0; n <= 40; ++n)
    if (!(u.values[static_cast<std::size_t>(n)] == sharp_un_closed(n))) return {false, "mismatch at n = " + std::to_string(n)};
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {secs < kClosedFormSeconds, "n <= 40 exact, " + std::to_string(secs) + " s"};
}

// The transform with (-n)^(n-m) in place of (-m)^(n-m).
CoeffSeq<BigRational> uncorrected(const CoeffSeq<BigRational>& u, std::size_t N) {
  CoeffSeq<BigRational> v{SeqKind::v, std::vector<BigRational>(N + 1)};
  v.values[0] = u.values[0];
  for (unsigned long n = 1; n <= N; ++n)
    for (unsigned long m = 1; m <= n; ++m)
      v.values[n] += u.values[m] * BigRational(binomial(n, m)) * BigRational(-static_cast<long>(n)).pow(static_cast<long>(n - m));
  return v;
}

// 3. Exponent base: (-n) breaks the roundtrip, (-m) keeps it.
Verdict exponent_base() {
  const CoeffSeq<BigRational> probe{SeqKind::u, {0, 1, 1, 0, 0}};
  int first_failure = -1;
  for (std::size_t N = 1; N <= 4 && first_failure < 0; ++N) {
    auto back = from_associated(uncorrected(probe, N), N);
    if (!std::equal(back.values.begin(), back.values.end(), probe.values.begin())) first_failure = static_cast<int>(N);
  }
  if (first_failure < 0) return {false, "uncorrected transform survived the roundtrip for N <= 4"};
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> len(1, 60);
  for (int trial = 0; trial < 200; ++trial) {
    CoeffSeq<BigRational> u{SeqKind::u, std::vector<BigRational>(len(rng) + 1)};
    for (auto& c : u.values) c = random_rational(rng);
    if (!(from_associated(to_associated(u, u.order()), u.order()) == u))
      return {false, "corrected roundtrip failed on trial " + std::to_string(trial)};
  }
  return {true, "uncorrected fails at N = " + std::to_string(first_failure) + "; corrected: 200/200 roundtrips, N <= 60"};
}

// 4. Oracle equivalence over Q(y).
Verdict oracle_equivalence() {
  std::mt19937_64 rng(77);
  std::vector<CoeffSeq<RatFuncY>> cases;
  cases.push_back(h_coeffs(AdHocFunction(sharp_generator()), 25));
  for (int i = 0; i < 10; ++i) {
    CoeffSeq<RatFuncY> u{SeqKind::u, std::vector<RatFuncY>(26)};
    for (auto& c : u.values) c = random_ratfunc_y(rng);
    cases.push_back(std::move(u));
  }
  for (std::size_t i = 0; i < cases.size(); ++i)
    if (!(to_associated(cases[i], 25) == compose_oracle(cases[i], 25)))
      return {false, "sequence " + std::to_string(i) + " differs"};
  return {true, std::to_string(cases.size()) + " sequences over Q(y), N = 25"};
}

bool level_relation(const Quatuor& q, int lo, int hi, std::size_t N, std::string& where) {
  for (int k = lo; k <= hi; ++k) {
    const auto a = h_coeffs(q.level(k), N), b = h_coeffs(q.level(k + 1), N);
    for (std::size_t n = 0; n <= N; ++n) {
      if (!(a.values[n] == RatFuncY(PolyY(std::vector<BigRational>{BigRational(static_cast<long>(n)), 1})) * b.values[n])) {
        where = "k = " + std::to_string(k) + ", n = " + std::to_string(n);
        return false;
      }
    }
  }
  return true;
}

// 5. u^(k)_n = (y+n) u^(k+1)_n.
Verdict level_relations() {
  auto [sq, srep] = sharp_range(-2, 3);
  auto [kq, krep] = kolberg_range(-1, 3);
  if (!srep.fertile() || !krep.fertile()) return {false, "a quatuor range is not fertile"};
  std::string where;
  if (!level_relation(sq, -2, 2, 25, where)) return {false, "sharp: " + where};
  if (!level_relation(kq, -1, 2, 25, where)) return {false, "Kolberg: " + where};
  for (int n = 0; n <= 25; ++n)
    for (int k = -1; k <= 3; ++k)
      if (!(h_coeffs(kq.level(k), 25).values[static_cast<std::size_t>(n)] == kolberg_h_closed(k, n)))
        return {false, "Kolberg closed form at k = " + std::to_string(k)};
  return {true, "sharp k in [-2,2], Kolberg k in [-1,2], n <= 25"};
}

// 6. step_down(step_up(F)) = F on every fertile step; 1/(t-2) is infertile at once.
Verdict fertility_roundtrip() {
  std::vector<AdHocFunction> starts;
  {
    auto [q, rep] = sharp_range(-2, 3);
    for (const auto& f : q.levels()) starts.push_back(f);
  }
  {
    auto [q, rep] = kolberg_range(-1, 3);
    for (const auto& f : q.levels()) starts.push_back(f);
  }
  for (const char* s : {"1", "t", "1/(1-t)", "y/(1-t)^2", "(t+y)/(t-3)^2", "t^3/(1-t)"})
    starts.emplace_back(parse_ratfunc_t(s));
  int fertile = 0, infertile = 0;
  for (const auto& f : starts) {
    auto up = step_up(f);
    if (auto* g = std::get_if<AdHocFunction>(&up)) {
      if (!(step_down(*g) == f)) return {false, "roundtrip broke on " + f.to_string()};
      ++fertile;
    } else {
      ++infertile;
    }
  }
  auto [q, rep] = generate_range(parse_ratfunc_t("1/(t-2)"), 0, 0, 1);
  if (rep.fertile() || rep.failure_level != 1) return {false, "1/(t-2) was not reported infertile at level 1"};
  return {true, std::to_string(fertile) + " fertile steps round-trip (" + std::to_string(infertile) +
                    " infertile); 1/(t-2) fails at level 1"};
}

// 7. Tree-function certificate.
Verdict tree_certificate() {
  const auto t0 = std::chrono::steady_clock::now();
  SeriesSpec s;
  s.family = Family::kolberg;
  s.a = 1;
  s.r = BigRational(0);
  s.x = BigRational(1, 10);
  const EvalResult res = eval_theorem_series(s, kPrecision, tol(kTreeTol));
  const BigFloat t = invert_xt(s.x, kPrecision);
  const BigFloat diff = (res.value - t).abs();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool pass = diff < tol(kTreeTol) && res.error_bound < tol(kTreeTol) && secs < kTreeSeconds;
  return {pass, "|S - t| = " + diff.to_string(3) + ", bound " + res.error_bound.to_string(3) + ", " +
                    std::to_string(secs) + " s"};
}

// 8. Identity certificates plus fault injection.
Verdict identity_certificates() {
  auto [sq, srep] = sharp_range(-2, 3);
  auto [kq, krep] = kolberg_range(0, 2);
  if (!srep.fertile() || !krep.fertile()) return {false, "a quatuor range is not fertile"};
  std::vector<std::pair<std::string, AdHocFunction>> levels;
  for (int k = -2; k <= 3; ++k) levels.emplace_back("sharp " + std::to_string(k), sq.level(k));
  for (int k = 0; k <= 2; ++k) levels.emplace_back("Kolberg " + std::to_string(k), kq.level(k));
  const std::vector<BigRational> rs{BigRational(1, 3), BigRational(1, 2), BigRational(2)};
  const std::vector<BigRational> xs{BigRational(1, 10), BigRational(1, 5), BigRational(-1, 5)};
  int passed = 0;
  BigFloat worst(kPrecision);
  for (const auto& [name, f] : levels)
    for (const auto& r : rs)
      for (const auto& x : xs) {
        const IdentityCheck c = check_identity(f, r, x, tol(kIdentityTol), kPrecision);
        if (!c.pass)
          return {false, name + ", r = " + r.to_string() + ", x = " + x.to_string() + ": residual " +
                             c.residual.to_string(3)};
        if (worst < c.residual) worst = c.residual;
        ++passed;
      }
  const IdentityCheck bad = check_identity(sq.level(0), BigRational(1, 2), BigRational(1, 5), tol(kIdentityTol),
                                           kPrecision, CoeffPerturbation{3, BigRational(1)});
  if (bad.pass) return {false, "fault-injected u_3 was not detected"};
  return {true, std::to_string(passed) + " certificates, worst residual " + worst.to_string(3) +
                    "; corrupted u_3 fails with residual " + bad.residual.to_string(3)};
}

// 9. Sharp theorem series against the closed form.
Verdict sharp_consistency() {
  SeriesSpec s;
  s.family = Family::sharp;
  s.a = 3;
  s.r = BigRational(1);
  s.x = BigRational(1, 10);
  const EvalResult res = eval_theorem_series(s, kPrecision, tol(kConsistencyTol));
  const BigFloat t = invert_xt(s.x, kPrecision);
  const BigFloat closed =
      eval_F_closed(sharp_generator(), s.r, t, kPrecision) / BigFloat(s.x, kPrecision) / BigFloat(3, kPrecision);
  const BigFloat diff = (res.value - closed).abs();
  return {diff < tol(kConsistencyTol), "|S - F_0(t,1)/(3x)| = " + diff.to_string(3)};
}

// 10. example0 against F_{-2}(t,0) - F_{-1}(t,0) of the Kolberg quatuor.
Verdict example_consistency() {
  SeriesSpec s;
  s.family = Family::example0;
  s.a = 1;
  s.x = BigRational(1, 10);
  const EvalResult res = eval_theorem_series(s, kPrecision, tol(kConsistencyTol));
  auto [kq, rep] = kolberg_range(-2, 1);
  const BigFloat t = invert_xt(s.x, kPrecision);
  const BigFloat f2 = eval_F_closed(kq.level(-2).rational_part(), BigRational(0), t, kPrecision);
  const BigFloat f1 = eval_F_closed(kq.level(-1).rational_part(), BigRational(0), t, kPrecision);
  const BigFloat diff = (res.value - (f2 - f1)).abs();
  return {diff < tol(kConsistencyTol), "|S - (f_-2 - f_-1)| = " + diff.to_string(3)};
}

// 11. Exceptional sets and the sharp pole set.
Verdict set_computations() {
  const bool e1 = exceptional_set(parse_ratfunc_q_s("5*s^3")) == std::set<long>{-3};
  const bool e2 = exceptional_set(parse_ratfunc_q_s("1+s")).empty();
  const bool e3 = exceptional_set(parse_ratfunc_q_s("7")) == std::set<long>{0};
  auto [sq, rep] = sharp_range(0, 1);
  const auto ps = pole_set(sq, {0, 1});
  const std::set<BigRational> expect{BigRational(0), BigRational(-1), BigRational(-2), BigRational(-3)};
  const bool poles = ps.rational_poles == expect;
  return {e1 && e2 && e3 && poles, std::string("E triple ") + (e1 && e2 && e3 ? "ok" : "wrong") + ", Y({0,1}) " +
                                       (poles ? "= {0, -1, -2, -3}" : "wrong")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"table reproduction", table_reproduction},
      {"closed-form match", closed_form},
      {"exponent-base pin", exponent_base},
      {"oracle equivalence", oracle_equivalence},
      {"level relation", level_relations},
      {"fertility roundtrip", fertility_roundtrip},
      {"tree-function certificate", tree_certificate},
      {"identity certificates", identity_certificates},
      {"sharp theorem consistency", sharp_consistency},
      {"example consistency", example_consistency},
      {"set computations", set_computations},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v{false, ""};
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    failures += v.pass ? 0 : 1;
    std::printf("[%s] %2zu %-26s %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failures), criteria.size());
  return failures == 0 ? 0 : 1;
}
