#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <optional>
#include <random>
#include <sstream>

#include "kolberg/assoc.hpp"
#include "kolberg/errors.hpp"
#include "kolberg/expr.hpp"
#include "kolberg/io.hpp"
#include "kolberg/numeric.hpp"
#include "kolberg/parallel.hpp"
#include "kolberg/quatuor.hpp"

namespace kolberg::cli {
namespace {

using io::json;

// Raised when a quatuor needed by a command cannot be extended far enough.
struct InfertileRange {
  FertilityReport report;
};

struct Options {
  bool json = false;
  unsigned threads = 1;
  long prec = 256;

  std::string dir, in, out_file;
  std::optional<long> N;
  std::string r0, range, levels, weights, g, family, inject;
  int level = 0;
  std::optional<int> gen_level;
  std::optional<std::string> r;
  std::string x, P = "1", tol = "1e-30";
  long a = 1;
  int trials = 200;
  unsigned long seed = 1;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

int to_int(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw InvalidArgument("malformed " + what + " '" + s + "'");
  return v;
}

std::pair<int, int> parse_range(const std::string& s) {
  auto parts = split(s, ':');
  if (parts.size() != 2) throw InvalidArgument("range must be A:B, got '" + s + "'");
  const int a = to_int(parts[0], "range"), b = to_int(parts[1], "range");
  if (a > b) throw InvalidArgument("empty range '" + s + "'");
  return {a, b};
}

// "0,1", "-2:1" or a mix such as "-2:0,3".
std::vector<int> parse_levels(const std::string& s) {
  std::vector<int> out;
  for (const auto& part : split(s, ',')) {
    if (part.find(':', 1) != std::string::npos) {
      auto [a, b] = parse_range(part);
      for (int k = a; k <= b; ++k) out.push_back(k);
    } else {
      out.push_back(to_int(part, "level"));
    }
  }
  if (out.empty()) throw InvalidArgument("no levels given");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// "k=lambda,k=lambda".
std::map<int, BigRational> parse_weights(const std::string& s) {
  std::map<int, BigRational> w;
  for (const auto& part : split(s, ',')) {
    auto eq = part.find('=');
    if (eq == std::string::npos) throw InvalidArgument("weight must be k=lambda, got '" + part + "'");
    w[to_int(part.substr(0, eq), "level")] = parse_rational_expr(part.substr(eq + 1));
  }
  if (w.empty()) throw InvalidArgument("no weights given");
  return w;
}

BigFloat parse_tol(const std::string& s) {
  BigFloat t = BigFloat::parse(s, 64);
  if (t.sign() <= 0) throw InvalidArgument("tolerance must be positive");
  return t;
}

// The quatuor from --in, or generated from --r0 so that it covers [lo, hi].
Quatuor obtain(const Options& o, int lo, int hi) {
  if (!o.in.empty() && !o.r0.empty()) throw InvalidArgument("give either --in or --r0, not both");
  if (!o.in.empty()) {
    Quatuor q = io::quatuor_from_json(io::load_json(o.in));
    for (int k = lo; k <= hi; ++k)
      if (!q.contains(k)) throw InvalidArgument("level " + std::to_string(k) + " is not stored in " + o.in);
    return q;
  }
  if (o.r0.empty()) throw InvalidArgument("one of --in or --r0 is required");
  const int gl = o.gen_level.value_or(lo);
  auto [q, rep] = generate_range(parse_ratfunc_t(o.r0), gl, std::min(lo, gl), std::max(hi, gl));
  if (!rep.fertile()) throw InfertileRange{rep};
  return q;
}

template <class K>
void print_sequence(std::ostream& out, const CoeffSeq<K>& s) {
  const char* name = s.kind == SeqKind::u ? "u" : "v";
  for (std::size_t n = 0; n < s.values.size(); ++n) out << name << '_' << n << " = " << s.values[n].to_string() << '\n';
}

void emit(std::ostream& out, const Options& o, const json& j, const std::string& human) {
  if (o.json)
    out << j.dump(2) << '\n';
  else
    out << human;
}

template <class K>
void emit_sequence(std::ostream& out, const Options& o, const CoeffSeq<K>& s) {
  std::ostringstream h;
  print_sequence(h, s);
  emit(out, o, io::sequence_to_json(s), h.str());
}

int cmd_assoc(const Options& o, std::ostream& out) {
  auto seq = io::sequence_from_json(io::load_json(o.in));
  return std::visit(
      [&](const auto& s) {
        const std::size_t order = o.N ? static_cast<std::size_t>(*o.N) : s.order();
        if (o.N && *o.N < 0) throw InvalidArgument("--N must be >= 0");
        if (o.dir == "fwd") {
          if (s.kind != SeqKind::u) throw InvalidArgument("--dir fwd expects a u-sequence");
          emit_sequence(out, o, to_associated(s, order));
        } else {
          if (s.kind != SeqKind::v) throw InvalidArgument("--dir inv expects a v-sequence");
          emit_sequence(out, o, from_associated(s, order));
        }
        return int(Exit::ok);
      },
      seq);
}

int cmd_gen(const Options& o, std::ostream& out, std::ostream& err) {
  auto [lo, hi] = parse_range(o.range);
  auto [q, rep] = generate_range(parse_ratfunc_t(o.r0), o.level, lo, hi);
  json j = io::quatuor_to_json(q);
  j["report"] = io::report_to_json(rep);
  if (!o.out_file.empty()) io::save_json(o.out_file, j);
  std::ostringstream h;
  for (int k = q.k_min(); k <= q.k_max(); ++k) h << "R_" << k << " = " << q.level(k).rational_part().to_string() << '\n';
  if (rep.fertile()) {
    h << "fertile on [" << lo << ", " << hi << "]\n";
  } else {
    h << "achieved [" << rep.achieved_min << ", " << rep.achieved_max << "] of [" << lo << ", " << hi << "]\n";
  }
  emit(out, o, j, h.str());
  if (!rep.fertile()) {
    err << "infertile: step up to level " << *rep.failure_level << " leaves the ad hoc class; (1-t)R = "
        << rep.failure_witness->to_string() << '\n';
    return Exit::infertile;
  }
  return Exit::ok;
}

int cmd_coeffs(const Options& o, std::ostream& out, bool h_series) {
  if (!o.N || *o.N < 0) throw InvalidArgument("--N must be given and >= 0");
  const auto order = static_cast<std::size_t>(*o.N);
  const Quatuor q = obtain(o, o.level, o.level);
  const AdHocFunction& f = q.level(o.level);
  if (!o.r) {
    emit_sequence(out, o, h_series ? h_coeffs(f, order) : g_coeffs(f, order));
  } else {
    const BigRational r = parse_rational_expr(*o.r);
    emit_sequence(out, o, h_series ? h_coeffs_at(f, r, order) : g_coeffs_at(f, r, order));
  }
  return Exit::ok;
}

int cmd_kolbergize(const Options& o, std::ostream& out) {
  const auto w = parse_weights(o.weights);
  const Quatuor q = obtain(o, w.begin()->first, w.rbegin()->first);
  const BigRational r = parse_rational_expr(*o.r);
  const KolbergizeResult res = kolbergize(q, w, r);
  json j;
  j["g"] = res.g.to_string();
  j["exponent"] = res.exponent.to_string();
  j["exceptional_set"] = json(std::vector<long>(res.exceptional.begin(), res.exceptional.end()));
  j["criterion_applies"] = res.criterion_applies;
  std::ostringstream h;
  h << "L = t^(" << res.exponent.to_string() << ") * g(t)\ng(t) = " << res.g.to_string() << "\nE = {";
  bool first = true;
  for (long n : res.exceptional) {
    h << (first ? "" : ", ") << n;
    first = false;
  }
  h << "}\ncriterion " << (res.criterion_applies ? "applies" : "does not apply: r lies in E") << '\n';
  emit(out, o, j, h.str());
  return Exit::ok;
}

int cmd_poles(const Options& o, std::ostream& out) {
  const auto levels = parse_levels(o.levels);
  const Quatuor q = obtain(o, levels.front(), levels.back());
  const PoleSet ps = pole_set(q, levels);
  json j;
  json poles = json::array(), dens = json::array();
  std::ostringstream h;
  h << "rational poles: {";
  bool first = true;
  // Listed in decreasing order, the way the sets are usually written.
  for (auto it = ps.rational_poles.rbegin(); it != ps.rational_poles.rend(); ++it) {
    poles.push_back(it->to_string());
    h << (first ? "" : ", ") << it->to_string();
    first = false;
  }
  h << "}\ndenominators:\n";
  for (const auto& d : ps.denominators) {
    dens.push_back(d.to_string());
    h << "  " << d.to_string() << '\n';
  }
  j["rational_poles"] = std::move(poles);
  j["denominators"] = std::move(dens);
  emit(out, o, j, h.str());
  return Exit::ok;
}

int cmd_eset(const Options& o, std::ostream& out) {
  const auto e = exceptional_set(parse_ratfunc_q_s(o.g));
  json j;
  j["exceptional_set"] = json(std::vector<long>(e.begin(), e.end()));
  std::ostringstream h;
  h << "E = {";
  bool first = true;
  for (long n : e) {
    h << (first ? "" : ", ") << n;
    first = false;
  }
  h << "}\n";
  emit(out, o, j, h.str());
  return Exit::ok;
}

int cmd_eval(const Options& o, std::ostream& out) {
  SeriesSpec s;
  s.family = o.family == "kolberg" ? Family::kolberg : o.family == "sharp" ? Family::sharp : Family::example0;
  s.a = o.a;
  s.r = parse_rational_expr(o.r.value_or("0"));
  s.P = parse_poly_n(o.P);
  if (o.x.empty()) throw InvalidArgument("--x is required");
  s.x = parse_rational_expr(o.x);
  const EvalResult res = eval_theorem_series(s, o.prec, parse_tol(o.tol));
  const json j = io::result_to_json(res);
  std::ostringstream h;
  h << "value       = " << j["value"].get<std::string>() << '\n'
    << "error_bound = " << j["error_bound"].get<std::string>() << '\n'
    << "terms       = " << res.terms_used << '\n'
    << "precision   = " << res.precision_bits << " bits\n";
  emit(out, o, j, h.str());
  return Exit::ok;
}

int cmd_verify_identity(const Options& o, std::ostream& out) {
  const Quatuor q = obtain(o, o.level, o.level);
  if (o.x.empty()) throw InvalidArgument("--x is required");
  std::optional<CoeffPerturbation> perturb;
  if (!o.inject.empty()) {
    auto colon = o.inject.find(':');
    if (colon == std::string::npos) throw InvalidArgument("--inject must be n:delta");
    const int n = to_int(o.inject.substr(0, colon), "coefficient index");
    if (n < 0) throw InvalidArgument("--inject index must be >= 0");
    perturb = CoeffPerturbation{static_cast<std::size_t>(n), parse_rational_expr(o.inject.substr(colon + 1))};
  }
  const IdentityCheck c = check_identity(q.level(o.level), parse_rational_expr(*o.r), parse_rational_expr(o.x),
                                         parse_tol(o.tol), o.prec, perturb);
  json j;
  j["pass"] = c.pass;
  j["residual"] = io::format_bound(c.residual);
  j["allowance"] = io::format_bound(c.allowance);
  j["K"] = io::format_value(c.K, o.prec);
  j["F"] = io::format_value(c.F, o.prec);
  j["terms"] = c.terms_used;
  j["modulus_convention"] = c.modulus_convention;
  std::ostringstream h;
  h << (c.pass ? "PASS" : "FAIL") << " residual " << io::format_bound(c.residual) << (c.pass ? " <= " : " > ")
    << "allowance " << io::format_bound(c.allowance) << '\n'
    << "K = " << io::format_value(c.K, o.prec) << '\n'
    << "F = " << io::format_value(c.F, o.prec) << '\n'
    << "terms = " << c.terms_used << (c.modulus_convention ? " (moduli compared: x, t < 0)" : "") << '\n';
  emit(out, o, j, h.str());
  return c.pass ? Exit::ok : Exit::verification_failed;
}

int cmd_verify_table(const Options& o, std::ostream& out) {
  const long N = o.N.value_or(7);
  if (N < 0) throw InvalidArgument("--N must be >= 0");
  const auto u = h_coeffs(AdHocFunction(sharp_generator()), static_cast<std::size_t>(N));
  bool pass = true;
  json rows = json::array();
  std::ostringstream h;
  for (long n = 0; n <= N; ++n) {
    const RatFuncY& got = u.values[static_cast<std::size_t>(n)];
    const bool ok = got == sharp_un_closed(static_cast<int>(n));
    pass = pass && ok;
    rows.push_back({{"n", n}, {"u", got.to_string()}, {"matches_closed_form", ok}});
    h << "u_" << n << " = " << got.to_string() << (ok ? "" : "   MISMATCH") << '\n';
  }
  h << (pass ? "PASS" : "FAIL") << ": u_n = (y+2)(y^2+2ny+2n^2-n)(y+n)^(n-3) for n <= " << N << '\n';
  json j;
  j["pass"] = pass;
  j["rows"] = std::move(rows);
  emit(out, o, j, h.str());
  return pass ? Exit::ok : Exit::verification_failed;
}

template <class K>
bool roundtrip_ok(const CoeffSeq<K>& s) {
  const std::size_t N = s.order();
  if (s.kind == SeqKind::u) {
    auto v = to_associated(s, N);
    return from_associated(v, N) == s && compose_oracle(s, N) == v;
  }
  auto u = from_associated(s, N);
  return to_associated(u, N) == s;
}

int cmd_verify_roundtrip(const Options& o, std::ostream& out) {
  int passed = 0, total = 0;
  if (!o.in.empty()) {
    auto seq = io::sequence_from_json(io::load_json(o.in));
    total = 1;
    passed = std::visit([](const auto& s) { return roundtrip_ok(s) ? 1 : 0; }, seq);
  } else {
    const long maxN = o.N.value_or(60);
    if (maxN < 1 || o.trials < 1) throw InvalidArgument("--N and --trials must be positive");
    std::mt19937_64 rng(o.seed);
    std::uniform_int_distribution<long> len(1, maxN), num(-50, 50), den(1, 12);
    for (int i = 0; i < o.trials; ++i) {
      CoeffSeq<BigRational> s{SeqKind::u, std::vector<BigRational>(static_cast<std::size_t>(len(rng)) + 1)};
      for (auto& c : s.values) c = BigRational(BigInt(num(rng)), BigInt(den(rng)));
      // The oracle is quadratic in N per coefficient; it is only run on short sequences.
      auto v = to_associated(s, s.order());
      bool ok = from_associated(v, s.order()) == s;
      if (ok && s.order() <= 25) ok = compose_oracle(s, s.order()) == v;
      passed += ok ? 1 : 0;
      ++total;
    }
  }
  const bool pass = passed == total;
  json j;
  j["pass"] = pass;
  j["passed"] = passed;
  j["total"] = total;
  std::ostringstream h;
  h << (pass ? "PASS" : "FAIL") << ": " << passed << "/" << total << " sequences survive the roundtrip\n";
  emit(out, o, j, h.str());
  return pass ? Exit::ok : Exit::verification_failed;
}

void add_source_options(CLI::App* c, Options& o) {
  c->add_option("--in", o.in, "Quatuor JSON file");
  c->add_option("--r0", o.r0, "Generator R(t,y) as an expression");
  c->add_option("--gen-level", o.gen_level, "Level of --r0 (defaults to the requested level)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Fertile quatuors: exact coefficient transforms, quatuor construction and certified evaluation",
               "kolberg"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_flag("--json", o.json, "JSON output");
  app.add_option("--threads", o.threads, "Worker threads for term computation")->check(CLI::Range(1u, 256u));
  app.add_option("--prec", o.prec, "Working precision in bits (>= 64)");

  auto* assoc = app.add_subcommand("assoc", "u <-> v coefficient transforms");
  assoc->add_option("--dir", o.dir, "fwd: u -> v, inv: v -> u")->required()->check(CLI::IsMember({"fwd", "inv"}));
  assoc->add_option("--in", o.in, "Sequence JSON file")->required();
  assoc->add_option("--N", o.N, "Order (defaults to the input length)");

  auto* quatuor = app.add_subcommand("quatuor", "Quatuor construction and coefficients");
  quatuor->require_subcommand(1);
  auto* gen = quatuor->add_subcommand("gen", "Generate levels from a generator");
  gen->add_option("--r0", o.r0, "Generator R(t,y)")->required();
  gen->add_option("--level", o.level, "Level of the generator")->required();
  gen->add_option("--range", o.range, "Level range A:B")->required();
  gen->add_option("--out", o.out_file, "Write the quatuor file here");
  auto* hco = quatuor->add_subcommand("hcoeffs", "u_n of H_k");
  auto* gco = quatuor->add_subcommand("gcoeffs", "v_n of G_k");
  for (auto* c : {hco, gco}) {
    add_source_options(c, o);
    c->add_option("--level", o.level, "Level k")->required();
    c->add_option("--N", o.N, "Order")->required();
    c->add_option("--r", o.r, "Specialize y = r (rational); symbolic y when absent");
  }
  auto* kolb = quatuor->add_subcommand("kolbergize", "Specialize sum A_k F_k at y = r to t^r g(t)");
  add_source_options(kolb, o);
  kolb->add_option("--weights", o.weights, "k=A_k,...")->required();
  kolb->add_option("--r", o.r, "Rational r")->required();

  auto* poles = app.add_subcommand("poles", "Pole set of a level range");
  add_source_options(poles, o);
  poles->add_option("--levels", o.levels, "Levels: list and/or ranges, e.g. 0,1 or -2:1")->required();

  auto* eset = app.add_subcommand("eset", "Exceptional set of g(s)");
  eset->add_option("--g", o.g, "Rational function in s")->required();

  auto* eval = app.add_subcommand("eval", "Theorem series with a rigorous error bound");
  eval->add_option("family", o.family, "kolberg | sharp | example0")
      ->required()
      ->check(CLI::IsMember({"kolberg", "sharp", "example0"}));
  eval->add_option("--a", o.a, "Integer a");
  eval->add_option("--r", o.r, "Rational r (default 0)");
  eval->add_option("--P", o.P, "Polynomial P(n)");
  eval->add_option("--x", o.x, "Rational x with 0 < |x| < 1/e")->required();
  eval->add_option("--prec", o.prec, "Precision in bits");
  eval->add_option("--tol", o.tol, "Target tolerance");

  auto* verify = app.add_subcommand("verify", "Verification suites");
  verify->require_subcommand(1);
  auto* vid = verify->add_subcommand("identity", "Certificate K_k(x,r) = F_k(t,r)");
  add_source_options(vid, o);
  vid->add_option("--level", o.level, "Level k")->required();
  vid->add_option("--r", o.r, "Rational r")->required();
  vid->add_option("--x", o.x, "Rational x")->required();
  vid->add_option("--tol", o.tol, "Tolerance");
  vid->add_option("--prec", o.prec, "Precision in bits");
  vid->add_option("--inject", o.inject, "Fault injection n:delta on u_n");
  auto* vtab = verify->add_subcommand("table", "Sharp generator coefficients against the closed form");
  vtab->add_option("--N", o.N, "Largest n (default 7)");
  auto* vrt = verify->add_subcommand("roundtrip", "Transform roundtrip on a file or random sequences");
  vrt->add_option("--in", o.in, "Sequence JSON file");
  vrt->add_option("--N", o.N, "Largest order for random sequences (default 60)");
  vrt->add_option("--trials", o.trials, "Random sequences (default 200)");
  vrt->add_option("--seed", o.seed, "Random seed");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? Exit::ok : Exit::usage;
  }
  try {
    set_thread_count(o.threads);
    if (assoc->parsed()) return cmd_assoc(o, out);
    if (gen->parsed()) return cmd_gen(o, out, err);
    if (hco->parsed()) return cmd_coeffs(o, out, true);
    if (gco->parsed()) return cmd_coeffs(o, out, false);
    if (kolb->parsed()) return cmd_kolbergize(o, out);
    if (poles->parsed()) return cmd_poles(o, out);
    if (eset->parsed()) return cmd_eset(o, out);
    if (eval->parsed()) return cmd_eval(o, out);
    if (vid->parsed()) return cmd_verify_identity(o, out);
    if (vtab->parsed()) return cmd_verify_table(o, out);
    if (vrt->parsed()) return cmd_verify_roundtrip(o, out);
    err << app.help();
    return Exit::usage;
  } catch (const InfertileRange& e) {
    err << "infertile: step up to level " << *e.report.failure_level << " leaves the ad hoc class; (1-t)R = "
        << e.report.failure_witness->to_string() << '\n';
    return Exit::infertile;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return Exit::usage;
  } catch (const InvalidArgument& e) {
    err << "invalid argument: " << e.what() << '\n';
    return Exit::usage;
  } catch (const VerificationError& e) {
    err << "verification failed: " << e.what() << '\n';
    return Exit::verification_failed;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return Exit::domain;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return Exit::domain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return Exit::verification_failed;
  }
}

}  // namespace kolberg::cli
