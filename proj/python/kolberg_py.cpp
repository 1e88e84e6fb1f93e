#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.hpp"
#include "kolberg/assoc.hpp"
#include "kolberg/errors.hpp"
#include "kolberg/expr.hpp"
#include "kolberg/io.hpp"
#include "kolberg/numeric.hpp"
#include "kolberg/quatuor.hpp"

namespace py = pybind11;
using namespace kolberg;

namespace {

std::vector<std::string> strings(const CoeffSeq<RatFuncY>& s) {
  std::vector<std::string> out;
  for (const auto& c : s.values) out.push_back(c.to_string());
  return out;
}

CoeffSeq<RatFuncY> sequence(SeqKind kind, const std::vector<std::string>& terms) {
  if (terms.empty()) throw InvalidArgument("empty sequence");
  CoeffSeq<RatFuncY> s{kind, {}};
  for (const auto& t : terms) s.values.push_back(parse_ratfunc_y(t));
  return s;
}

Quatuor quatuor(const std::string& generator, int generator_level, int lo, int hi) {
  auto [q, rep] = generate_range(parse_ratfunc_t(generator), generator_level, std::min(lo, generator_level),
                                 std::max(hi, generator_level));
  if (!rep.fertile() && *rep.failure_level <= hi)
    throw DomainError("generator is infertile at level " + std::to_string(*rep.failure_level));
  return q;
}

Family family(const std::string& name) {
  if (name == "kolberg") return Family::kolberg;
  if (name == "sharp") return Family::sharp;
  if (name == "example0") return Family::example0;
  throw InvalidArgument("unknown family " + name);
}

}  // namespace

PYBIND11_MODULE(kolberg, m) {
  m.doc() = "Quatuors of ad hoc functions and certified tree-function series. Expressions are passed as strings.";

  py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", m.attr("Error"));
  py::register_exception<InvalidArgument>(m, "InvalidArgument", m.attr("Error"));
  py::register_exception<DomainError>(m, "DomainError", m.attr("Error"));
  py::register_exception<VerificationError>(m, "VerificationError", m.attr("Error"));
  py::register_exception<NumericError>(m, "NumericError", m.attr("Error"));

  m.def(
      "to_associated", [](const std::vector<std::string>& u) {
        auto s = sequence(SeqKind::u, u);
        return strings(to_associated(s, s.order()));
      },
      py::arg("u"), "v_0..v_N from u_0..u_N, over Q(y).");
  m.def(
      "from_associated", [](const std::vector<std::string>& v) {
        auto s = sequence(SeqKind::v, v);
        return strings(from_associated(s, s.order()));
      },
      py::arg("v"));

  m.def(
      "step_up", [](const std::string& r) -> std::optional<std::string> {
        auto up = step_up(AdHocFunction(parse_ratfunc_t(r)));
        if (auto* f = std::get_if<AdHocFunction>(&up)) return f->rational_part().to_string();
        return std::nullopt;
      },
      py::arg("r"), "Rational part of the next level, or None when infertile.");
  m.def(
      "step_down", [](const std::string& r) { return step_down(AdHocFunction(parse_ratfunc_t(r))).rational_part().to_string(); },
      py::arg("r"));

  m.def(
      "levels", [](const std::string& generator, int generator_level, int lo, int hi) {
        const Quatuor q = quatuor(generator, generator_level, lo, hi);
        std::map<int, std::string> out;
        for (int k = lo; k <= hi; ++k) out[k] = q.level(k).rational_part().to_string();
        return out;
      },
      py::arg("generator"), py::arg("generator_level"), py::arg("lo"), py::arg("hi"));
  m.def(
      "h_coeffs", [](const std::string& generator, int generator_level, int level, std::size_t n) {
        return strings(h_coeffs(quatuor(generator, generator_level, level, level).level(level), n));
      },
      py::arg("generator"), py::arg("generator_level"), py::arg("level"), py::arg("n"));
  m.def(
      "g_coeffs", [](const std::string& generator, int generator_level, int level, std::size_t n) {
        return strings(g_coeffs(quatuor(generator, generator_level, level, level).level(level), n));
      },
      py::arg("generator"), py::arg("generator_level"), py::arg("level"), py::arg("n"));

  m.def(
      "pole_set", [](const std::string& generator, int generator_level, const std::vector<int>& levels) {
        if (levels.empty()) throw InvalidArgument("no levels");
        const auto [lo, hi] = std::minmax_element(levels.begin(), levels.end());
        std::vector<std::string> out;
        for (const auto& p : pole_set(quatuor(generator, generator_level, *lo, *hi), levels).rational_poles)
          out.push_back(p.to_string());
        return out;
      },
      py::arg("generator"), py::arg("generator_level"), py::arg("levels"));
  m.def(
      "exceptional_set", [](const std::string& g) { return exceptional_set(parse_ratfunc_q_s(g)); }, py::arg("g"));

  m.def(
      "invert_xt", [](const std::string& x, long prec) { return io::format_value(invert_xt(parse_rational_expr(x), prec), prec); },
      py::arg("x"), py::arg("prec") = 256, "Root t of t e^(-t) = x on the principal branch.");

  m.def(
      "eval_series",
      [](const std::string& name, int a, const std::string& r, const std::string& P, const std::string& x, long prec,
         const std::string& tol) {
        SeriesSpec s;
        s.family = family(name);
        s.a = a;
        s.r = parse_rational_expr(r);
        s.P = parse_poly_n(P);
        s.x = parse_rational_expr(x);
        const auto res = eval_theorem_series(s, prec, BigFloat::parse(tol, prec));
        return py::dict(py::arg("value") = io::format_value(res.value, prec),
                        py::arg("error_bound") = io::format_bound(res.error_bound), py::arg("terms") = res.terms_used,
                        py::arg("precision_bits") = res.precision_bits);
      },
      py::arg("family"), py::arg("a") = 1, py::arg("r") = "0", py::arg("P") = "1", py::arg("x"), py::arg("prec") = 256,
      py::arg("tol") = "1e-30");

  m.def(
      "check_identity",
      [](const std::string& generator, int generator_level, int level, const std::string& r, const std::string& x,
         const std::string& tol, long prec) {
        const auto c = check_identity(quatuor(generator, generator_level, level, level).level(level),
                                      parse_rational_expr(r), parse_rational_expr(x), BigFloat::parse(tol, prec), prec);
        return py::dict(py::arg("pass") = c.pass, py::arg("residual") = io::format_bound(c.residual),
                        py::arg("allowance") = io::format_bound(c.allowance), py::arg("terms") = c.terms_used);
      },
      py::arg("generator"), py::arg("generator_level"), py::arg("level"), py::arg("r"), py::arg("x"),
      py::arg("tol") = "1e-30", py::arg("prec") = 256);

  m.def(
      "cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line tool in-process: returns (exit_code, stdout, stderr).");
}
