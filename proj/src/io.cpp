#include "kolberg/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "kolberg/errors.hpp"
#include "kolberg/expr.hpp"

namespace kolberg::io {
namespace {

const json& member(const json& doc, const char* key) {
  if (!doc.is_object()) throw ParseError("expected a JSON object", 0);
  auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(std::string("missing key '") + key + "'", 0);
  return *it;
}

std::string string_member(const json& doc, const char* key) {
  const json& v = member(doc, key);
  if (!v.is_string()) throw ParseError(std::string("key '") + key + "' must be a string", 0);
  return v.get<std::string>();
}

// Expressions may also be given as bare JSON integers.
std::string expr_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw ParseError("coefficient must be an expression string", 0);
}

const char* kind_name(SeqKind k) { return k == SeqKind::u ? "u" : "v"; }

template <class K>
json seq_json(const CoeffSeq<K>& s, const char* ring) {
  json out;
  out["ring"] = ring;
  out["kind"] = kind_name(s.kind);
  json coeffs = json::array();
  for (const auto& c : s.values) coeffs.push_back(c.to_string());
  out["coeffs"] = std::move(coeffs);
  return out;
}

}  // namespace

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte > 0 ? e.byte - 1 : 0);
  }
}

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str());
}

void save_json(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write '" + path.string() + "'");
  out << doc.dump(2) << '\n';
}

AnySequence sequence_from_json(const json& doc) {
  const std::string ring = string_member(doc, "ring");
  const std::string kind = string_member(doc, "kind");
  if (kind != "u" && kind != "v") throw ParseError("kind must be \"u\" or \"v\"", 0);
  const SeqKind k = kind == "u" ? SeqKind::u : SeqKind::v;
  const json& coeffs = member(doc, "coeffs");
  if (!coeffs.is_array() || coeffs.empty()) throw ParseError("coeffs must be a non-empty array", 0);
  if (ring == "Q") {
    CoeffSeq<BigRational> s{k, {}};
    for (const auto& c : coeffs) s.values.push_back(parse_rational_expr(expr_text(c)));
    return s;
  }
  if (ring == "Q(y)") {
    CoeffSeq<RatFuncY> s{k, {}};
    for (const auto& c : coeffs) s.values.push_back(parse_ratfunc_y(expr_text(c)));
    return s;
  }
  throw ParseError("ring must be \"Q\" or \"Q(y)\"", 0);
}

json sequence_to_json(const CoeffSeq<BigRational>& s) { return seq_json(s, "Q"); }
json sequence_to_json(const CoeffSeq<RatFuncY>& s) { return seq_json(s, "Q(y)"); }
json sequence_to_json(const AnySequence& s) {
  return std::visit([](const auto& v) { return sequence_to_json(v); }, s);
}

Quatuor quatuor_from_json(const json& doc) {
  const RatFuncT generator = parse_ratfunc_t(expr_text(member(doc, "generator")));
  const json& gl = member(doc, "generator_level");
  if (!gl.is_number_integer()) throw ParseError("generator_level must be an integer", 0);
  const int gen_level = gl.get<int>();

  std::map<int, RatFuncT> given;
  if (doc.contains("levels")) {
    const json& levels = doc["levels"];
    if (!levels.is_object()) throw ParseError("levels must be an object", 0);
    for (auto it = levels.begin(); it != levels.end(); ++it) {
      std::size_t used = 0;
      int k = 0;
      try {
        k = std::stoi(it.key(), &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != it.key().size()) throw ParseError("level key '" + it.key() + "' is not an integer", 0);
      given.emplace(k, parse_ratfunc_t(expr_text(it.value())));
    }
  }
  if (given.empty()) given.emplace(gen_level, generator);
  auto at = given.find(gen_level);
  if (at == given.end()) throw InvalidArgument("levels do not include the generator level");
  if (!(at->second == generator)) throw VerificationError("stored level " + std::to_string(gen_level) +
                                                          " differs from the generator");
  const int lo = given.begin()->first;
  std::vector<AdHocFunction> levels;
  int expect = lo;
  for (auto& [k, r] : given) {
    if (k != expect) throw InvalidArgument("levels must form a contiguous range");
    levels.emplace_back(r);
    ++expect;
  }
  return Quatuor(lo, gen_level, std::move(levels));
}

json quatuor_to_json(const Quatuor& q) {
  json out;
  out["generator"] = q.level(q.generator_level()).rational_part().to_string();
  out["generator_level"] = q.generator_level();
  json levels = json::object();
  for (int k = q.k_min(); k <= q.k_max(); ++k) levels[std::to_string(k)] = q.level(k).rational_part().to_string();
  out["levels"] = std::move(levels);
  return out;
}

json report_to_json(const FertilityReport& r) {
  json out;
  out["requested"] = {r.requested_min, r.requested_max};
  out["achieved"] = {r.achieved_min, r.achieved_max};
  out["fertile"] = r.fertile();
  out["failure_level"] = r.failure_level ? json(*r.failure_level) : json(nullptr);
  out["failure_witness"] = r.failure_witness ? json(r.failure_witness->to_string()) : json(nullptr);
  return out;
}

namespace {

int value_digits(long precision_bits) {
  return std::max(2, static_cast<int>(std::floor(static_cast<double>(precision_bits) * 0.30102999566398120)));
}

}  // namespace

std::string format_value(const BigFloat& v, long precision_bits) { return v.to_string(value_digits(precision_bits)); }

std::string format_bound(const BigFloat& b) { return b.is_zero() ? "0" : b.to_string(6, MPFR_RNDU); }

json result_to_json(const EvalResult& r) {
  json out;
  out["value"] = format_value(r.value, r.precision_bits);
  // The printed value is rounded to value_digits significant digits; one unit in
  // the last printed place joins the bound.
  BigFloat bound = r.error_bound;
  if (!r.value.is_zero()) {
    const BigFloat mag = r.value.abs().with_precision(64);
    const long e10 = static_cast<long>(std::floor(std::log10(std::max(mag.to_double(), 1e-300))));
    const BigFloat ulp10 = BigFloat(10, 64).pow(e10 + 1 - value_digits(r.precision_bits));
    bound = bound + ulp10;
  }
  out["error_bound"] = format_bound(bound);
  out["terms"] = r.terms_used;
  out["precision_bits"] = r.precision_bits;
  return out;
}

}  // namespace kolberg::io
