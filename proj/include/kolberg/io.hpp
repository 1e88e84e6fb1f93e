#pragma once

// JSON file formats.
//
//   sequence: {"ring": "Q" | "Q(y)", "kind": "u" | "v", "coeffs": ["<expr>", ...]}
//   quatuor:  {"generator": "<expr in t,y>", "generator_level": k, "levels": {"<k>": "<expr>", ...}}
//   result:   {"value": "<decimal>", "error_bound": "<decimal>", "terms": N, "precision_bits": p}
//
// Keys are written in the order above so output is byte-stable.

#include <filesystem>
#include <string>
#include <variant>

#include <json.hpp>

#include "kolberg/assoc.hpp"
#include "kolberg/numeric.hpp"
#include "kolberg/quatuor.hpp"

namespace kolberg::io {

using json = nlohmann::ordered_json;

using AnySequence = std::variant<CoeffSeq<BigRational>, CoeffSeq<RatFuncY>>;

// Malformed documents raise ParseError; unreadable files InvalidArgument.
json load_json(const std::filesystem::path& path);
json parse_json(const std::string& text);
void save_json(const std::filesystem::path& path, const json& doc);

AnySequence sequence_from_json(const json& doc);
json sequence_to_json(const CoeffSeq<BigRational>& s);
json sequence_to_json(const CoeffSeq<RatFuncY>& s);
json sequence_to_json(const AnySequence& s);

// Rebuilds the quatuor and re-verifies every level relation (VerificationError);
// the stored generator must match its level.
Quatuor quatuor_from_json(const json& doc);
json quatuor_to_json(const Quatuor& q);
json report_to_json(const FertilityReport& r);

// Value with every digit the precision supports; bound rounded up to 6 digits.
json result_to_json(const EvalResult& r);
std::string format_value(const BigFloat& v, long precision_bits);
std::string format_bound(const BigFloat& b);

}  // namespace kolberg::io
