#pragma once

#include <json.hpp>

#include <string>
#include <string_view>

#include "cat0sq/complex.hpp"
#include "cat0sq/error.hpp"

namespace cat0sq::detail {

using nlohmann::json;

json parse_json(std::string_view text);
json raw_to_json(RawComplex raw);
json complex_to_json(const SquareComplex& x);
RawComplex raw_from_json(const json& doc, const std::string& where);

/// Typed field access with ParseError locations.
const json& field(const json& obj, const char* key, const std::string& where);
std::string string_field(const json& obj, const char* key, const std::string& where);
void expect_version(const json& doc, std::string_view version, const std::string& where);

}  // namespace cat0sq::detail
