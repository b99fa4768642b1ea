#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "cat0sq/complex.hpp"

namespace cat0sq {

inline constexpr std::string_view kFormatVersion = "cat0sq/1";

/// Structural parse only: the result may still violate the axioms.
/// Throws ParseError with a JSON-pointer location.
RawComplex parse_raw(std::string_view text);
/// parse_raw followed by validation; throws ValidationError on axiom violations.
SquareComplex parse_complex(std::string_view text);
/// Canonical document: sorted ids, sorted keys, two-space indentation, trailing newline.
std::string to_text(const SquareComplex& x);
/// Same layout for an unchecked complex, so broken fixtures can be written out.
std::string to_text(const RawComplex& raw);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

SquareComplex load(const std::filesystem::path& path);
void save(const SquareComplex& x, const std::filesystem::path& path);

}  // namespace cat0sq
