#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace cat0sq {

using Rational = mpq_class;

/// Parses "p", "-p" or "p/q"; throws ParseError on anything else.
Rational parse_rational(std::string_view text);
/// Canonical "p" or "p/q".
std::string to_string(const Rational& r);
inline double to_double(const Rational& r) { return r.get_d(); }

}  // namespace cat0sq
