#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <string_view>

namespace epigame {

/// Exact rational arithmetic.  Every probability and utility in the library
/// is a Rational; nothing ever rounds.  The backing type keeps values in
/// lowest terms with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;

/// Arbitrary-precision integer, used for counts that can exceed 64 bits
/// (strategy spaces, coherent-system totals, scenario-space sizes).
using BigInt = boost::multiprecision::cpp_int;

/// Parses "p/q" or the integer shorthand "k".  Strict: an optional leading
/// '-' on the numerator, no leading zeros, no whitespace, q > 0.
/// Returns nullopt on malformed input.
std::optional<Rational> parse_rational(std::string_view text);

/// Canonical rendering: "k" when the denominator is 1, otherwise "p/q".
/// parse_rational(format_rational(r)) round-trips exactly.
std::string format_rational(const Rational& value);

std::string format_bigint(const BigInt& value);

}  // namespace epigame
