#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace morsekit {

using Integer = mpz_class;
using Rational = mpq_class;

/// Canonical text form: "p" for integers, "p/q" (q > 1) otherwise.
std::string to_string(const Integer& value);
std::string to_string(const Rational& value);

/// Parses a decimal integer or `p/q` with q > 0 and gcd(p, q) = 1.
std::optional<Rational> parse_rational(std::string_view text);
std::optional<Integer> parse_integer(std::string_view text);

inline Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

}  // namespace morsekit
