#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace azk {

// Canonical (reduced, positive denominator) after every arithmetic
// operation; mpq_class keeps that invariant for us.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p", "-p" or "p/q" (no whitespace inside). Throws Error(Parse).
Rational parse_rational(std::string_view text);

/// "p/q", omitting "/1".
std::string to_string(const Rational& value);

inline bool is_integer(const Rational& value) { return value.get_den() == 1; }

Rational pow(const Rational& base, unsigned exponent);

}  // namespace azk
