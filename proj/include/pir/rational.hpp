#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace pir {

// Exact rational number. mpq keeps the canonical reduced form (positive
// denominator, gcd(|num|, den) = 1) after every operation; nothing in the
// core ever rounds.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

inline Rational rat(long long num, long long den = 1) {
  return Rational(num, den);
}

// "p/q", "p", or "d.ddd" (decimal digits convert exactly with denominator
// 10^d). Locale-independent. Returns nullopt on malformed input.
std::optional<Rational> parse_rational(std::string_view text);

// Canonical text form: "p" for integers, "p/q" otherwise. parse(format(r)) == r.
std::string format_rational(const Rational& value);

// Decimal approximation for display next to the exact value.
double to_double(const Rational& value);

}  // namespace pir
