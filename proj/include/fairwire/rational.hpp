#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>

namespace fairwire {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Parses "p/q", plain integers, and decimal strings ("0.25" -> 1/4).
/// Throws InputError on anything else.
Rational parse_rational(const std::string& text);

/// "p/q", or just "p" when the denominator is 1.
std::string format_rational(const Rational& value);

/// floor(value) as an exact big integer.
BigInt floor_rational(const Rational& value);

/// floor(value) narrowed to int64; throws SolveError if it does not fit.
std::int64_t floor_to_int64(const Rational& value);

std::int64_t to_int64(const BigInt& value);

double to_double(const Rational& value);

/// Exact conversion: every finite double is a dyadic rational.
Rational rational_from_double(double value);

}  // namespace fairwire
