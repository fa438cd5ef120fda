#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace hellydiam {

using Scalar = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Parses "n", "n/d", "-n/d" or a terminating decimal such as "0.25".
Scalar parse_scalar(std::string_view text);

/// "n" for integers, "n/d" otherwise.
std::string to_string(const Scalar& x);

/// Decimal rendering; exact when the denominator has only factors 2 and 5,
/// rounded to `digits` fractional digits otherwise.
std::string to_decimal(const Scalar& x, int digits = 12);

double to_double(const Scalar& x);

/// Square root when x is the square of a rational.
std::optional<Scalar> exact_sqrt(const Scalar& x);

/// Rational r >= sqrt(x), exact for perfect squares, within 2^-bits otherwise.
Scalar sqrt_upper(const Scalar& x, unsigned bits = 64);

/// Rational r <= sqrt(x), exact for perfect squares, within 2^-bits otherwise.
Scalar sqrt_lower(const Scalar& x, unsigned bits = 64);

/// Largest rational with denominator `den` not exceeding `value`.
Scalar floor_to(double value, long long den);

int sign(const Scalar& x);

} // namespace hellydiam
