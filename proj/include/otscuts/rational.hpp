#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace otscuts {

/// Exact arbitrary-precision rational. GMP keeps every value canonical
/// (lowest terms, positive denominator) after each arithmetic operation.
using Rational = mpq_class;
using RatVector = std::vector<Rational>;

/// Parses "p/q", an integer, or a decimal such as "-1.25" or "3e-2".
/// Throws std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);

/// True when the value has a finite decimal expansion.
bool is_terminating_decimal(const Rational& value);

/// Exact decimal rendering of a terminating rational ("0.125", "-3").
/// Precondition: is_terminating_decimal(value).
std::string to_decimal_string(const Rational& value);

/// Number of significant decimal digits of a terminating rational.
std::size_t significant_digits(const Rational& value);

inline Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

}  // namespace otscuts
