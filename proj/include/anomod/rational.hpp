#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace anomod {

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
using Rational = mpq_class;

Rational makeRational(long num, long den = 1);

/// "p/q", or "p" when the denominator is 1.
std::string toString(const Rational& r);

/// Accepts "p", "-p", "p/q". Throws ParseError.
Rational parseRational(std::string_view text);

Rational factorial(unsigned k);

}  // namespace anomod
