#pragma once

// Dense univariate power series over the rationals, truncated to a fixed
// number of terms. Used for Taylor data of genera and Euler factors.

#include <vector>

#include "anomod/rational.hpp"

namespace anomod::scalar {

using Series = std::vector<Rational>;

Series multiply(const Series& a, const Series& b);
/// Requires a[0] != 0.
Series inverse(const Series& a);
/// Requires a[0] == 1.
Series logarithm(const Series& a);
/// Requires a[0] == 0.
Series exponential(const Series& a);

/// Taylor coefficients of e^{s x}, sinh(s x), cosh(s x) through x^{terms-1}.
Series expScaled(const Rational& s, std::size_t terms);
Series sinhScaled(const Rational& s, std::size_t terms);
Series coshScaled(const Rational& s, std::size_t terms);

/// f(x)/x for f with f(0) = 0 (drops the constant, shifts down).
Series divideByX(const Series& a);

}  // namespace anomod::scalar
