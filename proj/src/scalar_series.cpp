#include "anomod/scalar_series.hpp"

#include <stdexcept>

#include "anomod/errors.hpp"

namespace anomod::scalar {

Series multiply(const Series& a, const Series& b) {
  const std::size_t n = std::min(a.size(), b.size());
  Series out(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; i + j < n; ++j) out[i + j] += a[i] * b[j];
  return out;
}

Series inverse(const Series& a) {
  if (a.empty() || a[0] == 0) throw PreconditionError("series with zero constant term is not invertible");
  Series out(a.size(), Rational(0));
  out[0] = Rational(1) / a[0];
  for (std::size_t h = 1; h < a.size(); ++h) {
    Rational acc(0);
    for (std::size_t j = 1; j <= h; ++j) acc += a[j] * out[h - j];
    out[h] = -acc * out[0];
  }
  return out;
}

Series logarithm(const Series& a) {
  if (a.empty() || a[0] != 1) throw PreconditionError("logarithm needs constant term 1");
  // (log a)' = a' / a
  Series deriv(a.size(), Rational(0));
  for (std::size_t k = 1; k < a.size(); ++k) deriv[k - 1] = a[k] * Rational(static_cast<long>(k));
  Series q = multiply(deriv, inverse(a));
  Series out(a.size(), Rational(0));
  for (std::size_t k = 1; k < a.size(); ++k) out[k] = q[k - 1] / Rational(static_cast<long>(k));
  return out;
}

Series exponential(const Series& a) {
  if (a.empty()) return {};
  if (a[0] != 0) throw PreconditionError("exponential needs constant term 0");
  Series out(a.size(), Rational(0));
  out[0] = 1;
  for (std::size_t h = 1; h < a.size(); ++h) {
    Rational acc(0);
    for (std::size_t j = 1; j <= h; ++j) acc += Rational(static_cast<long>(j)) * a[j] * out[h - j];
    out[h] = acc / Rational(static_cast<long>(h));
  }
  return out;
}

Series expScaled(const Rational& s, std::size_t terms) {
  Series out(terms, Rational(0));
  Rational pw(1);
  for (std::size_t k = 0; k < terms; ++k) {
    out[k] = pw / factorial(static_cast<unsigned>(k));
    pw *= s;
  }
  return out;
}

Series sinhScaled(const Rational& s, std::size_t terms) {
  Series e = expScaled(s, terms);
  for (std::size_t k = 0; k < terms; k += 2) e[k] = 0;
  return e;
}

Series coshScaled(const Rational& s, std::size_t terms) {
  Series e = expScaled(s, terms);
  for (std::size_t k = 1; k < terms; k += 2) e[k] = 0;
  return e;
}

Series divideByX(const Series& a) {
  if (!a.empty() && a[0] != 0) throw PreconditionError("series is not divisible by x");
  if (a.empty()) return {};
  return Series(a.begin() + 1, a.end());
}

}  // namespace anomod::scalar
