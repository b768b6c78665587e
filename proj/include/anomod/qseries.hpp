#pragma once

// Truncated formal power series in q^{1/2}.
//
// Exponents are stored in half-units: index h holds the coefficient of
// q^{h/2}. A series of order N knows the coefficients for 0 <= h < N and
// nothing beyond; asking for h >= N is an error, never an implicit zero.

#include <algorithm>
#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "anomod/errors.hpp"
#include "anomod/graded_ring.hpp"
#include "anomod/rational.hpp"

namespace anomod {

/// Per-coefficient-ring operations used by QSeries. Every ring needs a zero
/// and a one built from a prototype value (graded elements carry their
/// context), an exponential for the constant term, and a unit inverse.
template <class T>
struct CoefficientRing;

template <>
struct CoefficientRing<Rational> {
  static Rational zeroLike(const Rational&) { return Rational(0); }
  static Rational oneLike(const Rational&) { return Rational(1); }
  static bool isZero(const Rational& x) { return x == 0; }
  static Rational exp(const Rational& x) {
    if (x != 0) throw PreconditionError("exp of a nonzero rational is not rational");
    return Rational(1);
  }
  static Rational invert(const Rational& x) {
    if (x == 0) throw PreconditionError("constant term is not invertible");
    return Rational(1) / x;
  }
  static Rational scale(const Rational& x, const Rational& s) { return x * s; }
  static std::string toString(const Rational& x) { return anomod::toString(x); }
};

template <>
struct CoefficientRing<GradedElement> {
  static GradedElement zeroLike(const GradedElement& p) { return GradedElement::zero(p.context()); }
  static GradedElement oneLike(const GradedElement& p) { return GradedElement::one(p.context()); }
  static bool isZero(const GradedElement& x) { return x.isZero(); }
  static GradedElement exp(const GradedElement& x) { return expNilpotent(x); }
  static GradedElement invert(const GradedElement& x) {
    auto c = x.degreeZeroPart().asConstant();
    if (!c || *c == 0) throw PreconditionError("constant term is not a unit");
    // c * (1 + nu) with c rational.
    return invertUnit(x / *c) / *c;
  }
  static GradedElement scale(const GradedElement& x, const Rational& s) { return x * s; }
  static std::string toString(const GradedElement& x) { return x.toString(); }
};

template <>
struct CoefficientRing<std::complex<double>> {
  using C = std::complex<double>;
  static C zeroLike(const C&) { return 0.0; }
  static C oneLike(const C&) { return 1.0; }
  static bool isZero(const C& x) { return x == C(0.0); }
  static C exp(const C& x) { return std::exp(x); }
  static C invert(const C& x) {
    if (x == C(0.0)) throw PreconditionError("constant term is not invertible");
    return 1.0 / x;
  }
  static C scale(const C& x, const Rational& s) { return x * s.get_d(); }
  static std::string toString(const C& x) { return "(" + std::to_string(x.real()) + "," + std::to_string(x.imag()) + ")"; }
};

template <class T>
class QSeries {
  using Ring = CoefficientRing<T>;

 public:
  /// The zero series of the given order; `prototype` fixes the coefficient
  /// ring instance (its value is ignored).
  QSeries(std::size_t order, const T& prototype) : zero_(Ring::zeroLike(prototype)), coeffs_(order, zero_) {}

  static QSeries one(std::size_t order, const T& prototype) {
    QSeries s(order, prototype);
    if (order > 0) s.coeffs_[0] = Ring::oneLike(prototype);
    return s;
  }

  /// c * q^{h/2}; empty if h >= order.
  static QSeries monomial(std::size_t order, std::size_t h, const T& c) {
    QSeries s(order, c);
    if (h < order) s.coeffs_[h] = c;
    return s;
  }

  std::size_t order() const { return coeffs_.size(); }
  const T& zero() const { return zero_; }

  const T& coefficient(std::size_t h) const {
    if (h >= coeffs_.size())
      throw std::out_of_range("coefficient q^{" + std::to_string(h) + "/2} lies beyond truncation order " +
                              std::to_string(coeffs_.size()));
    return coeffs_[h];
  }
  void setCoefficient(std::size_t h, T value) {
    if (h >= coeffs_.size()) throw std::out_of_range("coefficient index beyond truncation order");
    coeffs_[h] = std::move(value);
  }
  void addToCoefficient(std::size_t h, const T& value) {
    if (h < coeffs_.size()) coeffs_[h] += value;
  }

  /// Smallest h with a nonzero coefficient, or order() for the zero series.
  std::size_t valuation() const {
    for (std::size_t h = 0; h < coeffs_.size(); ++h)
      if (!Ring::isZero(coeffs_[h])) return h;
    return coeffs_.size();
  }
  bool isZero() const { return valuation() == coeffs_.size(); }

  std::vector<std::pair<std::size_t, T>> nonzeroTerms() const {
    std::vector<std::pair<std::size_t, T>> out;
    for (std::size_t h = 0; h < coeffs_.size(); ++h)
      if (!Ring::isZero(coeffs_[h])) out.emplace_back(h, coeffs_[h]);
    return out;
  }

  QSeries truncated(std::size_t order) const {
    QSeries s(std::min(order, coeffs_.size()), zero_);
    for (std::size_t h = 0; h < s.order(); ++h) s.coeffs_[h] = coeffs_[h];
    return s;
  }

  /// Multiplication by q^{h/2}.
  QSeries shifted(std::size_t h) const {
    QSeries s(order(), zero_);
    for (std::size_t i = 0; i + h < order(); ++i) s.coeffs_[i + h] = coeffs_[i];
    return s;
  }

  template <class F>
  auto mapCoefficients(F&& f) const -> QSeries<std::invoke_result_t<F, const T&>> {
    using U = std::invoke_result_t<F, const T&>;
    std::vector<U> mapped;
    mapped.reserve(order());
    for (const auto& c : coeffs_) mapped.push_back(f(c));
    U proto = mapped.empty() ? f(zero_) : mapped.front();
    QSeries<U> out(order(), proto);
    for (std::size_t h = 0; h < order(); ++h) out.setCoefficient(h, std::move(mapped[h]));
    return out;
  }

  QSeries operator-() const {
    QSeries s = *this;
    for (auto& c : s.coeffs_) c = Ring::zeroLike(zero_) - c;
    return s;
  }
  QSeries& operator+=(const QSeries& o) {
    resizeToMin(o);
    for (std::size_t h = 0; h < order(); ++h) coeffs_[h] += o.coeffs_[h];
    return *this;
  }
  QSeries& operator-=(const QSeries& o) {
    resizeToMin(o);
    for (std::size_t h = 0; h < order(); ++h) coeffs_[h] -= o.coeffs_[h];
    return *this;
  }
  QSeries& operator*=(const Rational& s) {
    for (auto& c : coeffs_) c = Ring::scale(c, s);
    return *this;
  }
  friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
  friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
  friend QSeries operator*(QSeries a, const Rational& s) { return a *= s; }
  friend QSeries operator*(const Rational& s, QSeries a) { return a *= s; }
  friend QSeries operator*(const QSeries& a, const QSeries& b) { return mulSeries(a, b); }

  /// Coefficient-wise product with a single ring element.
  QSeries scaledBy(const T& c) const {
    QSeries s = *this;
    for (auto& x : s.coeffs_) x = x * c;
    return s;
  }

  bool operator==(const QSeries& o) const { return order() == o.order() && coeffs_ == o.coeffs_; }

  /// Cauchy product truncated at the smaller order.
  friend QSeries mulSeries(const QSeries& a, const QSeries& b) {
    const std::size_t n = std::min(a.order(), b.order());
    QSeries out(n, a.zero_);
    for (std::size_t i = 0; i < n; ++i) {
      if (Ring::isZero(a.coeffs_[i])) continue;
      for (std::size_t j = 0; i + j < n; ++j) {
        if (Ring::isZero(b.coeffs_[j])) continue;
        out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
    return out;
  }

  /// Multiplicative inverse; the constant term must be a unit.
  friend QSeries invertSeries(const QSeries& a) {
    const std::size_t n = a.order();
    QSeries out(n, a.zero_);
    if (n == 0) return out;
    const T inv0 = Ring::invert(a.coeffs_[0]);
    out.coeffs_[0] = inv0;
    for (std::size_t h = 1; h < n; ++h) {
      T acc = Ring::zeroLike(a.zero_);
      for (std::size_t j = 1; j <= h; ++j) {
        if (Ring::isZero(a.coeffs_[j]) || Ring::isZero(out.coeffs_[h - j])) continue;
        acc += a.coeffs_[j] * out.coeffs_[h - j];
      }
      out.coeffs_[h] = Ring::zeroLike(a.zero_) - acc * inv0;
    }
    return out;
  }

  /// exp(a) = exp(a_0) * exp(a - a_0). The constant term must admit an
  /// exponential in the coefficient ring (nilpotent for graded elements); the
  /// positive-valuation part terminates by q-valuation. Uses h f_h =
  /// sum_j j a_j f_{h-j}.
  friend QSeries expSeries(const QSeries& a) {
    const std::size_t n = a.order();
    QSeries out(n, a.zero_);
    if (n == 0) return out;
    out.coeffs_[0] = Ring::exp(a.coeffs_[0]);
    for (std::size_t h = 1; h < n; ++h) {
      T acc = Ring::zeroLike(a.zero_);
      for (std::size_t j = 1; j <= h; ++j) {
        if (Ring::isZero(a.coeffs_[j]) || Ring::isZero(out.coeffs_[h - j])) continue;
        acc += Ring::scale(a.coeffs_[j] * out.coeffs_[h - j], Rational(static_cast<long>(j)));
      }
      out.coeffs_[h] = Ring::scale(acc, Rational(1) / Rational(static_cast<unsigned long>(h)));
    }
    return out;
  }

 private:
  void resizeToMin(const QSeries& o) {
    if (o.order() < order()) coeffs_.resize(o.order(), zero_);
  }

  T zero_;
  std::vector<T> coeffs_;
};

template <class T>
const T& coefficient(const QSeries<T>& a, std::size_t h) {
  return a.coefficient(h);
}

/// Embeds a rational series into a graded-element series.
inline QSeries<GradedElement> liftScalars(const QSeries<Rational>& s, const ContextPtr& ctx) {
  return s.mapCoefficients([&](const Rational& r) { return GradedElement::constant(ctx, r); });
}

/// Total monomial count over all coefficients.
inline std::size_t totalTermCount(const QSeries<GradedElement>& s) {
  std::size_t n = 0;
  for (std::size_t h = 0; h < s.order(); ++h) n += s.coefficient(h).termCount();
  return n;
}

}  // namespace anomod
