#pragma once

// Exact-rational, degree-truncated, graded commutative polynomial algebra.
//
// Elements live in a RingContext: an ordered list of named generators with
// even cohomological degrees, and a maximum degree D above which every
// monomial is discarded. Degree-0 generators (rank symbols) are ordinary
// polynomial indeterminates and never cause truncation.

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "anomod/rational.hpp"

namespace anomod {

struct Generator {
  std::string name;
  int degree = 0;

  bool operator==(const Generator&) const = default;
};

class RingContext {
 public:
  static constexpr std::size_t kMaxGenerators = 16;

  /// Throws ContextError on duplicate names, odd/negative degrees, odd
  /// maxDegree, or more than kMaxGenerators generators.
  RingContext(std::vector<Generator> generators, int maxDegree);

  const std::vector<Generator>& generators() const { return generators_; }
  std::size_t size() const { return generators_.size(); }
  int maxDegree() const { return maxDegree_; }
  int degreeOf(std::size_t i) const { return generators_[i].degree; }

  std::optional<std::size_t> find(std::string_view name) const;
  std::size_t indexOf(std::string_view name) const;  // throws ContextError

  bool operator==(const RingContext& other) const;

 private:
  std::vector<Generator> generators_;
  int maxDegree_;
};

using ContextPtr = std::shared_ptr<const RingContext>;

ContextPtr makeContext(std::vector<Generator> generators, int maxDegree);

/// Exponent vector; one slot per generator of the owning context.
struct Monomial {
  std::array<std::uint8_t, RingContext::kMaxGenerators> exponents{};

  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;
};

class GradedElement {
 public:
  struct Term {
    Monomial monomial;
    int degree;
    Rational coefficient;
  };

  /// The zero element of ctx.
  explicit GradedElement(ContextPtr ctx);

  static GradedElement zero(ContextPtr ctx) { return GradedElement(std::move(ctx)); }
  static GradedElement one(ContextPtr ctx) { return constant(std::move(ctx), Rational(1)); }
  static GradedElement constant(ContextPtr ctx, const Rational& value);
  static GradedElement generator(ContextPtr ctx, std::string_view name);
  static GradedElement term(ContextPtr ctx, const Monomial& m, const Rational& coefficient);

  /// Parses the serialization produced by toString(). Throws ParseError or
  /// ContextError for unknown generator names.
  static GradedElement parse(ContextPtr ctx, std::string_view text);

  const ContextPtr& context() const { return ctx_; }

  /// Terms ordered by (degree, exponent vector); no zero coefficients.
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t termCount() const { return terms_.size(); }
  bool isZero() const { return terms_.empty(); }

  /// True when the element has no degree-0 component, i.e. is nilpotent
  /// under truncation.
  bool isNilpotent() const;
  /// Homogeneous of the given degree (zero counts as homogeneous).
  bool isHomogeneous(int degree) const;
  /// The element is a rational constant (no generators at all).
  std::optional<Rational> asConstant() const;

  GradedElement extractDegree(int degree) const;
  GradedElement degreeZeroPart() const { return extractDegree(0); }

  /// Multiplies the degree-2j component by k^j. On a Chern character this is
  /// the Adams operation psi^k.
  GradedElement adamsScaled(long k) const;

  GradedElement operator-() const;
  GradedElement& operator+=(const GradedElement& other);
  GradedElement& operator-=(const GradedElement& other);
  GradedElement& operator*=(const GradedElement& other);
  GradedElement& operator*=(const Rational& scalar);
  GradedElement& operator/=(const Rational& scalar);

  friend GradedElement operator+(GradedElement a, const GradedElement& b) { return a += b; }
  friend GradedElement operator-(GradedElement a, const GradedElement& b) { return a -= b; }
  friend GradedElement operator*(const GradedElement& a, const GradedElement& b);
  friend GradedElement operator*(GradedElement a, const Rational& s) { return a *= s; }
  friend GradedElement operator*(const Rational& s, GradedElement a) { return a *= s; }
  friend GradedElement operator/(GradedElement a, const Rational& s) { return a /= s; }

  bool operator==(const GradedElement& other) const;

  /// Sorted "coefficient*monomial" terms, e.g. "1 - 1/24*p1T + 1/2*c^2*m".
  std::string toString() const;
  /// The first `limit` terms, printed individually.
  std::vector<std::string> sampleTerms(std::size_t limit) const;

 private:
  GradedElement(ContextPtr ctx, std::vector<Term> terms);
  void requireSameContext(const GradedElement& other) const;
  int degreeOf(const Monomial& m) const;

  ContextPtr ctx_;
  std::vector<Term> terms_;

  friend GradedElement substitute(const GradedElement&, const std::map<std::string, GradedElement>&,
                                  const ContextPtr&);
};

std::string formatMonomial(const RingContext& ctx, const Monomial& m);

/// sum_k x^k / k!; x must be nilpotent.
GradedElement expNilpotent(const GradedElement& x);

/// Inverse of 1 + nu for nu nilpotent.
GradedElement invertUnit(const GradedElement& x);

/// sum_k coeffs[k] * x^k; x must be nilpotent and coeffs long enough that
/// every nonzero power is covered.
GradedElement applyUnivariateSeries(std::span<const Rational> coeffs, const GradedElement& x);

/// The ring homomorphism sending each named generator to the given value and
/// every other generator to the same-named generator of `target` (or of the
/// source context when target is null). Values must be homogeneous of the
/// generator's degree.
GradedElement substitute(const GradedElement& x, const std::map<std::string, GradedElement>& assignment,
                         const ContextPtr& target = nullptr);

GradedElement power(const GradedElement& x, unsigned k);

}  // namespace anomod
