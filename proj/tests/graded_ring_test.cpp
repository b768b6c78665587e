#include "anomod/graded_ring.hpp"

#include <gtest/gtest.h>

#include "anomod/charclass.hpp"
#include "anomod/errors.hpp"
#include "support/properties.hpp"

namespace anomod {
namespace {

class GradedRingTest : public ::testing::Test {
 protected:
  ContextPtr ctx = standardContext(12);
  GradedElement el(const char* text) const { return GradedElement::parse(ctx, text); }
  GradedElement gen(const char* name) const { return GradedElement::generator(ctx, name); }
};

TEST_F(GradedRingTest, AdditiveIdentityAndCancellation) {
  EXPECT_EQ(gen("p1T") + GradedElement::zero(ctx), gen("p1T"));
  EXPECT_EQ(el("1/2*c^2") + el("1/2*c^2"), el("c^2"));
  EXPECT_TRUE((el("m*p1F1") + el("-m*p1F1")).isZero());
}

TEST_F(GradedRingTest, MultiplicationTruncatesAboveMaxDegree) {
  EXPECT_TRUE((gen("c") * el("c^6")).isZero());
  EXPECT_EQ(el("1 + p1T") * el("1 - p1T"), el("1 - p1T^2"));
  EXPECT_TRUE((gen("p1T") * gen("p2F1") * gen("p1F2")).isZero());
}

TEST_F(GradedRingTest, RankSymbolsDoNotTruncate) {
  GradedElement x = el("m^3*n^2*p3T");
  EXPECT_EQ(x.termCount(), 1u);
  EXPECT_TRUE(x.isHomogeneous(12));
}

TEST_F(GradedRingTest, MismatchedContextsAreRejected) {
  ContextPtr other = standardContext(14);
  EXPECT_THROW(gen("c") + GradedElement::generator(other, "c"), ContextError);
  EXPECT_THROW(gen("c") * GradedElement::generator(other, "c"), ContextError);
}

TEST_F(GradedRingTest, ContextRejectsBadGenerators) {
  EXPECT_THROW(makeContext({{"a", 3}}, 12), ContextError);
  EXPECT_THROW(makeContext({{"a", 2}, {"a", 4}}, 12), ContextError);
  EXPECT_THROW(makeContext({{"a", 2}}, 11), ContextError);
  EXPECT_THROW(gen("nope"), ContextError);
}

TEST_F(GradedRingTest, ExpOfDegreeTwoGenerator) {
  EXPECT_EQ(expNilpotent(GradedElement::zero(ctx)), GradedElement::one(ctx));
  EXPECT_EQ(expNilpotent(gen("c")), el("1 + c + 1/2*c^2 + 1/6*c^3 + 1/24*c^4 + 1/120*c^5 + 1/720*c^6"));
  GradedElement a = gen("p1T") / Rational(24);
  EXPECT_EQ(expNilpotent(a) * expNilpotent(-a), GradedElement::one(ctx));
}

TEST_F(GradedRingTest, ExpRejectsDegreeZeroPart) {
  EXPECT_THROW(expNilpotent(el("1 + c")), PreconditionError);
  EXPECT_THROW(expNilpotent(el("m")), PreconditionError);
}

TEST_F(GradedRingTest, InvertUnitIsGeometricSeries) {
  EXPECT_EQ(invertUnit(GradedElement::one(ctx)), GradedElement::one(ctx));
  EXPECT_EQ(invertUnit(el("1 + c^2")), el("1 - c^2 + c^4 - c^6"));
  GradedElement x = el("1 + p1T + p2T");
  EXPECT_EQ(x * invertUnit(x), GradedElement::one(ctx));
  EXPECT_THROW(invertUnit(el("2 + c")), PreconditionError);
}

TEST_F(GradedRingTest, UnivariateSeriesEvaluation) {
  // (e^{y/24} - 1) / y = 1/24 + y/1152 + ...
  std::vector<Rational> g = {Rational(1, 24), Rational(1, 1152), Rational(1, 82944), Rational(1, 7962624)};
  EXPECT_EQ(applyUnivariateSeries(g, GradedElement::zero(ctx)), GradedElement::constant(ctx, Rational(1, 24)));
  std::vector<Rational> geometric(7, Rational(1));
  EXPECT_EQ(applyUnivariateSeries(geometric, el("c^2")), invertUnit(el("1 - c^2")));
  std::vector<Rational> expCoeffs;
  for (unsigned k = 0; k < 7; ++k) expCoeffs.push_back(Rational(1) / factorial(k));
  EXPECT_EQ(applyUnivariateSeries(expCoeffs, gen("p1T")), expNilpotent(gen("p1T")));
  EXPECT_THROW(applyUnivariateSeries(expCoeffs, el("1 + c")), PreconditionError);
  EXPECT_THROW(applyUnivariateSeries(std::vector<Rational>{1, 1}, gen("c")), PreconditionError);
}

TEST_F(GradedRingTest, ExtractDegree) {
  EXPECT_EQ(el("1 + c + c^2").extractDegree(2), gen("c"));
  EXPECT_EQ(el("m*p1T + n*c^4").extractDegree(8), el("n*c^4"));
  EXPECT_TRUE(el("m*p1T").extractDegree(0).isZero());
}

TEST_F(GradedRingTest, SubstituteRankRelation) {
  GradedElement q = el("1/2*m^2 - m*n - 63/2*m + 1/2*n^2 + 63/2*n + 494");  // (m-n-32)(m-n-31)/2 - 2
  std::map<std::string, GradedElement> shift = {{"m", gen("n") + GradedElement::constant(ctx, Rational(32))}};
  EXPECT_EQ(substitute(q, shift), GradedElement::constant(ctx, Rational(-2)));
  std::map<std::string, GradedElement> zero = {{"c", GradedElement::zero(ctx)}, {"p1F2", GradedElement::zero(ctx)}};
  EXPECT_TRUE(substitute(el("c^3 + p1F2"), zero).isZero());
}

TEST_F(GradedRingTest, SubstituteRejectsInhomogeneousValues) {
  std::map<std::string, GradedElement> bad = {{"c", el("c + c^2")}};
  EXPECT_THROW(substitute(gen("c"), bad), PreconditionError);
}

TEST_F(GradedRingTest, SerializationIsCanonical) {
  GradedElement x = el("p1T - 1/24*p1T + 1");
  EXPECT_EQ(x.toString(), "1 + 23/24*p1T");
  EXPECT_EQ(GradedElement::parse(ctx, x.toString()), x);
  EXPECT_EQ(GradedElement::zero(ctx).toString(), "0");
  EXPECT_THROW(el("1 + + c"), ParseError);
  EXPECT_THROW(el("c*2"), ParseError);
}

TEST_F(GradedRingTest, AdamsScaling) {
  EXPECT_EQ(el("1 + c + p1T").adamsScaled(2), el("1 + 2*c + 4*p1T"));
}

// Properties (hand-rolled generators, >= 100 cases each).

constexpr int kCases = 150;

TEST(GradedRingProperties, RingAxioms) {
  auto r = testing::ringAxioms(kCases);
  EXPECT_TRUE(r.ok()) << r.firstFailure;
}

TEST(GradedRingProperties, ExpHomomorphism) {
  auto r = testing::expHomomorphism(kCases);
  EXPECT_TRUE(r.ok()) << r.firstFailure;
}

TEST(GradedRingProperties, InvertUnitIsTwoSidedInverse) {
  auto r = testing::invertUnitInverse(kCases);
  EXPECT_TRUE(r.ok()) << r.firstFailure;
}

TEST(GradedRingProperties, ExtractDegreeLinearity) {
  auto r = testing::extractDegreeLinear(kCases);
  EXPECT_TRUE(r.ok()) << r.firstFailure;
}

TEST(GradedRingProperties, ParseRoundTrip) {
  auto r = testing::parseRoundTrip(kCases);
  EXPECT_TRUE(r.ok()) << r.firstFailure;
}

TEST(GradedRingProperties, SubstituteHomomorphism) {
  auto r = testing::substituteHomomorphism(kCases);
  EXPECT_TRUE(r.ok()) << r.firstFailure;
}

}  // namespace
}  // namespace anomod
