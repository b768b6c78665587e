#pragma once

// Hand-rolled random generators and property checks. Shared by the gtest
// property suites and the acceptance runner; every check is deterministic
// for a given seed.

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "anomod/charclass.hpp"
#include "anomod/graded_ring.hpp"
#include "anomod/qseries.hpp"

namespace anomod::testing {

struct PropertyOutcome {
  std::string name;
  int cases = 0;
  int failures = 0;
  std::string firstFailure;

  bool ok() const { return failures == 0 && cases > 0; }
};

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  bool coin() { return uniform(0, 1) == 1; }

  Rational rational(int maxNum = 5, int maxDen = 4) {
    int num = uniform(-maxNum, maxNum);
    if (num == 0) num = 1;
    return makeRational(num, uniform(1, maxDen));
  }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform(0, static_cast<int>(v.size()) - 1))];
  }

  /// A random monomial of total degree <= maxDegree (degree-0 generators
  /// get exponents <= 2).
  Monomial monomial(const RingContext& ctx, int maxDegree) {
    Monomial m;
    int budget = maxDegree;
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      const int d = ctx.degreeOf(i);
      const int cap = d == 0 ? 2 : budget / d;
      const int e = cap > 0 ? uniform(0, std::min(cap, 3)) : 0;
      m.exponents[i] = static_cast<std::uint8_t>(e);
      budget -= e * d;
    }
    return m;
  }

  GradedElement element(const ContextPtr& ctx, int maxTerms = 6) {
    GradedElement x(ctx);
    const int terms = uniform(0, maxTerms);
    for (int t = 0; t < terms; ++t) x += GradedElement::term(ctx, monomial(*ctx, ctx->maxDegree()), rational());
    return x;
  }

  /// No degree-0 component.
  GradedElement nilpotent(const ContextPtr& ctx, int maxTerms = 5) {
    GradedElement x = element(ctx, maxTerms);
    return x - x.degreeZeroPart();
  }

  QSeries<GradedElement> series(const ContextPtr& ctx, std::size_t order, bool nilpotentConstant) {
    QSeries<GradedElement> s(order, GradedElement::zero(ctx));
    for (std::size_t h = 0; h < order; ++h) {
      if (uniform(0, 2) == 0) continue;
      s.setCoefficient(h, h == 0 && nilpotentConstant ? nilpotent(ctx, 3) : element(ctx, 3));
    }
    return s;
  }

 private:
  std::mt19937_64 engine_;
};

/// Generators a(2), b(4), c(6) and a rank symbol r(0), truncated at 12.
inline ContextPtr propertyContext() {
  static const ContextPtr ctx = makeContext({{"a", 2}, {"b", 4}, {"c", 6}, {"r", 0}}, 12);
  return ctx;
}

inline PropertyOutcome runProperty(const std::string& name, int cases, std::uint64_t seed,
                                   const std::function<std::string(Gen&)>& body) {
  PropertyOutcome out{name, 0, 0, {}};
  Gen gen(seed);
  for (int i = 0; i < cases; ++i) {
    ++out.cases;
    std::string failure = body(gen);
    if (!failure.empty()) {
      if (out.failures == 0) out.firstFailure = "case " + std::to_string(i) + ": " + failure;
      ++out.failures;
    }
  }
  return out;
}

inline std::string mismatch(const std::string& what, const GradedElement& a, const GradedElement& b) {
  if (a == b) return {};
  return what + ": " + a.toString() + " != " + b.toString();
}

// Graded ring ----------------------------------------------------------------------

inline PropertyOutcome ringAxioms(int cases, std::uint64_t seed = 1) {
  return runProperty("ring axioms", cases, seed, [](Gen& g) -> std::string {
    auto ctx = propertyContext();
    auto a = g.element(ctx), b = g.element(ctx), c = g.element(ctx);
    if (auto f = mismatch("a+b commutative", a + b, b + a); !f.empty()) return f;
    if (auto f = mismatch("ab commutative", a * b, b * a); !f.empty()) return f;
    if (auto f = mismatch("(a+b)+c associative", (a + b) + c, a + (b + c)); !f.empty()) return f;
    if (auto f = mismatch("(ab)c associative", (a * b) * c, a * (b * c)); !f.empty()) return f;
    if (auto f = mismatch("distributive", a * (b + c), a * b + a * c); !f.empty()) return f;
    if (auto f = mismatch("additive inverse", a - a, GradedElement::zero(ctx)); !f.empty()) return f;
    if (auto f = mismatch("unit", a * GradedElement::one(ctx), a); !f.empty()) return f;
    for (const auto& t : (a * b * c).terms())
      if (t.degree > ctx->maxDegree()) return "product kept a term of degree " + std::to_string(t.degree);
    return {};
  });
}

inline PropertyOutcome expHomomorphism(int cases, std::uint64_t seed = 2) {
  return runProperty("exp(a+b) = exp(a) exp(b)", cases, seed, [](Gen& g) {
    auto ctx = propertyContext();
    auto a = g.nilpotent(ctx), b = g.nilpotent(ctx);
    return mismatch("exp homomorphism", expNilpotent(a + b), expNilpotent(a) * expNilpotent(b));
  });
}

inline PropertyOutcome invertUnitInverse(int cases, std::uint64_t seed = 3) {
  return runProperty("x * invertUnit(x) = 1", cases, seed, [](Gen& g) {
    auto ctx = propertyContext();
    auto x = GradedElement::one(ctx) + g.nilpotent(ctx);
    auto inv = invertUnit(x);
    std::string f = mismatch("right inverse", x * inv, GradedElement::one(ctx));
    return f.empty() ? mismatch("left inverse", inv * x, GradedElement::one(ctx)) : f;
  });
}

inline PropertyOutcome extractDegreeLinear(int cases, std::uint64_t seed = 4) {
  return runProperty("extractDegree linear and partitioning", cases, seed, [](Gen& g) -> std::string {
    auto ctx = propertyContext();
    auto a = g.element(ctx), b = g.element(ctx);
    GradedElement sum(ctx);
    for (int d = 0; d <= ctx->maxDegree(); d += 2) {
      if (auto f = mismatch("linearity", (a + b).extractDegree(d), a.extractDegree(d) + b.extractDegree(d)); !f.empty())
        return f;
      sum += a.extractDegree(d);
    }
    return mismatch("partition", sum, a);
  });
}

inline PropertyOutcome parseRoundTrip(int cases, std::uint64_t seed = 5) {
  return runProperty("parse(toString(x)) = x", cases, seed, [](Gen& g) {
    auto ctx = propertyContext();
    auto a = g.element(ctx);
    return mismatch("round trip", GradedElement::parse(ctx, a.toString()), a);
  });
}

inline PropertyOutcome substituteHomomorphism(int cases, std::uint64_t seed = 6) {
  return runProperty("substitute is a ring homomorphism", cases, seed, [](Gen& g) {
    auto ctx = propertyContext();
    auto homogeneous = [&](int degree) {
      GradedElement v(ctx);
      for (int t = 0; t < 3; ++t) v += g.element(ctx, 4).extractDegree(degree);
      return v;
    };
    std::map<std::string, GradedElement> assignment = {{"a", homogeneous(2)}, {"b", homogeneous(4)}};
    if (g.coin()) assignment.insert_or_assign("r", GradedElement::constant(ctx, g.rational()));
    auto x = g.element(ctx), y = g.element(ctx);
    std::string f = mismatch("product", substitute(x * y, assignment), substitute(x, assignment) * substitute(y, assignment));
    return f.empty() ? mismatch("sum", substitute(x + y, assignment), substitute(x, assignment) + substitute(y, assignment))
                     : f;
  });
}

// q-series --------------------------------------------------------------------------

inline std::string seriesMismatch(const std::string& what, const QSeries<GradedElement>& a,
                                  const QSeries<GradedElement>& b) {
  if (a == b) return {};
  for (std::size_t h = 0; h < std::min(a.order(), b.order()); ++h)
    if (!(a.coefficient(h) == b.coefficient(h)))
      return what + " differs at q^" + std::to_string(h) + "/2: " + a.coefficient(h).toString() + " vs " +
             b.coefficient(h).toString();
  return what + ": orders differ";
}

inline PropertyOutcome seriesRingLaws(int cases, std::uint64_t seed = 7) {
  return runProperty("q-series product associative and commutative", cases, seed, [](Gen& g) {
    auto ctx = propertyContext();
    const std::size_t n = static_cast<std::size_t>(g.uniform(3, 7));
    auto a = g.series(ctx, n, false), b = g.series(ctx, n, false), c = g.series(ctx, n, false);
    std::string f = seriesMismatch("commutativity", a * b, b * a);
    return f.empty() ? seriesMismatch("associativity", (a * b) * c, a * (b * c)) : f;
  });
}

inline PropertyOutcome seriesInverseInvolution(int cases, std::uint64_t seed = 8) {
  return runProperty("invertSeries is an involution on unit-constant series", cases, seed, [](Gen& g) {
    auto ctx = propertyContext();
    auto a = g.series(ctx, static_cast<std::size_t>(g.uniform(3, 7)), true);
    a.setCoefficient(0, a.coefficient(0) + GradedElement::one(ctx));
    auto inv = invertSeries(a);
    std::string f = seriesMismatch("a * a^-1", a * inv, QSeries<GradedElement>::one(a.order(), a.zero()));
    return f.empty() ? seriesMismatch("involution", invertSeries(inv), a) : f;
  });
}

inline PropertyOutcome seriesExpHomomorphism(int cases, std::uint64_t seed = 9) {
  return runProperty("expSeries(a+b) = expSeries(a) expSeries(b)", cases, seed, [](Gen& g) {
    auto ctx = propertyContext();
    const std::size_t n = static_cast<std::size_t>(g.uniform(3, 7));
    auto a = g.series(ctx, n, true), b = g.series(ctx, n, true);
    return seriesMismatch("exp homomorphism", expSeries(a + b), expSeries(a) * expSeries(b));
  });
}

inline PropertyOutcome seriesMapCommutes(int cases, std::uint64_t seed = 10) {
  return runProperty("substitution commutes with series product and exp", cases, seed, [](Gen& g) {
    auto ctx = propertyContext();
    const std::size_t n = static_cast<std::size_t>(g.uniform(3, 6));
    auto a = g.series(ctx, n, true), b = g.series(ctx, n, true);
    std::map<std::string, GradedElement> assignment = {
        {"a", GradedElement::generator(ctx, "a") * g.rational()},
        {"b", GradedElement::generator(ctx, "a") * GradedElement::generator(ctx, "a") * g.rational()},
        {"r", GradedElement::constant(ctx, g.rational())}};
    auto phi = [&](const GradedElement& x) { return substitute(x, assignment); };
    std::string f = seriesMismatch("product", (a * b).mapCoefficients(phi), a.mapCoefficients(phi) * b.mapCoefficients(phi));
    return f.empty() ? seriesMismatch("exp", expSeries(a).mapCoefficients(phi), expSeries(a.mapCoefficients(phi))) : f;
  });
}

// lambda-ring ----------------------------------------------------------------------

/// A model over explicit Chern roots: real atoms E (roots e1, e2) and G
/// (roots g1, g2); a real rank r bundle uses floor(r/2) root pairs and one
/// zero root when r is odd.
struct RootModel {
  ContextPtr ctx;
  ChernModel model;
  std::vector<GradedElement> rootsE;  // all complexified roots, with signs
  std::vector<GradedElement> rootsG;
};

inline RootModel makeRootModel(int rankE, int rankG, int maxDegree = 10) {
  ContextPtr ctx = makeContext({{"e1", 2}, {"e2", 2}, {"g1", 2}, {"g2", 2}}, maxDegree);
  ChernModel model(ctx);
  auto build = [&](const std::string& prefix, int rank, std::vector<GradedElement>& roots) {
    std::vector<GradedElement> squares;
    for (int j = 1; j <= rank / 2; ++j) {
      GradedElement x = GradedElement::generator(ctx, prefix + std::to_string(j));
      roots.push_back(x);
      roots.push_back(-x);
      squares.push_back(x * x);
    }
    if (rank % 2 == 1) roots.push_back(GradedElement::zero(ctx));
    RealBundleClasses b{GradedElement::constant(ctx, Rational(rank)), {}};
    GradedElement p1(ctx), p2(ctx);
    for (std::size_t i = 0; i < squares.size(); ++i) {
      p1 += squares[i];
      for (std::size_t j = i + 1; j < squares.size(); ++j) p2 += squares[i] * squares[j];
    }
    b.pontryagin = {p1, p2};
    model.defineRealAtom(prefix == "e" ? "E" : "G", b);
  };
  RootModel out{ctx, model, {}, {}};
  build("e", rankE, out.rootsE);
  build("g", rankG, out.rootsG);
  out.model = model;
  return out;
}

inline GradedElement sumExp(const std::vector<GradedElement>& roots, long k = 1) {
  GradedElement s(roots.front().context());
  for (const auto& r : roots) s += expNilpotent(r * Rational(k));
  return s;
}

inline PropertyOutcome lambdaRingBruteForce(int cases, std::uint64_t seed = 11) {
  return runProperty("lambda-ring operations match explicit roots (rank <= 4)", cases, seed,
                     [](Gen& g) -> std::string {
                       const int rankE = g.uniform(1, 4), rankG = g.uniform(1, 4);
                       RootModel rm = makeRootModel(rankE, rankG);
                       const auto& E = rm.rootsE;
                       const auto& G = rm.rootsG;
                       auto ctx = rm.ctx;
                       auto pairSum = [&](const std::vector<GradedElement>& r, bool diagonal) {
                         GradedElement s(ctx);
                         for (std::size_t i = 0; i < r.size(); ++i)
                           for (std::size_t j = diagonal ? i : i + 1; j < r.size(); ++j) s += expNilpotent(r[i] + r[j]);
                         return s;
                       };
                       std::vector<GradedElement> both = E;
                       both.insert(both.end(), G.begin(), G.end());
                       const int op = g.uniform(0, 8);
                       const long k = g.uniform(2, 4);
                       std::string expr;
                       GradedElement expected(ctx);
                       switch (op) {
                         case 0: expr = "E"; expected = sumExp(E); break;
                         case 1: expr = "L2(E)"; expected = pairSum(E, false); break;
                         case 2: expr = "S2(E)"; expected = pairSum(E, true); break;
                         case 3: expr = "psi" + std::to_string(k) + "(E)"; expected = sumExp(E, k); break;
                         case 4: {
                           expr = "E*G";
                           for (const auto& a : E)
                             for (const auto& b : G) expected += expNilpotent(a + b);
                           break;
                         }
                         case 5: expr = "L2(E + G)"; expected = pairSum(both, false); break;
                         case 6: expr = "S2(E + G)"; expected = pairSum(both, true); break;
                         case 7:
                           expr = "~E*~G";
                           expected = (sumExp(E) - GradedElement::constant(ctx, Rational(rankE))) *
                                      (sumExp(G) - GradedElement::constant(ctx, Rational(rankG)));
                           break;
                         default:
                           expr = "L2(E) - S2(G) + psi2(G)";
                           expected = pairSum(E, false) - pairSum(G, true) + sumExp(G, 2);
                           break;
                       }
                       return mismatch(expr + " (ranks " + std::to_string(rankE) + "," + std::to_string(rankG) + ")",
                                       rm.model.ch(expr), expected);
                     });
}

inline PropertyOutcome symmetricTimesExterior(int cases, std::uint64_t seed = 12) {
  return runProperty("S_t(E) Lambda_{-t}(E) = 1 and both match the root products", cases, seed,
                     [](Gen& g) -> std::string {
                       const int rankE = g.uniform(1, 4), rankG = g.uniform(1, 4);
                       RootModel rm = makeRootModel(rankE, rankG, 8);
                       const std::size_t order = static_cast<std::size_t>(g.uniform(4, 7));
                       const bool useG = g.coin();
                       const auto& roots = useG ? rm.rootsG : rm.rootsE;
                       const BundleExpr e = BundleExpr::atom(useG ? "G" : "E");
                       auto one = QSeries<GradedElement>::one(order, GradedElement::one(rm.ctx));

                       // Direct products over roots: prod_i prod_r (1 - e^r q^i).
                       QSeries<GradedElement> lambda = one;
                       for (std::size_t i = 1; 2 * i < order; ++i)
                         for (const auto& r : roots)
                           lambda = lambda * (one - QSeries<GradedElement>::monomial(order, 2 * i, expNilpotent(r)));
                       auto s = lambdaProductCh(rm.model, e, ProductFamily::SWhole, order);
                       auto l = lambdaProductCh(rm.model, e, ProductFamily::LambdaMinusWhole, order);
                       if (auto f = seriesMismatch("Lambda_{-q^i} vs roots", l, lambda); !f.empty()) return f;
                       if (auto f = seriesMismatch("S_{q^i} vs 1/Lambda", s, invertSeries(lambda)); !f.empty()) return f;
                       return seriesMismatch("S Lambda = 1", s * l, one);
                     });
}

inline std::vector<PropertyOutcome> allProperties(int cases) {
  return {ringAxioms(cases),          expHomomorphism(cases),        invertUnitInverse(cases),
          extractDegreeLinear(cases), parseRoundTrip(cases),         substituteHomomorphism(cases),
          seriesRingLaws(cases),      seriesInverseInvolution(cases), seriesExpHomomorphism(cases),
          seriesMapCommutes(cases),   lambdaRingBruteForce(cases),   symmetricTimesExterior(cases)};
}

}  // namespace anomod::testing
