#pragma once

// Characteristic-class calculus: Chern characters of virtual bundles,
// Adams operations, multiplicative genera, Euler-class factors, and the
// q-expansions of the Witten-type products used by the anomaly module.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "anomod/bundle.hpp"
#include "anomod/graded_ring.hpp"
#include "anomod/qseries.hpp"

namespace anomod {

/// Rank and Pontryagin classes of a real bundle, p_1, p_2, ... in order.
/// The rank is a degree-0 element (possibly a polynomial in rank symbols).
struct RealBundleClasses {
  GradedElement rank;
  std::vector<GradedElement> pontryagin;
};

/// Power sums s_2, s_4, ..., s_{2*count} of the Chern roots of the
/// complexification. With roots {+-x_j}: s_{2k} = 2 * sum_j x_j^{2k}, obtained
/// from the Pontryagin classes (elementary symmetric in x_j^2) by Newton's
/// identities. Classes beyond the stored ones are zero.
std::vector<GradedElement> powerSums(const RealBundleClasses& bundle, std::size_t count);

/// Inverse of the Newton step: Pontryagin classes from pi_k = s_{2k} / 2.
std::vector<GradedElement> pontryaginFromPowerSums(const std::vector<GradedElement>& pi);

/// ch(E_C) = rank + sum_k s_{2k} / (2k)!.
GradedElement complexifiedCharacter(const RealBundleClasses& bundle);

/// A multiplicative sequence defined by an even power series g(x), g(0) = 1,
/// through the log-coefficients a_{2k} of log g(x) = sum_k a_{2k} x^{2k}.
struct GenusSpec {
  std::string name;
  std::vector<Rational> taylor;      // g(x), all powers of x
  std::vector<Rational> logarithm;   // log g(x), all powers of x

  /// (x/2) / sinh(x/2).
  static const GenusSpec& aHat();
  /// x / tanh(x).
  static const GenusSpec& lGenus();
  /// cosh(x/2); used by det^{1/2}(2 cosh(.)) up to the scalar 2^{rank/2}.
  static const GenusSpec& coshHalf();
};

/// prod_j g(x_j) = exp(sum_k a_{2k} pi_k).
GradedElement genusForm(const RealBundleClasses& bundle, const GenusSpec& spec);

enum class EulerFactorKind { ExpHalf, CoshHalf };

/// e^{c/2} or cosh(c/2) for an Euler class c.
GradedElement eulerFactor(const GradedElement& eulerClass, EulerFactorKind kind);

/// Evaluation environment for bundle expressions: a ring context plus the
/// characteristic data of every named atom.
class ChernModel {
 public:
  explicit ChernModel(ContextPtr ctx);

  const ContextPtr& context() const { return ctx_; }

  /// Registers a real atom; its character is that of the complexification.
  void defineRealAtom(const std::string& name, RealBundleClasses classes);
  /// Registers an atom directly by its Chern character.
  void defineAtom(const std::string& name, GradedElement character);
  void setEulerClass(GradedElement c) { euler_ = std::move(c); }

  bool hasAtom(const std::string& name) const { return characters_.count(name) > 0; }
  const GradedElement& atomCharacter(const std::string& name) const;
  const RealBundleClasses& realAtom(const std::string& name) const;
  const GradedElement& eulerClass() const { return euler_; }

  /// Chern character of a virtual bundle. Additive on sums, multiplicative on
  /// tensors; psi^k scales degree 2j by k^j;
  /// L2 E = (ch(E)^2 - psi^2 ch E) / 2, S2 E = (ch(E)^2 + psi^2 ch E) / 2.
  GradedElement ch(const BundleExpr& e) const;
  GradedElement ch(std::string_view expr) const { return ch(BundleExpr::parse(expr)); }

  /// Degree-0 part of ch(e).
  GradedElement rank(const BundleExpr& e) const { return ch(e).degreeZeroPart(); }

 private:
  ContextPtr ctx_;
  std::map<std::string, GradedElement> characters_;
  std::map<std::string, RealBundleClasses> real_;
  GradedElement euler_;
};

/// Generators of the standard context, in canonical order:
/// p1T p2T p3T p1F1 p2F1 p3F1 p1F2 p2F2 p3F2 c m n.
ContextPtr standardContext(int maxDegree = 12);

/// How the ranks of F1 and F2 are fixed. Unset values are symbolic; mShift
/// means m = n + mShift.
struct RankSpec {
  std::optional<long> m;
  std::optional<long> n;
  std::optional<long> mShift;

  static RankSpec symbolic() { return {}; }
  static RankSpec concrete(long m, long n) { return {m, n, std::nullopt}; }
  static RankSpec shifted(long k) { return {std::nullopt, std::nullopt, k}; }

  bool isConcrete() const { return (m && n) || (mShift && n); }
  std::optional<long> concreteM() const;
  std::optional<long> concreteN() const { return n; }
  /// Whether m - n is forced to equal k.
  bool forcesDifference(long k) const;

  /// "symbolic", "m=32,n=0", "m=n+32", "n=0" ...; parse accepts the same.
  std::string toString() const;
  static RankSpec parse(std::string_view text);

  bool operator==(const RankSpec&) const = default;
};

struct ModelOptions {
  RankSpec ranks;
  bool xiTrivial = false;
};

/// Atoms TZ (rank 10), F1 (rank m), F (alias of F1), F2 (rank n), xi (rank
/// 2, p1 = c^2), and trivial atoms m and n. A concrete rank r keeps only
/// p_i with 2i <= r; a trivial xi has c = 0.
ChernModel standardModel(const ContextPtr& ctx, const ModelOptions& options = {});

/// Families of infinite products, indexed by i >= 1:
///   SWhole:          prod S_{q^i}(E)
///   LambdaMinusHalf: prod Lambda_{-q^{i-1/2}}(E)
///   LambdaPlusHalf:  prod Lambda_{q^{i-1/2}}(E)
///   LambdaMinusWhole prod Lambda_{-q^i}(E)
///   LambdaWhole:     prod Lambda_{q^i}(E)
enum class ProductFamily { SWhole, LambdaMinusHalf, LambdaPlusHalf, LambdaWhole, LambdaMinusWhole };

/// log of the product: sum over i and k >= 1 of +-(t_i^k / k) ch(psi^k E).
QSeries<GradedElement> lambdaProductLog(const ChernModel& model, const BundleExpr& e, ProductFamily family,
                                        std::size_t order);

/// ch of the infinite product, truncated at `order` half-units.
QSeries<GradedElement> lambdaProductCh(const ChernModel& model, const BundleExpr& e, ProductFamily family,
                                       std::size_t order);

/// ch of Theta_2(T_C Z, F1_C - F2_C, xi_C):
///   S_{q^u}(~T) (x) Lambda_{-q^{v-1/2}}(~F1 - ~F2 - 2~xi)
///   (x) Lambda_{q^{r-1/2}}(~xi) (x) Lambda_{q^s}(~xi).
QSeries<GradedElement> theta2Expansion(const ChernModel& model, std::size_t order);

/// ch of Theta_1(T_C Z, V_C, xi_C):
///   S_{q^u}(~T) (x) Lambda_{q^v}(~V - 2~xi)
///   (x) Lambda_{q^{r-1/2}}(~xi) (x) Lambda_{-q^{s-1/2}}(~xi).
/// V must have an integer rank; throws UnsupportedConfiguration otherwise.
QSeries<GradedElement> theta1Expansion(const ChernModel& model, const BundleExpr& v, std::size_t order);

/// Closed forms of the first three Theta_2 coefficients as bundle expressions.
BundleExpr theta2B0();
BundleExpr theta2B1();
BundleExpr theta2B2();

/// Product of Jacobi theta quotients expanded over explicit Chern roots:
///   prod_j x_j theta'(0)/theta(x_j) * prod_{F1 pairs} theta_2(y)/theta_2(0)
///   * prod_{F2 pairs} theta_2(0)/theta_2(z)
///   * theta_2(0)^2/theta_2(u)^2 * theta_3(u)/theta_3(0) * theta_1(u)/theta_1(0),
/// with e^{2 pi i v} -> e^{root}. The result lives in a root context with
/// generators x1..x5, y1.., z1.., u (all degree 2); `pontryaginImage`
/// maps every standard generator to its value in terms of the roots so the
/// symbolic expansion can be compared after substitution.
struct ThetaQuotientExpansion {
  ContextPtr rootContext;
  QSeries<GradedElement> series;
  std::map<std::string, GradedElement> pontryaginImage;
};

/// m and n must be even and >= 0. With xiTrivial, u is still a generator but
/// the xi factors are omitted (u -> 0).
ThetaQuotientExpansion thetaQuotientExpansion(long m, long n, bool xiTrivial, std::size_t order, int maxDegree = 12);

/// Taylor coefficients of (x/2)/sinh(x/2) computed by series inversion,
/// independently of the genus logarithm route.
std::vector<Rational> halfSinhQuotientSeries(std::size_t terms);

}  // namespace anomod
