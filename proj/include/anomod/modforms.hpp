#pragma once

// Level-2 modular forms as exact q-expansions, weight-6 basis decomposition,
// and floating-point checks of the theta / Eisenstein transformation laws.

#include <complex>
#include <string>
#include <vector>

#include "anomod/graded_ring.hpp"
#include "anomod/qseries.hpp"

namespace anomod {

using ScalarQSeries = QSeries<Rational>;

enum class ThetaKind { Plain, One, Two, Three };

/// theta_j(0, tau) up to an explicit q^{eighths/8} prefactor:
/// value = q^{eighths/8} * series. For ThetaKind::Plain the function vanishes
/// at v = 0 and the returned data is theta'(0, tau) / (2 pi).
struct TaggedQSeries {
  int eighths = 0;
  ScalarQSeries series;
};

TaggedQSeries thetaNull(ThetaKind kind, std::size_t order);

/// theta_j(0,tau)^4 as an ordinary series in q^{1/2} (the q^{1/2} prefactor
/// of theta_1^4 becomes a shift by one half-unit).
ScalarQSeries thetaNullFourth(ThetaKind kind, std::size_t order);

/// E_2 = 1 - 24 sum sigma_1(n) q^n.
ScalarQSeries eisensteinE2(std::size_t order);

enum class LevelTwoForm { Delta1, Epsilon1, Delta2, Epsilon2 };

/// The divisor-sum expansions of delta_1, epsilon_1, delta_2, epsilon_2.
ScalarQSeries deltaEpsilon(LevelTwoForm which, std::size_t order);

struct IdentityResidual {
  std::string id;
  std::size_t residualTerms = 0;
  bool passed() const { return residualTerms == 0; }
};

/// delta/epsilon against the theta-fourth-power identities. `perturbDelta1`
/// adds q to delta_1 before comparing (harness self-test).
std::vector<IdentityResidual> verifyThetaFourIdentities(std::size_t order, bool perturbDelta1 = false);

enum class ModularBasis { GammaUpper0_2, GammaLower0_2 };

std::string toString(ModularBasis basis);

/// (b1, b2): {(8 delta_2)^3, (8 delta_2) epsilon_2} or {delta_1^3, delta_1 epsilon_1}.
std::pair<ScalarQSeries, ScalarQSeries> weightSixBasis(ModularBasis basis, std::size_t order);

struct ModularDecomposition {
  GradedElement h0;
  GradedElement h1;
  QSeries<GradedElement> residual;
  std::string basisName;

  std::size_t residualTerms() const { return totalTermCount(residual); }
};

/// Solves for h0, h1 from two pivot coefficients (q^0, q^{1/2} for the
/// Gamma^0(2) basis; q^0, q^1 for Gamma_0(2)); the residual is the input
/// minus h0 b1 + h1 b2 over every coefficient.
ModularDecomposition decomposeWeight6(const QSeries<GradedElement>& series, ModularBasis basis);

// Numeric evaluation ----------------------------------------------------------

using Complex = std::complex<double>;

/// Product formulas truncated at `terms` factors; Im tau > 0 required.
Complex thetaNumeric(ThetaKind kind, Complex v, Complex tau, int terms);
Complex eisensteinE2Numeric(Complex tau, int terms);
/// Divisor-sum series summed for n < terms (in powers of q or q^{1/2}).
Complex deltaEpsilonNumeric(LevelTwoForm which, Complex tau, int terms);
/// Evaluates an exact series at tau (q^{1/2} = e^{pi i tau}).
Complex evaluateSeries(const ScalarQSeries& s, Complex tau);

struct NumericLawResult {
  std::string lawId;
  Complex tau;
  Complex v;
  double residual = 0.0;
  double tolerance = 0.0;
  int terms = 0;
  bool passed() const { return residual < tolerance; }
};

struct NumericTolerances {
  double theta = 1e-9;
  double eisenstein = 1e-6;
};

/// theta T/S laws, E_2 T/S laws and the value E_2(i) = 3/pi, and
/// delta_2(-1/tau) = tau^2 delta_1(tau), epsilon_2(-1/tau) = tau^4 epsilon_1(tau).
/// `e2Perturbation` is added to every E_2 evaluation (harness self-test).
/// Throws std::domain_error when Im tau <= 0.
std::vector<NumericLawResult> numericTransformChecks(Complex tau, Complex v, int terms, NumericTolerances tol = {},
                                                     double e2Perturbation = 0.0);

}  // namespace anomod
