#pragma once

// Verification of the anomaly-factorization identities: builds the
// form-valued q-series, decomposes them in the level-2 modular bases, and
// checks every target identity exactly in the free graded ring.

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "anomod/charclass.hpp"
#include "anomod/graded_ring.hpp"
#include "anomod/modforms.hpp"
#include "anomod/qseries.hpp"

namespace anomod {

enum class EulerMode { CoshHalf, ExpHalf, Both };

std::string toString(EulerMode mode);
/// Accepts "cosh", "exp", "both" (and "cosh-half", "exp-half").
EulerMode parseEulerMode(std::string_view text);

struct VerificationConfig {
  RankSpec ranks;
  bool xiTrivial = false;
  EulerMode eulerMode = EulerMode::Both;
  int maxDegree = 12;
  std::size_t qOrder = 12;

  /// Throws ConfigurationError: maxDegree must be even and >= 12, qOrder >= 4.
  void validate() const;
  ModelOptions modelOptions() const { return {ranks, xiTrivial}; }
};

enum class ReportStatus { Pass, Fail, Info };
std::string toString(ReportStatus status);

struct NumericDetail {
  std::complex<double> tau;
  std::complex<double> v;
  double residual = 0.0;
  double tolerance = 0.0;
  int terms = 0;
};

struct VerificationReport {
  std::string checkId;
  std::string paperTarget;
  ReportStatus status = ReportStatus::Info;
  std::size_t residualTerms = 0;
  std::vector<std::string> residualSample;
  std::string eulerMode = "n/a";
  std::string ranks = "symbolic";
  std::size_t qOrder = 0;
  int maxDegree = 12;
  double elapsedMs = 0.0;
  std::string detail;
  std::optional<NumericDetail> numeric;

  bool failed() const { return status == ReportStatus::Fail; }
};

/// One JSON object with the keys check_id, paper_target, status,
/// residual_terms, residual_sample, euler_mode, ranks, q_order, max_degree,
/// elapsed_ms (plus detail and numeric data when present).
nlohmann::ordered_json toJson(const VerificationReport& report, bool includeTiming = true);
/// {"reports": [...], "summary": {...}}.
nlohmann::ordered_json toJson(const std::vector<VerificationReport>& reports, bool includeTiming = true);
/// One line per report.
std::string toText(const std::vector<VerificationReport>& reports);

/// Deliberate faults used by the self-test to prove that checks can fail.
struct Perturbation {
  bool flipTensorSignInW = false;     // -F1*F2 -> +F1*F2 in the degree-8 bundle
  bool perturbClosedQuadratic = false;  // changes one coefficient of the closed quadratic forms
  int agwTzCoefficient = 8;
  long chainConstant = 504;           // the B0 weight in the combined relation
  bool perturbP2Coefficient = false;  // adds a stray monomial to one P2 coefficient
  bool perturbDelta1 = false;         // adds q to delta_1
  double e2Perturbation = 0.0;        // added to numeric E_2 evaluations
};

// Form-valued q-series ----------------------------------------------------------

/// x = p1(TZ) - p1(F1) + p1(F2) in the model.
GradedElement anomalyClass(const ChernModel& model);

/// {e^{E2 x / 24} A-hat(TZ) E(c) ch(Theta_2)}^{(12)} coefficient-wise, with E
/// = cosh(c/2) (or e^{c/2}).
QSeries<GradedElement> buildP2(const VerificationConfig& config, EulerFactorKind euler = EulerFactorKind::CoshHalf,
                               const Perturbation& faults = {});

/// {e^{E2 x / 24} A-hat(TZ) det^{1/2}(2 cosh) / cosh^2(c/2) ch(Theta_1)}^{(12)}
/// for V = F1 - F2. Needs concrete ranks (UnsupportedConfiguration otherwise).
QSeries<GradedElement> buildP1(const VerificationConfig& config);

// Identities ----------------------------------------------------------------------

/// Identity targets in canonical order.
const std::vector<std::string>& identityTargets();

/// The configuration whose hypotheses a target assumes (ranks, xi).
VerificationConfig defaultConfigFor(const std::string& target);

/// Throws ConfigurationError if the configuration contradicts the target's
/// hypotheses (e.g. the Green-Schwarz check needs m = 32, n = 0, trivial xi).
void checkHypotheses(const std::string& target, const VerificationConfig& config);

struct IdentitySides {
  GradedElement lhs;
  GradedElement rhs;
};

/// Left and right side of a target identity under one Euler factor.
IdentitySides identitySides(const std::string& target, const VerificationConfig& config, EulerFactorKind euler,
                            const Perturbation& faults = {});

/// The general factorization: LHS = the degree-12 combination, RHS = x times
/// the degree-8 bracket with the degree-8 bundle W.
IdentitySides factorizationSides(const VerificationConfig& config, EulerFactorKind euler);

/// One report per applicable Euler mode (one report when xi is trivial or
/// the identity does not involve xi).
std::vector<VerificationReport> verifyIdentity(const std::string& target, const VerificationConfig& config,
                                               const Perturbation& faults = {});

// Derivation pipeline ---------------------------------------------------------

/// Engine-computed q^0, q^{1/2}, q^1 coefficients of ch(Theta_2) against the
/// closed forms B0, B1, B2.
std::vector<VerificationReport> verifyTheta2ClosedForms(const VerificationConfig& config);

/// Residual of the Gamma^0(2) decomposition of P2 at every order.
VerificationReport verifyP2Modularity(const VerificationConfig& config, const Perturbation& faults = {});

/// Residual of the Gamma_0(2) decomposition of P1 (concrete ranks).
VerificationReport verifyP1Modularity(const VerificationConfig& config);

/// The chain from the leading coefficients of P2 to the combined relation,
/// including an info record comparing the printed q^1 prefactor.
std::vector<VerificationReport> verifyCoefficientEquations(const VerificationConfig& config,
                                                           const Perturbation& faults = {});

/// A-hat cosh ch(Theta_2) against the theta-quotient over explicit roots,
/// through q^{3/2}. Ranks must be concrete and even.
VerificationReport verifyChernRoots(long m, long n, bool xiTrivial);

/// Theta-fourth identities and the leading delta/epsilon coefficients.
std::vector<VerificationReport> verifyThetaFour(std::size_t qOrder, const Perturbation& faults = {});

/// All numeric transformation laws at one point.
std::vector<VerificationReport> verifyNumericLaws(std::complex<double> tau, std::complex<double> v, int terms,
                                                  NumericTolerances tol = {}, const Perturbation& faults = {});

/// Substituting m -> n + 32, c -> 0 into the general sides equals the
/// trivial-xi, m = n + 32 sides computed directly.
VerificationReport verifySpecializationCoherence(const VerificationConfig& config);

// Suite -----------------------------------------------------------------------

struct SuiteItem {
  std::string check;  // agw, gs, ..., theta2, p2-modularity, coeff-eqs, chern-roots, theta4, ...
  VerificationConfig config;
};

/// The full matrix run by `verify all`.
std::vector<SuiteItem> defaultSuite(const VerificationConfig& base = {});

/// Runs every item in order; an empty list gives an empty result.
std::vector<VerificationReport> runSuite(const std::vector<SuiteItem>& items);

/// Runs one named check (a target, or a pipeline stage) under `config`.
std::vector<VerificationReport> runCheck(const std::string& check, const VerificationConfig& config);

/// Fault injections; each report passes iff the injected fault was detected.
std::vector<VerificationReport> selfTest();

}  // namespace anomod
