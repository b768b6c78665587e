#include "anomod/anomaly.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "anomod/errors.hpp"
#include "anomod/scalar_series.hpp"

namespace anomod {

namespace {

constexpr int kTopDegree = 12;
constexpr int kBracketDegree = 8;
constexpr std::size_t kSampleSize = 5;

using Clock = std::chrono::steady_clock;

double millisecondsSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string eulerLabel(EulerFactorKind kind) { return kind == EulerFactorKind::CoshHalf ? "cosh-half" : "exp-half"; }

VerificationReport blankReport(std::string id, std::string target, const VerificationConfig& config) {
  VerificationReport r;
  r.checkId = std::move(id);
  r.paperTarget = std::move(target);
  r.ranks = config.ranks.toString();
  r.qOrder = config.qOrder;
  r.maxDegree = config.maxDegree;
  return r;
}

void recordResidual(VerificationReport& r, const GradedElement& residual) {
  r.residualTerms = residual.termCount();
  r.residualSample = residual.sampleTerms(kSampleSize);
  r.status = residual.isZero() ? ReportStatus::Pass : ReportStatus::Fail;
}

void recordSeriesResidual(VerificationReport& r, const QSeries<GradedElement>& residual, std::size_t from) {
  r.residualTerms = 0;
  r.residualSample.clear();
  for (std::size_t h = from; h < residual.order(); ++h) {
    const GradedElement& c = residual.coefficient(h);
    r.residualTerms += c.termCount();
    for (const auto& t : c.sampleTerms(kSampleSize)) {
      if (r.residualSample.size() >= kSampleSize) break;
      r.residualSample.push_back("q^" + std::to_string(h) + "/2: " + t);
    }
  }
  r.status = r.residualTerms == 0 ? ReportStatus::Pass : ReportStatus::Fail;
}

ContextPtr contextFor(const VerificationConfig& config) { return standardContext(config.maxDegree); }

GradedElement aHat(const ChernModel& model) { return genusForm(model.realAtom("TZ"), GenusSpec::aHat()); }

/// (e^{y/24} - 1) / y as Taylor coefficients in y.
std::vector<Rational> expMinusOneOverY(std::size_t terms) {
  return scalar::divideByX([&] {
    auto e = scalar::expScaled(Rational(1, 24), terms + 1);
    e[0] = 0;
    return e;
  }());
}

// Identity data ----------------------------------------------------------------

enum class IdentityShape {
  Factorization,    // LHS terms = x * {-g A E ch W + e^{x/24} A E}^{(8)}
  ClosedQuadratic,  // LHS terms = x * Q / 24
  Bridge,           // Q / 24 = {-g A ch W + e^{x/24} A}^{(8)}
  Agw,
};

struct IdentityData {
  std::string target;
  IdentityShape shape;
  std::vector<std::string> lhsTerms;
  std::string w;
  std::string quadratic;
  bool involvesXi;
};

const char* const kQuadraticGs = "-3/8*p1T^2 + 1/2*p2T - 2*p1F1^2 + 4*p2F1 + 1/2*p1T*p1F1";
const char* const kQuadraticGsPerturbed = "-3/8*p1T^2 + 1/2*p2T - p1F1^2 + 4*p2F1 + 1/2*p1T*p1F1";
const char* const kQuadraticSw =
    "-3/8*p1T^2 + 1/2*p2T - 2*p1F1^2 + 4*p2F1 + 2*p1F2^2 - 4*p2F2 + 1/2*p1T*p1F1 - 1/2*p1T*p1F2";
const char* const kQuadraticSwPerturbed =
    "-3/8*p1T^2 + 1/2*p2T - p1F1^2 + 4*p2F1 + 2*p1F2^2 - 4*p2F2 + 1/2*p1T*p1F1 - 1/2*p1T*p1F2";

std::string joinSum(const std::vector<std::string>& terms) {
  std::string s;
  for (const auto& t : terms) {
    if (s.empty())
      s = t;
    else if (t.front() == '-')
      s += " - " + t.substr(1);
    else
      s += " + " + t;
  }
  return s;
}

IdentityData factorization(std::string target, std::vector<std::string> terms) {
  std::string w = joinSum(terms);
  return {std::move(target), IdentityShape::Factorization, std::move(terms), std::move(w), "", true};
}

IdentityData identityData(const std::string& target, bool xiTrivial) {
  static const std::vector<std::string> general = {"L2(F1)",
                                                   "S2(F2)",
                                                   "-F1*F2",
                                                   "TZ",
                                                   "(m-n-32)*(m-n-31)/2 - 2",
                                                   "-(m-n-32)*(F1-F2)",
                                                   "5*~xi*~xi",
                                                   "3*(m-n-31-F1+F2)*~xi"};
  static const std::vector<std::string> shifted = {"L2(F1)", "S2(F2)", "-F1*F2", "TZ", "-2", "5*~xi*~xi",
                                                   "3*(1-F1+F2)*~xi"};
  static const std::vector<std::string> oneBundle = {"L2(F)", "TZ", "(m-32)*(m-31)/2 - 2", "-(m-32)*F", "5*~xi*~xi",
                                                     "3*(m-31-F)*~xi"};
  static const std::vector<std::string> fixedRank = {"L2(F)", "TZ", "-2", "5*~xi*~xi", "3*(1-F)*~xi"};

  auto firstN = [](const std::vector<std::string>& v, std::size_t n) {
    return std::vector<std::string>(v.begin(), v.begin() + static_cast<long>(n));
  };
  auto noXi = [&](IdentityData d) {
    d.involvesXi = false;
    return d;
  };

  if (target == "theorem1")
    return xiTrivial ? noXi(factorization(target, firstN(general, 6))) : factorization(target, general);
  if (target == "cor1") return xiTrivial ? noXi(factorization(target, firstN(shifted, 5))) : factorization(target, shifted);
  if (target == "cor2")
    return xiTrivial ? noXi(factorization(target, firstN(oneBundle, 4))) : factorization(target, oneBundle);
  if (target == "cor3")
    return xiTrivial ? noXi(factorization(target, firstN(fixedRank, 3))) : factorization(target, fixedRank);
  if (target == "gs")
    return {target, IdentityShape::ClosedQuadratic, {"L2(F)", "TZ", "-2"}, "", kQuadraticGs, false};
  if (target == "sw")
    return {target, IdentityShape::ClosedQuadratic, firstN(shifted, 5), "", kQuadraticSw, false};
  if (target == "remark")
    return {target, IdentityShape::Bridge, {}, joinSum(firstN(shifted, 5)), kQuadraticSw, false};
  if (target == "agw") return {target, IdentityShape::Agw, {}, "", "", false};
  throw ConfigurationError("unknown identity target '" + target + "'");
}

std::string paperTargetOf(const std::string& target) {
  static const std::map<std::string, std::string> names = {
      {"theorem1", "general factorization (ranks m, n; Euler class c)"},
      {"cor1", "factorization with m = n + 32"},
      {"cor2", "factorization for a single bundle F (n = 0)"},
      {"cor3", "factorization for dim F = 32"},
      {"gs", "Green-Schwarz factorization"},
      {"sw", "Schwarz-Witten factorization"},
      {"remark", "Schwarz-Witten quadratic equals the degree-8 bracket"},
      {"agw", "Alvarez-Gaume-Witten cancellation"},
  };
  auto it = names.find(target);
  return it == names.end() ? target : it->second;
}

std::string flipTensorSign(std::string w) {
  const std::string from = "- F1*F2";
  if (auto pos = w.find(from); pos != std::string::npos) return w.replace(pos, from.size(), "+ F1*F2");
  throw std::logic_error("degree-8 bundle has no tensor term to flip");
}

}  // namespace

// Config / reports ---------------------------------------------------------------

std::string toString(EulerMode mode) {
  switch (mode) {
    case EulerMode::CoshHalf:
      return "cosh";
    case EulerMode::ExpHalf:
      return "exp";
    case EulerMode::Both:
      return "both";
  }
  return "both";
}

EulerMode parseEulerMode(std::string_view text) {
  if (text == "cosh" || text == "cosh-half") return EulerMode::CoshHalf;
  if (text == "exp" || text == "exp-half") return EulerMode::ExpHalf;
  if (text == "both") return EulerMode::Both;
  throw ParseError("euler mode must be cosh, exp or both, got '" + std::string(text) + "'");
}

void VerificationConfig::validate() const {
  if (maxDegree < kTopDegree || maxDegree % 2 != 0)
    throw ConfigurationError("max degree must be even and at least 12, got " + std::to_string(maxDegree));
  if (qOrder < 4) throw ConfigurationError("q-order must be at least 4 half-units, got " + std::to_string(qOrder));
}

std::string toString(ReportStatus status) {
  switch (status) {
    case ReportStatus::Pass:
      return "pass";
    case ReportStatus::Fail:
      return "fail";
    case ReportStatus::Info:
      return "info";
  }
  return "info";
}

nlohmann::ordered_json toJson(const VerificationReport& r, bool includeTiming) {
  nlohmann::ordered_json j;
  j["check_id"] = r.checkId;
  j["paper_target"] = r.paperTarget;
  j["status"] = toString(r.status);
  j["residual_terms"] = r.residualTerms;
  j["residual_sample"] = r.residualSample;
  j["euler_mode"] = r.eulerMode;
  j["ranks"] = r.ranks;
  j["q_order"] = r.qOrder;
  j["max_degree"] = r.maxDegree;
  if (includeTiming) j["elapsed_ms"] = std::round(r.elapsedMs * 1000.0) / 1000.0;
  if (!r.detail.empty()) j["detail"] = r.detail;
  if (r.numeric) {
    const auto& n = *r.numeric;
    j["tau"] = {n.tau.real(), n.tau.imag()};
    j["v"] = {n.v.real(), n.v.imag()};
    j["residual"] = n.residual;
    j["tolerance"] = n.tolerance;
    j["terms"] = n.terms;
  }
  return j;
}

nlohmann::ordered_json toJson(const std::vector<VerificationReport>& reports, bool includeTiming) {
  nlohmann::ordered_json doc;
  doc["reports"] = nlohmann::ordered_json::array();
  std::size_t pass = 0, fail = 0, info = 0;
  for (const auto& r : reports) {
    doc["reports"].push_back(toJson(r, includeTiming));
    (r.status == ReportStatus::Pass ? pass : r.status == ReportStatus::Fail ? fail : info)++;
  }
  doc["summary"] = {{"total", reports.size()}, {"passed", pass}, {"failed", fail}, {"info", info}};
  return doc;
}

std::string toText(const std::vector<VerificationReport>& reports) {
  std::ostringstream out;
  std::size_t fail = 0;
  for (const auto& r : reports) {
    std::string tag = r.status == ReportStatus::Pass ? "PASS" : r.status == ReportStatus::Fail ? "FAIL" : "INFO";
    out << "[" << tag << "] " << r.checkId << "  (" << r.paperTarget << ")";
    if (r.numeric) {
      out << "  residual=" << r.numeric->residual << " tol=" << r.numeric->tolerance;
    } else {
      out << "  residual_terms=" << r.residualTerms;
    }
    if (r.eulerMode != "n/a") out << " euler=" << r.eulerMode;
    out << " ranks=" << r.ranks << "\n";
    if (!r.detail.empty()) out << "       " << r.detail << "\n";
    for (const auto& s : r.residualSample) out << "       residual: " << s << "\n";
    if (r.failed()) ++fail;
  }
  out << reports.size() << " checks, " << fail << " failed\n";
  return out.str();
}

// Series ------------------------------------------------------------------------------

GradedElement anomalyClass(const ChernModel& model) {
  return model.realAtom("TZ").pontryagin[0] - model.realAtom("F1").pontryagin[0] + model.realAtom("F2").pontryagin[0];
}

namespace {

/// e^{E2(tau) * y / 24} as a q-series.
QSeries<GradedElement> eisensteinExponential(const GradedElement& y, std::size_t order) {
  QSeries<GradedElement> e2 = liftScalars(eisensteinE2(order), y.context());
  return expSeries(e2.scaledBy(y / Rational(24)));
}

QSeries<GradedElement> topDegree(const QSeries<GradedElement>& s) {
  return s.mapCoefficients([](const GradedElement& c) { return c.extractDegree(kTopDegree); });
}

}  // namespace

QSeries<GradedElement> buildP2(const VerificationConfig& config, EulerFactorKind euler, const Perturbation& faults) {
  config.validate();
  ContextPtr ctx = contextFor(config);
  ChernModel model = standardModel(ctx, config.modelOptions());
  const GradedElement prefactor = aHat(model) * eulerFactor(model.eulerClass(), euler);
  QSeries<GradedElement> full =
      (eisensteinExponential(anomalyClass(model), config.qOrder) * theta2Expansion(model, config.qOrder))
          .scaledBy(prefactor);
  QSeries<GradedElement> p2 = topDegree(full);
  if (faults.perturbP2Coefficient && p2.order() > 5)
    p2.addToCoefficient(5, GradedElement::parse(ctx, "p1T^3"));
  return p2;
}

QSeries<GradedElement> buildP1(const VerificationConfig& config) {
  config.validate();
  auto m = config.ranks.concreteM();
  auto n = config.ranks.concreteN();
  if (!m || !n) throw UnsupportedConfiguration("P1 needs concrete ranks (e.g. --ranks m=4,n=2)");
  ContextPtr ctx = contextFor(config);
  ChernModel model = standardModel(ctx, config.modelOptions());

  // det^{1/2}(2 cosh) of F1 - F2: 2^{[m/2] - [n/2]} prod cosh(y/2) / prod cosh(z/2).
  const long twoPower = *m / 2 - *n / 2;
  Rational scalar = twoPower >= 0 ? Rational(mpz_class(1) << static_cast<unsigned>(twoPower))
                                  : Rational(1) / Rational(mpz_class(1) << static_cast<unsigned>(-twoPower));
  GradedElement det = genusForm(model.realAtom("F1"), GenusSpec::coshHalf()) *
                      invertUnit(genusForm(model.realAtom("F2"), GenusSpec::coshHalf())) * scalar;
  GradedElement coshC = eulerFactor(model.eulerClass(), EulerFactorKind::CoshHalf);
  GradedElement prefactor = aHat(model) * det * invertUnit(coshC * coshC);

  QSeries<GradedElement> full = (eisensteinExponential(anomalyClass(model), config.qOrder) *
                                 theta1Expansion(model, BundleExpr::parse("F1 - F2"), config.qOrder))
                                    .scaledBy(prefactor);
  return topDegree(full);
}

// Identities ---------------------------------------------------------------------------

const std::vector<std::string>& identityTargets() {
  static const std::vector<std::string> t = {"agw", "gs", "sw", "remark", "theorem1", "cor1", "cor2", "cor3"};
  return t;
}

VerificationConfig defaultConfigFor(const std::string& target) {
  VerificationConfig c;
  if (target == "cor1") c.ranks = RankSpec::shifted(32);
  if (target == "cor2") c.ranks = RankSpec{std::nullopt, 0, std::nullopt};
  if (target == "cor3") c.ranks = RankSpec::concrete(32, 0);
  if (target == "gs") c.ranks = RankSpec::concrete(32, 0), c.xiTrivial = true;
  if (target == "sw" || target == "remark") c.ranks = RankSpec::shifted(32), c.xiTrivial = true;
  return c;
}

void checkHypotheses(const std::string& target, const VerificationConfig& config) {
  const RankSpec& r = config.ranks;
  auto fail = [&](const std::string& why) {
    throw ConfigurationError("target '" + target + "' " + why + " (got ranks " + r.toString() +
                             (config.xiTrivial ? ", trivial xi)" : ", generic xi)"));
  };
  const bool nZero = r.n && *r.n == 0;
  if (target == "cor1" || target == "sw" || target == "remark") {
    if (!r.forcesDifference(32)) fail("requires m = n + 32");
  }
  if (target == "cor2" && !nZero) fail("requires n = 0");
  if ((target == "cor3" || target == "gs") && !(nZero && r.forcesDifference(32))) fail("requires m = 32, n = 0");
  if ((target == "gs" || target == "sw") && !config.xiTrivial) fail("requires trivial xi");
  identityData(target, config.xiTrivial);  // rejects unknown targets
}

IdentitySides identitySides(const std::string& target, const VerificationConfig& config, EulerFactorKind euler,
                            const Perturbation& faults) {
  config.validate();
  const IdentityData data = identityData(target, config.xiTrivial);
  ContextPtr ctx = contextFor(config);
  ChernModel model = standardModel(ctx, config.modelOptions());
  const GradedElement a = aHat(model);
  const GradedElement x = anomalyClass(model);

  if (data.shape == IdentityShape::Agw) {
    const GradedElement l = genusForm(model.realAtom("TZ"), GenusSpec::lGenus());
    GradedElement lhs = l.extractDegree(kTopDegree) -
                        (a * model.ch("TZ")).extractDegree(kTopDegree) * Rational(faults.agwTzCoefficient) +
                        a.extractDegree(kTopDegree) * Rational(16);
    return {std::move(lhs), GradedElement::zero(ctx)};
  }

  const GradedElement ae = a * eulerFactor(model.eulerClass(), euler);
  GradedElement lhs(ctx);
  for (const auto& t : data.lhsTerms) lhs += (ae * model.ch(t)).extractDegree(kTopDegree);

  std::string quadraticText = data.quadratic;
  if (faults.perturbClosedQuadratic)
    quadraticText = quadraticText == kQuadraticGs ? kQuadraticGsPerturbed : kQuadraticSwPerturbed;

  if (data.shape == IdentityShape::ClosedQuadratic) {
    GradedElement q = GradedElement::parse(ctx, quadraticText);
    return {std::move(lhs), x * q / Rational(24)};
  }

  std::string w = faults.flipTensorSignInW ? flipTensorSign(data.w) : data.w;
  const auto g = expMinusOneOverY(static_cast<std::size_t>(config.maxDegree));
  GradedElement bracket =
      (-(applyUnivariateSeries(g, x) * ae * model.ch(w)) + expNilpotent(x / Rational(24)) * ae).extractDegree(kBracketDegree);

  if (data.shape == IdentityShape::Bridge) {
    GradedElement q = GradedElement::parse(ctx, quadraticText);
    return {q / Rational(24), std::move(bracket)};
  }
  return {std::move(lhs), x * bracket};
}

IdentitySides factorizationSides(const VerificationConfig& config, EulerFactorKind euler) {
  return identitySides("theorem1", config, euler);
}

std::vector<VerificationReport> verifyIdentity(const std::string& target, const VerificationConfig& config,
                                               const Perturbation& faults) {
  config.validate();
  checkHypotheses(target, config);
  const IdentityData data = identityData(target, config.xiTrivial);

  std::vector<EulerFactorKind> modes;
  if (!data.involvesXi || config.eulerMode == EulerMode::CoshHalf || config.eulerMode == EulerMode::Both)
    modes.push_back(EulerFactorKind::CoshHalf);
  if (data.involvesXi && (config.eulerMode == EulerMode::ExpHalf || config.eulerMode == EulerMode::Both))
    modes.push_back(EulerFactorKind::ExpHalf);

  std::vector<VerificationReport> out;
  for (EulerFactorKind mode : modes) {
    const auto start = Clock::now();
    std::string id = target;
    if (data.involvesXi) id += "." + eulerLabel(mode);
    else if (target.rfind("cor", 0) == 0 || target == "theorem1") id += ".trivial-xi";
    VerificationReport r = blankReport(id, paperTargetOf(target), config);
    if (data.involvesXi) r.eulerMode = eulerLabel(mode);
    IdentitySides sides = identitySides(target, config, mode, faults);
    recordResidual(r, sides.lhs - sides.rhs);
    if (data.involvesXi && mode == EulerFactorKind::ExpHalf)
      r.detail = "exp-half reading: odd powers of c cannot reach degrees 8 or 12, so it agrees with cosh-half";
    r.elapsedMs = millisecondsSince(start);
    out.push_back(std::move(r));
  }
  return out;
}

// Derivation pipeline ----------------------------------------------------------------------

std::vector<VerificationReport> verifyTheta2ClosedForms(const VerificationConfig& config) {
  config.validate();
  const auto start = Clock::now();
  ContextPtr ctx = contextFor(config);
  ChernModel model = standardModel(ctx, config.modelOptions());
  const auto series = theta2Expansion(model, std::max<std::size_t>(config.qOrder, 3));
  const BundleExpr closed[3] = {theta2B0(), theta2B1(), theta2B2()};
  std::vector<VerificationReport> out;
  for (std::size_t h = 0; h < 3; ++h) {
    VerificationReport r = blankReport("theta2.B" + std::to_string(h), "closed forms of the Theta_2 coefficients", config);
    recordResidual(r, series.coefficient(h) - model.ch(closed[h]));
    r.detail = "B" + std::to_string(h) + " = " + closed[h].toString();
    out.push_back(std::move(r));
  }
  out.back().elapsedMs = millisecondsSince(start);
  return out;
}

VerificationReport verifyP2Modularity(const VerificationConfig& config, const Perturbation& faults) {
  const auto start = Clock::now();
  VerificationReport r = blankReport("p2-modularity", "P2 lies in the weight-6 Gamma^0(2) span", config);
  r.eulerMode = "cosh-half";
  ModularDecomposition d = decomposeWeight6(buildP2(config, EulerFactorKind::CoshHalf, faults), ModularBasis::GammaUpper0_2);
  recordSeriesResidual(r, d.residual, 0);
  r.detail = "basis " + d.basisName + "; residual checked at orders 2.." + std::to_string(config.qOrder - 1) +
             " (half-units)";
  r.elapsedMs = millisecondsSince(start);
  return r;
}

VerificationReport verifyP1Modularity(const VerificationConfig& config) {
  const auto start = Clock::now();
  VerificationReport r = blankReport("p1-modularity." + config.ranks.toString() + (config.xiTrivial ? ".trivial-xi" : ""),
                                     "P1 lies in the weight-6 Gamma_0(2) span", config);
  ModularDecomposition d = decomposeWeight6(buildP1(config), ModularBasis::GammaLower0_2);
  recordSeriesResidual(r, d.residual, 0);
  r.detail = "basis " + d.basisName;
  r.elapsedMs = millisecondsSince(start);
  return r;
}

std::vector<VerificationReport> verifyCoefficientEquations(const VerificationConfig& config, const Perturbation& faults) {
  config.validate();
  const auto start = Clock::now();
  ContextPtr ctx = contextFor(config);
  ChernModel model = standardModel(ctx, config.modelOptions());
  const QSeries<GradedElement> p2 = buildP2(config);
  const GradedElement& a0 = p2.coefficient(0);
  const GradedElement& a1 = p2.coefficient(1);
  const GradedElement& a2 = p2.coefficient(2);
  std::vector<VerificationReport> out;
  auto report = [&](std::string id, std::string target) {
    VerificationReport r = blankReport("coeff-eqs." + std::move(id), std::move(target), config);
    r.eulerMode = "cosh-half";
    return r;
  };

  // Basis coefficients at q^0, q^{1/2}, q^1.
  {
    VerificationReport r = report("basis", "leading coefficients of (8 delta2)^3 and (8 delta2) epsilon2");
    auto [b1, b2] = weightSixBasis(ModularBasis::GammaUpper0_2, 3);
    const Rational expected1[3] = {-1, -72, -1800};
    const Rational expected2[3] = {0, -1, -32};
    std::size_t mismatches = 0;
    for (std::size_t h = 0; h < 3; ++h) {
      if (b1.coefficient(h) != expected1[h]) ++mismatches, r.residualSample.push_back("(8 delta2)^3 at q^" + std::to_string(h) + "/2");
      if (b2.coefficient(h) != expected2[h]) ++mismatches, r.residualSample.push_back("(8 delta2) epsilon2 at q^" + std::to_string(h) + "/2");
    }
    r.residualTerms = mismatches;
    r.status = mismatches == 0 ? ReportStatus::Pass : ReportStatus::Fail;
    r.detail = "(8 delta2)^3 = " + toString(b1.coefficient(0)) + " " + toString(b1.coefficient(1)) + " q^1/2 " +
               toString(b1.coefficient(2)) + " q + ...; (8 delta2) epsilon2 = " + toString(b2.coefficient(1)) +
               " q^1/2 " + toString(b2.coefficient(2)) + " q + ...";
    out.push_back(std::move(r));
  }

  const ModularDecomposition d = decomposeWeight6(p2, ModularBasis::GammaUpper0_2);
  {
    VerificationReport r = report("h0", "q^0 coefficient equals -h0");
    recordResidual(r, a0 + d.h0);
    out.push_back(std::move(r));
  }
  {
    VerificationReport r = report("h1", "q^1/2 coefficient equals -h1 - 72 h0");
    recordResidual(r, a1 - (-d.h1 - d.h0 * Rational(72)));
    out.push_back(std::move(r));
  }
  {
    VerificationReport r = report("q1", "q^1 coefficient equals -32 h1 - 1800 h0");
    recordResidual(r, a2 - (-d.h1 * Rational(32) - d.h0 * Rational(1800)));
    out.push_back(std::move(r));
  }

  // Closed-form coefficients with the engine's q^1 prefactor -x.
  const GradedElement x = anomalyClass(model);
  const GradedElement base =
      expNilpotent(x / Rational(24)) * aHat(model) * eulerFactor(model.eulerClass(), EulerFactorKind::CoshHalf);
  const GradedElement chB0 = model.ch(theta2B0()), chB1 = model.ch(theta2B1()), chB2 = model.ch(theta2B2());
  auto top = [](const GradedElement& e) { return e.extractDegree(kTopDegree); };
  {
    VerificationReport r = report("closed-q1", "q^1 coefficient from B0, B2 with prefactor -(p1T - p1F1 + p1F2)");
    recordResidual(r, top(base * (chB2 - x * chB0)) - a2);
    out.push_back(std::move(r));
  }
  {
    VerificationReport r = report("chain", "combined relation with 32 B1 - " + std::to_string(faults.chainConstant) + " B0");
    GradedElement lhs = top(base * (chB2 - x * chB0));
    GradedElement rhs = top(base * (chB1 * Rational(32) - chB0 * Rational(faults.chainConstant)));
    recordResidual(r, lhs - rhs);
    out.push_back(std::move(r));
  }
  {
    VerificationReport r = report("combination", "B2 - 32 B1 + 504 B0 equals the degree-8 bundle");
    const IdentityData data = identityData("theorem1", config.xiTrivial);
    recordResidual(r, model.ch(theta2B2()) - model.ch(theta2B1()) * Rational(32) + model.ch(theta2B0()) * Rational(504) -
                          model.ch(data.w));
    out.push_back(std::move(r));
  }
  {
    VerificationReport r = report("printed-sign", "q^1 relation with the printed prefactor -(p1T + p1F1 - p1F2)");
    const GradedElement printed = model.realAtom("TZ").pontryagin[0] + model.realAtom("F1").pontryagin[0] -
                                  model.realAtom("F2").pontryagin[0];
    const GradedElement residual = top(base * (chB2 - printed * chB0)) - a2;
    r.residualTerms = residual.termCount();
    r.residualSample = residual.sampleTerms(kSampleSize);
    r.status = ReportStatus::Info;
    r.detail = residual.isZero()
                   ? "the printed prefactor also closes the relation"
                   : "finding: the printed prefactor leaves " + std::to_string(residual.termCount()) +
                         " residual terms; the engine prefactor -(p1T - p1F1 + p1F2) closes the chain exactly";
    out.push_back(std::move(r));
  }
  out.back().elapsedMs = millisecondsSince(start);
  return out;
}

VerificationReport verifyChernRoots(long m, long n, bool xiTrivial) {
  const auto start = Clock::now();
  constexpr std::size_t order = 4;  // through q^{3/2}
  VerificationConfig config;
  config.ranks = RankSpec::concrete(m, n);
  config.xiTrivial = xiTrivial;
  config.qOrder = order;
  VerificationReport r = blankReport("chern-roots." + config.ranks.toString(),
                                     "A-hat cosh(c/2) ch(Theta_2) equals the theta-quotient over Chern roots", config);
  r.eulerMode = "cosh-half";

  ContextPtr ctx = contextFor(config);
  ChernModel model = standardModel(ctx, config.modelOptions());
  const GradedElement prefactor = aHat(model) * eulerFactor(model.eulerClass(), EulerFactorKind::CoshHalf);
  const QSeries<GradedElement> symbolic = theta2Expansion(model, order).scaledBy(prefactor);
  const ThetaQuotientExpansion roots = thetaQuotientExpansion(m, n, xiTrivial, order, config.maxDegree);
  const QSeries<GradedElement> image = symbolic.mapCoefficients([&](const GradedElement& e) {
    return substitute(e, roots.pontryaginImage, roots.rootContext);
  });
  recordSeriesResidual(r, image - roots.series, 0);
  r.elapsedMs = millisecondsSince(start);
  return r;
}

std::vector<VerificationReport> verifyThetaFour(std::size_t qOrder, const Perturbation& faults) {
  const auto start = Clock::now();
  VerificationConfig config;
  config.qOrder = qOrder;
  std::vector<VerificationReport> out;
  for (const auto& res : verifyThetaFourIdentities(qOrder, faults.perturbDelta1)) {
    VerificationReport r = blankReport("theta4." + res.id, "theta-fourth-power identity", config);
    r.ranks = "n/a";
    r.residualTerms = res.residualTerms;
    r.status = res.passed() ? ReportStatus::Pass : ReportStatus::Fail;
    out.push_back(std::move(r));
  }

  struct Expected {
    LevelTwoForm form;
    const char* name;
    std::vector<std::pair<std::size_t, Rational>> coefficients;
  };
  const std::vector<Expected> expected = {
      {LevelTwoForm::Delta1, "delta1", {{0, Rational(1, 4)}, {2, 6}, {4, 6}}},
      {LevelTwoForm::Epsilon1, "epsilon1", {{0, Rational(1, 16)}, {2, -1}, {4, 7}}},
      {LevelTwoForm::Delta2, "delta2", {{0, Rational(-1, 8)}, {1, -3}}},
      {LevelTwoForm::Epsilon2, "epsilon2", {{0, 0}, {1, 1}, {2, 8}}},
  };
  for (const auto& e : expected) {
    VerificationReport r = blankReport("series." + std::string(e.name), "leading divisor-sum coefficients", config);
    r.ranks = "n/a";
    ScalarQSeries s = deltaEpsilon(e.form, qOrder);
    if (faults.perturbDelta1 && e.form == LevelTwoForm::Delta1) s.addToCoefficient(2, Rational(1));
    std::string shown;
    for (const auto& [h, c] : e.coefficients) {
      if (s.coefficient(h) != c) {
        ++r.residualTerms;
        r.residualSample.push_back("q^" + std::to_string(h) + "/2: got " + toString(s.coefficient(h)) + ", expected " +
                                   toString(c));
      }
      shown += (shown.empty() ? "" : ", ") + toString(s.coefficient(h));
    }
    r.status = r.residualTerms == 0 ? ReportStatus::Pass : ReportStatus::Fail;
    r.detail = "leading coefficients " + shown;
    out.push_back(std::move(r));
  }
  out.back().elapsedMs = millisecondsSince(start);
  return out;
}

std::vector<VerificationReport> verifyNumericLaws(std::complex<double> tau, std::complex<double> v, int terms,
                                                  NumericTolerances tol, const Perturbation& faults) {
  const auto start = Clock::now();
  std::vector<VerificationReport> out;
  for (const auto& law : numericTransformChecks(tau, v, terms, tol, faults.e2Perturbation)) {
    std::ostringstream point;
    point << "tau=" << law.tau.real() << (law.tau.imag() < 0 ? "" : "+") << law.tau.imag() << "i";
    VerificationReport r;
    r.checkId = "numeric." + law.lawId + "@" + point.str();
    r.paperTarget = "transformation law " + law.lawId;
    r.ranks = "n/a";
    r.status = law.passed() ? ReportStatus::Pass : ReportStatus::Fail;
    r.residualTerms = law.passed() ? 0 : 1;
    r.numeric = NumericDetail{law.tau, law.v, law.residual, law.tolerance, law.terms};
    out.push_back(std::move(r));
  }
  if (!out.empty()) out.back().elapsedMs = millisecondsSince(start);
  return out;
}

VerificationReport verifySpecializationCoherence(const VerificationConfig& config) {
  const auto start = Clock::now();
  VerificationReport r = blankReport("specialization", "m -> n + 32, c -> 0 commutes with the factorization", config);
  r.eulerMode = "cosh-half";
  VerificationConfig general = config;
  general.ranks = RankSpec::symbolic();
  general.xiTrivial = false;
  VerificationConfig special = general;
  special.ranks = RankSpec::shifted(32);
  special.xiTrivial = true;

  const IdentitySides g = identitySides("theorem1", general, EulerFactorKind::CoshHalf);
  const IdentitySides s = identitySides("cor1", special, EulerFactorKind::CoshHalf);
  ContextPtr ctx = g.lhs.context();
  const std::map<std::string, GradedElement> subst = {
      {"m", GradedElement::generator(ctx, "n") + GradedElement::constant(ctx, Rational(32))},
      {"c", GradedElement::zero(ctx)}};
  recordResidual(r, (substitute(g.lhs, subst) - s.lhs) + (substitute(g.rhs, subst) - s.rhs));
  r.elapsedMs = millisecondsSince(start);
  return r;
}

// Suite -------------------------------------------------------------------------------------

std::vector<SuiteItem> defaultSuite(const VerificationConfig& base) {
  std::vector<SuiteItem> items;
  auto with = [&](const std::string& check, RankSpec ranks, bool xiTrivial) {
    VerificationConfig c = base;
    c.ranks = ranks;
    c.xiTrivial = xiTrivial;
    items.push_back({check, c});
  };
  for (const auto& t : identityTargets()) {
    VerificationConfig d = defaultConfigFor(t);
    with(t, d.ranks, d.xiTrivial);
    if (t == "theorem1" || t.rfind("cor", 0) == 0) with(t, d.ranks, true);
  }
  with("specialization", RankSpec::symbolic(), false);
  with("theta2", RankSpec::symbolic(), false);
  with("p2-modularity", RankSpec::symbolic(), false);
  with("coeff-eqs", RankSpec::symbolic(), false);
  with("chern-roots", RankSpec::concrete(4, 2), false);
  with("p1-modularity", RankSpec::concrete(4, 2), false);
  with("p1-modularity", RankSpec::concrete(32, 0), true);
  with("theta4", RankSpec::symbolic(), false);
  with("numeric", RankSpec::symbolic(), false);
  return items;
}

std::vector<VerificationReport> runCheck(const std::string& check, const VerificationConfig& config) {
  config.validate();
  const auto& targets = identityTargets();
  if (std::find(targets.begin(), targets.end(), check) != targets.end()) return verifyIdentity(check, config);
  if (check == "specialization") return {verifySpecializationCoherence(config)};
  if (check == "theta2") return verifyTheta2ClosedForms(config);
  if (check == "p2-modularity") return {verifyP2Modularity(config)};
  if (check == "coeff-eqs") return verifyCoefficientEquations(config);
  if (check == "p1-modularity") return {verifyP1Modularity(config)};
  if (check == "chern-roots") {
    auto m = config.ranks.concreteM();
    auto n = config.ranks.concreteN();
    if (!m || !n) throw UnsupportedConfiguration("chern-roots needs concrete ranks");
    return {verifyChernRoots(*m, *n, config.xiTrivial)};
  }
  if (check == "theta4") return verifyThetaFour(config.qOrder);
  if (check == "numeric") {
    std::vector<VerificationReport> out;
    for (std::complex<double> tau : {std::complex<double>(0.0, 1.0), std::complex<double>(0.1, 1.2)}) {
      for (auto& r : verifyNumericLaws(tau, {0.3, 0.1}, 64)) {
        bool seen = std::any_of(out.begin(), out.end(), [&](const auto& o) { return o.checkId == r.checkId; });
        if (!seen) out.push_back(std::move(r));
      }
    }
    return out;
  }
  throw ConfigurationError("unknown check '" + check + "'");
}

std::vector<VerificationReport> runSuite(const std::vector<SuiteItem>& items) {
  std::vector<VerificationReport> out;
  for (const auto& item : items) {
    auto part = runCheck(item.check, item.config);
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return out;
}

std::vector<VerificationReport> selfTest() {
  struct Injection {
    std::string id;
    std::string description;
    std::function<std::vector<VerificationReport>()> run;
  };
  auto cfg = [](const std::string& target) {
    VerificationConfig c = defaultConfigFor(target);
    c.eulerMode = EulerMode::CoshHalf;
    return c;
  };
  const std::vector<Injection> injections = {
      {"delta1-plus-q", "q added to delta1 in the theta-fourth identity",
       [] {
         Perturbation f;
         f.perturbDelta1 = true;
         return verifyThetaFour(12, f);
       }},
      {"flipped-tensor-sign", "sign of F1*F2 flipped in the degree-8 bundle",
       [&] {
         Perturbation f;
         f.flipTensorSignInW = true;
         return verifyIdentity("theorem1", cfg("theorem1"), f);
       }},
      {"perturbed-p2", "stray monomial added to one P2 coefficient",
       [] {
         Perturbation f;
         f.perturbP2Coefficient = true;
         return std::vector<VerificationReport>{verifyP2Modularity(VerificationConfig{}, f)};
       }},
      {"gs-quadratic", "one coefficient of the Green-Schwarz quadratic changed",
       [&] {
         Perturbation f;
         f.perturbClosedQuadratic = true;
         return verifyIdentity("gs", cfg("gs"), f);
       }},
      {"sw-quadratic", "one coefficient of the Schwarz-Witten quadratic changed",
       [&] {
         Perturbation f;
         f.perturbClosedQuadratic = true;
         return verifyIdentity("sw", cfg("sw"), f);
       }},
      {"agw-coefficient", "tangent-bundle weight 8 replaced by 7",
       [&] {
         Perturbation f;
         f.agwTzCoefficient = 7;
         return verifyIdentity("agw", cfg("agw"), f);
       }},
      {"chain-constant", "B0 weight 504 replaced by 503 in the combined relation",
       [] {
         Perturbation f;
         f.chainConstant = 503;
         return verifyCoefficientEquations(VerificationConfig{}, f);
       }},
      {"e2-offset", "1e-3 added to every numeric E2 evaluation",
       [] {
         Perturbation f;
         f.e2Perturbation = 1e-3;
         return verifyNumericLaws({0.0, 1.0}, {0.3, 0.1}, 64, {}, f);
       }},
  };

  std::vector<VerificationReport> out;
  for (const auto& inj : injections) {
    const auto start = Clock::now();
    VerificationReport r;
    r.checkId = "self-test." + inj.id;
    r.paperTarget = "fault injection: " + inj.description;
    r.ranks = "n/a";
    std::size_t failures = 0;
    for (const auto& inner : inj.run())
      if (inner.failed()) ++failures;
    r.status = failures > 0 ? ReportStatus::Pass : ReportStatus::Fail;
    r.detail = failures > 0 ? "detected (" + std::to_string(failures) + " failing checks)" : "NOT detected";
    r.elapsedMs = millisecondsSince(start);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace anomod
