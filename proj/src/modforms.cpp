#include "anomod/modforms.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "anomod/errors.hpp"

namespace anomod {

namespace {

// 1 + sign * q^{h/2}
ScalarQSeries linear(std::size_t order, std::size_t h, int sign) {
  ScalarQSeries s = ScalarQSeries::one(order, Rational(0));
  if (h < order) s.setCoefficient(h, Rational(sign));
  return s;
}

ScalarQSeries productOver(std::size_t order, bool half, int sign, int power) {
  ScalarQSeries s = ScalarQSeries::one(order, Rational(0));
  for (std::size_t j = 1;; ++j) {
    std::size_t h = half ? 2 * j - 1 : 2 * j;
    if (h >= order) break;
    for (int p = 0; p < power; ++p) s = s * linear(order, h, sign);
  }
  return s;
}

long sigmaOdd(long n) {
  long s = 0;
  for (long d = 1; d <= n; ++d)
    if (n % d == 0 && d % 2 == 1) s += d;
  return s;
}

long sigma1(long n) {
  long s = 0;
  for (long d = 1; d <= n; ++d)
    if (n % d == 0) s += d;
  return s;
}

long signedCubeSum(long n) {
  long s = 0;
  for (long d = 1; d <= n; ++d)
    if (n % d == 0) s += (d % 2 == 0 ? 1 : -1) * d * d * d;
  return s;
}

long oddCofactorCubeSum(long n) {
  long s = 0;
  for (long d = 1; d <= n; ++d)
    if (n % d == 0 && (n / d) % 2 == 1) s += d * d * d;
  return s;
}

}  // namespace

TaggedQSeries thetaNull(ThetaKind kind, std::size_t order) {
  if (order < 1) throw std::invalid_argument("q-order must be >= 1");
  const ScalarQSeries eta = productOver(order, false, -1, 1);  // prod (1 - q^j)
  switch (kind) {
    case ThetaKind::Plain:
      return {1, eta * productOver(order, false, -1, 2)};
    case ThetaKind::One:
      return {1, eta * productOver(order, false, +1, 2) * Rational(2)};
    case ThetaKind::Two:
      return {0, eta * productOver(order, true, -1, 2)};
    case ThetaKind::Three:
      return {0, eta * productOver(order, true, +1, 2)};
  }
  throw std::logic_error("unknown theta kind");
}

ScalarQSeries thetaNullFourth(ThetaKind kind, std::size_t order) {
  TaggedQSeries t = thetaNull(kind, order);
  ScalarQSeries sq = t.series * t.series;
  ScalarQSeries fourth = sq * sq;
  // q^{4 * eighths / 8} = q^{eighths / 2}: a shift by `eighths` half-units.
  return fourth.shifted(static_cast<std::size_t>(t.eighths));
}

ScalarQSeries eisensteinE2(std::size_t order) {
  if (order < 1) throw std::invalid_argument("q-order must be >= 1");
  ScalarQSeries s = ScalarQSeries::one(order, Rational(0));
  for (std::size_t h = 2; h < order; h += 2) s.setCoefficient(h, Rational(-24 * sigma1(static_cast<long>(h / 2))));
  return s;
}

ScalarQSeries deltaEpsilon(LevelTwoForm which, std::size_t order) {
  if (order < 1) throw std::invalid_argument("q-order must be >= 1");
  ScalarQSeries s(order, Rational(0));
  switch (which) {
    case LevelTwoForm::Delta1:
      s.setCoefficient(0, Rational(1, 4));
      for (std::size_t h = 2; h < order; h += 2) s.setCoefficient(h, Rational(6 * sigmaOdd(static_cast<long>(h / 2))));
      break;
    case LevelTwoForm::Epsilon1:
      s.setCoefficient(0, Rational(1, 16));
      for (std::size_t h = 2; h < order; h += 2) s.setCoefficient(h, Rational(signedCubeSum(static_cast<long>(h / 2))));
      break;
    case LevelTwoForm::Delta2:
      s.setCoefficient(0, Rational(-1, 8));
      for (std::size_t h = 1; h < order; ++h) s.setCoefficient(h, Rational(-3 * sigmaOdd(static_cast<long>(h))));
      break;
    case LevelTwoForm::Epsilon2:
      for (std::size_t h = 1; h < order; ++h) s.setCoefficient(h, Rational(oddCofactorCubeSum(static_cast<long>(h))));
      break;
  }
  return s;
}

std::vector<IdentityResidual> verifyThetaFourIdentities(std::size_t order, bool perturbDelta1) {
  const ScalarQSeries t1 = thetaNullFourth(ThetaKind::One, order);
  const ScalarQSeries t2 = thetaNullFourth(ThetaKind::Two, order);
  const ScalarQSeries t3 = thetaNullFourth(ThetaKind::Three, order);

  ScalarQSeries d1 = deltaEpsilon(LevelTwoForm::Delta1, order);
  if (perturbDelta1 && order > 2) d1.setCoefficient(2, d1.coefficient(2) + 1);

  auto count = [](const ScalarQSeries& r) { return r.nonzeroTerms().size(); };
  std::vector<IdentityResidual> out;
  out.push_back({"delta1 = (theta2^4 + theta3^4)/8", count(d1 - (t2 + t3) * Rational(1, 8))});
  out.push_back({"epsilon1 = theta2^4 theta3^4/16",
                 count(deltaEpsilon(LevelTwoForm::Epsilon1, order) - (t2 * t3) * Rational(1, 16))});
  out.push_back({"delta2 = -(theta1^4 + theta3^4)/8",
                 count(deltaEpsilon(LevelTwoForm::Delta2, order) + (t1 + t3) * Rational(1, 8))});
  out.push_back({"epsilon2 = theta1^4 theta3^4/16",
                 count(deltaEpsilon(LevelTwoForm::Epsilon2, order) - (t1 * t3) * Rational(1, 16))});
  return out;
}

std::string toString(ModularBasis basis) {
  return basis == ModularBasis::GammaUpper0_2 ? "Gamma^0(2): (8 delta2)^3, (8 delta2) epsilon2"
                                              : "Gamma_0(2): delta1^3, delta1 epsilon1";
}

std::pair<ScalarQSeries, ScalarQSeries> weightSixBasis(ModularBasis basis, std::size_t order) {
  if (basis == ModularBasis::GammaUpper0_2) {
    ScalarQSeries d = deltaEpsilon(LevelTwoForm::Delta2, order) * Rational(8);
    ScalarQSeries e = deltaEpsilon(LevelTwoForm::Epsilon2, order);
    return {d * d * d, d * e};
  }
  ScalarQSeries d = deltaEpsilon(LevelTwoForm::Delta1, order);
  ScalarQSeries e = deltaEpsilon(LevelTwoForm::Epsilon1, order);
  return {d * d * d, d * e};
}

ModularDecomposition decomposeWeight6(const QSeries<GradedElement>& series, ModularBasis basis) {
  const std::size_t p0 = 0;
  const std::size_t p1 = basis == ModularBasis::GammaUpper0_2 ? 1 : 2;
  if (series.order() < 4) throw PreconditionError("decomposition needs a series of order >= 4 half-units");
  const ContextPtr& ctx = series.zero().context();
  auto [b1, b2] = weightSixBasis(basis, series.order());

  const Rational a = b1.coefficient(p0), b = b2.coefficient(p0);
  const Rational c = b1.coefficient(p1), d = b2.coefficient(p1);
  const Rational det = a * d - b * c;
  if (det == 0) throw PreconditionError("singular pivot block for the weight-6 basis");

  const GradedElement& s0 = series.coefficient(p0);
  const GradedElement& s1 = series.coefficient(p1);
  GradedElement h0 = (s0 * (d / det)) - (s1 * (b / det));
  GradedElement h1 = (s1 * (a / det)) - (s0 * (c / det));

  QSeries<GradedElement> residual = series;
  residual -= liftScalars(b1, ctx).scaledBy(h0);
  residual -= liftScalars(b2, ctx).scaledBy(h1);
  return {std::move(h0), std::move(h1), std::move(residual), toString(basis)};
}

// Numeric --------------------------------------------------------------------

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

void requireUpperHalfPlane(Complex tau) {
  if (!(tau.imag() > 0.0)) throw std::domain_error("tau must lie in the upper half plane");
}

Complex qPower(Complex tau, double exponent) { return std::exp(2.0 * kPi * kI * tau * exponent); }

}  // namespace

Complex thetaNumeric(ThetaKind kind, Complex v, Complex tau, int terms) {
  requireUpperHalfPlane(tau);
  const Complex e = std::exp(2.0 * kPi * kI * v);
  const Complex einv = 1.0 / e;
  Complex prod = 1.0;
  for (int j = 1; j <= terms; ++j) {
    const Complex qj = qPower(tau, j);
    const Complex qh = qPower(tau, j - 0.5);
    switch (kind) {
      case ThetaKind::Plain:
        prod *= (1.0 - qj) * (1.0 - e * qj) * (1.0 - einv * qj);
        break;
      case ThetaKind::One:
        prod *= (1.0 - qj) * (1.0 + e * qj) * (1.0 + einv * qj);
        break;
      case ThetaKind::Two:
        prod *= (1.0 - qj) * (1.0 - e * qh) * (1.0 - einv * qh);
        break;
      case ThetaKind::Three:
        prod *= (1.0 - qj) * (1.0 + e * qh) * (1.0 + einv * qh);
        break;
    }
  }
  switch (kind) {
    case ThetaKind::Plain:
      return 2.0 * qPower(tau, 1.0 / 8.0) * std::sin(kPi * v) * prod;
    case ThetaKind::One:
      return 2.0 * qPower(tau, 1.0 / 8.0) * std::cos(kPi * v) * prod;
    default:
      return prod;
  }
}

Complex eisensteinE2Numeric(Complex tau, int terms) {
  requireUpperHalfPlane(tau);
  Complex sum = 0.0;
  for (int n = 1; n <= terms; ++n) {
    const Complex qn = qPower(tau, n);
    sum += static_cast<double>(n) * qn / (1.0 - qn);
  }
  return 1.0 - 24.0 * sum;
}

Complex deltaEpsilonNumeric(LevelTwoForm which, Complex tau, int terms) {
  requireUpperHalfPlane(tau);
  const bool halfPowers = which == LevelTwoForm::Delta2 || which == LevelTwoForm::Epsilon2;
  Complex sum = 0.0;
  for (long n = 1; n < terms; ++n) {
    const Complex x = qPower(tau, halfPowers ? 0.5 * static_cast<double>(n) : static_cast<double>(n));
    double c = 0.0;
    switch (which) {
      case LevelTwoForm::Delta1:
        c = 6.0 * static_cast<double>(sigmaOdd(n));
        break;
      case LevelTwoForm::Epsilon1:
        c = static_cast<double>(signedCubeSum(n));
        break;
      case LevelTwoForm::Delta2:
        c = -3.0 * static_cast<double>(sigmaOdd(n));
        break;
      case LevelTwoForm::Epsilon2:
        c = static_cast<double>(oddCofactorCubeSum(n));
        break;
    }
    sum += c * x;
  }
  switch (which) {
    case LevelTwoForm::Delta1:
      return 0.25 + sum;
    case LevelTwoForm::Epsilon1:
      return 1.0 / 16.0 + sum;
    case LevelTwoForm::Delta2:
      return -0.125 + sum;
    case LevelTwoForm::Epsilon2:
      return sum;
  }
  return sum;
}

Complex evaluateSeries(const ScalarQSeries& s, Complex tau) {
  requireUpperHalfPlane(tau);
  Complex sum = 0.0;
  for (const auto& [h, c] : s.nonzeroTerms()) sum += c.get_d() * qPower(tau, 0.5 * static_cast<double>(h));
  return sum;
}

std::vector<NumericLawResult> numericTransformChecks(Complex tau, Complex v, int terms, NumericTolerances tol,
                                                     double e2Perturbation) {
  requireUpperHalfPlane(tau);
  if (terms < 1) throw std::invalid_argument("terms must be >= 1");
  const Complex tauT = tau + 1.0;
  const Complex tauS = -1.0 / tau;
  const Complex root = std::sqrt(tau / kI);  // principal branch; Re > 0 on H
  const Complex gauss = std::exp(kPi * kI * tau * v * v);
  const Complex eighth = std::exp(kPi * kI / 4.0);

  auto th = [&](ThetaKind k, Complex vv, Complex tt) { return thetaNumeric(k, vv, tt, terms); };
  auto e2 = [&](Complex tt) { return eisensteinE2Numeric(tt, terms) + e2Perturbation; };
  auto de = [&](LevelTwoForm f, Complex tt) { return deltaEpsilonNumeric(f, tt, 2 * terms); };

  std::vector<NumericLawResult> out;
  auto add = [&](std::string id, Complex lhs, Complex rhs, double tolerance, Complex at) {
    out.push_back({std::move(id), at, v, std::abs(lhs - rhs), tolerance, terms});
  };

  add("theta.T", th(ThetaKind::Plain, v, tauT), eighth * th(ThetaKind::Plain, v, tau), tol.theta, tau);
  add("theta.S", th(ThetaKind::Plain, v, tauS), (1.0 / kI) * root * gauss * th(ThetaKind::Plain, tau * v, tau), tol.theta, tau);
  add("theta1.T", th(ThetaKind::One, v, tauT), eighth * th(ThetaKind::One, v, tau), tol.theta, tau);
  add("theta1.S", th(ThetaKind::One, v, tauS), root * gauss * th(ThetaKind::Two, tau * v, tau), tol.theta, tau);
  add("theta2.T", th(ThetaKind::Two, v, tauT), th(ThetaKind::Three, v, tau), tol.theta, tau);
  add("theta2.S", th(ThetaKind::Two, v, tauS), root * gauss * th(ThetaKind::One, tau * v, tau), tol.theta, tau);
  add("theta3.T", th(ThetaKind::Three, v, tauT), th(ThetaKind::Two, v, tau), tol.theta, tau);
  add("theta3.S", th(ThetaKind::Three, v, tauS), root * gauss * th(ThetaKind::Three, tau * v, tau), tol.theta, tau);

  add("E2.T", e2(tauT), e2(tau), tol.eisenstein, tau);
  add("E2.S", e2(tauS), tau * tau * e2(tau) - 6.0 * kI * tau / kPi, tol.eisenstein, tau);
  add("E2.fixed-point", e2(kI), Complex(3.0 / kPi, 0.0), tol.eisenstein, kI);

  add("delta2.S", de(LevelTwoForm::Delta2, tauS), tau * tau * de(LevelTwoForm::Delta1, tau), tol.theta, tau);
  add("epsilon2.S", de(LevelTwoForm::Epsilon2, tauS), tau * tau * tau * tau * de(LevelTwoForm::Epsilon1, tau), tol.theta, tau);
  return out;
}

}  // namespace anomod
