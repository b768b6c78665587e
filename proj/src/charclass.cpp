#include "anomod/charclass.hpp"

#include <cctype>

#include "anomod/errors.hpp"
#include "anomod/scalar_series.hpp"

namespace anomod {

namespace {

constexpr std::size_t kGenusTerms = 40;

GenusSpec makeGenus(std::string name, scalar::Series taylor) {
  GenusSpec g;
  g.name = std::move(name);
  g.logarithm = scalar::logarithm(taylor);
  g.taylor = std::move(taylor);
  return g;
}

}  // namespace

const GenusSpec& GenusSpec::aHat() {
  static const GenusSpec spec = [] {
    // sinh(x/2) / (x/2)
    scalar::Series s = scalar::divideByX(scalar::sinhScaled(Rational(1, 2), kGenusTerms + 1));
    for (auto& c : s) c *= 2;
    return makeGenus("A-hat", scalar::inverse(s));
  }();
  return spec;
}

const GenusSpec& GenusSpec::lGenus() {
  static const GenusSpec spec = [] {
    scalar::Series sinhOverX = scalar::divideByX(scalar::sinhScaled(Rational(1), kGenusTerms + 1));
    return makeGenus("L", scalar::multiply(scalar::coshScaled(Rational(1), kGenusTerms), scalar::inverse(sinhOverX)));
  }();
  return spec;
}

const GenusSpec& GenusSpec::coshHalf() {
  static const GenusSpec spec = makeGenus("cosh-half", scalar::coshScaled(Rational(1, 2), kGenusTerms));
  return spec;
}

std::vector<GradedElement> powerSums(const RealBundleClasses& bundle, std::size_t count) {
  const ContextPtr& ctx = bundle.rank.context();
  auto e = [&](std::size_t i) -> GradedElement {
    if (i >= 1 && i <= bundle.pontryagin.size()) return bundle.pontryagin[i - 1];
    return GradedElement::zero(ctx);
  };
  // Newton: pi_k = sum_{i=1}^{k-1} (-1)^{i-1} e_i pi_{k-i} + (-1)^{k-1} k e_k.
  std::vector<GradedElement> pi;
  for (std::size_t k = 1; k <= count; ++k) {
    GradedElement acc = e(k) * Rational(static_cast<long>(k));
    if (k % 2 == 0) acc = -acc;
    for (std::size_t i = 1; i < k; ++i) {
      GradedElement t = e(i) * pi[k - i - 1];
      if (i % 2 == 0)
        acc -= t;
      else
        acc += t;
    }
    pi.push_back(std::move(acc));
  }
  std::vector<GradedElement> s;
  s.reserve(count);
  for (auto& p : pi) s.push_back(p * Rational(2));
  return s;
}

std::vector<GradedElement> pontryaginFromPowerSums(const std::vector<GradedElement>& pi) {
  // k e_k = sum_{i=1}^{k} (-1)^{i-1} e_{k-i} pi_i.
  std::vector<GradedElement> e;
  if (pi.empty()) return e;
  const ContextPtr& ctx = pi.front().context();
  auto ek = [&](std::size_t i) { return i == 0 ? GradedElement::one(ctx) : e[i - 1]; };
  for (std::size_t k = 1; k <= pi.size(); ++k) {
    GradedElement acc(ctx);
    for (std::size_t i = 1; i <= k; ++i) {
      GradedElement t = ek(k - i) * pi[i - 1];
      if (i % 2 == 0)
        acc -= t;
      else
        acc += t;
    }
    e.push_back(acc / Rational(static_cast<long>(k)));
  }
  return e;
}

namespace {

std::size_t powerSumCount(const ContextPtr& ctx) { return static_cast<std::size_t>(ctx->maxDegree() / 4); }

}  // namespace

GradedElement complexifiedCharacter(const RealBundleClasses& bundle) {
  const ContextPtr& ctx = bundle.rank.context();
  GradedElement ch = bundle.rank;
  auto s = powerSums(bundle, powerSumCount(ctx));
  for (std::size_t k = 1; k <= s.size(); ++k) ch += s[k - 1] / factorial(static_cast<unsigned>(2 * k));
  return ch;
}

GradedElement genusForm(const RealBundleClasses& bundle, const GenusSpec& spec) {
  const ContextPtr& ctx = bundle.rank.context();
  auto s = powerSums(bundle, powerSumCount(ctx));
  GradedElement exponent(ctx);
  for (std::size_t k = 1; k <= s.size(); ++k) {
    if (2 * k >= spec.logarithm.size()) throw PreconditionError("genus log-coefficients too short for the truncation degree");
    exponent += s[k - 1] * (spec.logarithm[2 * k] / 2);
  }
  return expNilpotent(exponent);
}

GradedElement eulerFactor(const GradedElement& eulerClass, EulerFactorKind kind) {
  GradedElement half = eulerClass / Rational(2);
  if (kind == EulerFactorKind::ExpHalf) return expNilpotent(half);
  return (expNilpotent(half) + expNilpotent(-half)) / Rational(2);
}

ChernModel::ChernModel(ContextPtr ctx) : ctx_(std::move(ctx)), euler_(GradedElement::zero(ctx_)) {}

void ChernModel::defineRealAtom(const std::string& name, RealBundleClasses classes) {
  characters_.insert_or_assign(name, complexifiedCharacter(classes));
  real_.insert_or_assign(name, std::move(classes));
}

void ChernModel::defineAtom(const std::string& name, GradedElement character) {
  characters_.insert_or_assign(name, std::move(character));
  real_.erase(name);
}

const GradedElement& ChernModel::atomCharacter(const std::string& name) const {
  auto it = characters_.find(name);
  if (it == characters_.end()) throw ContextError("unknown bundle atom '" + name + "'");
  return it->second;
}

const RealBundleClasses& ChernModel::realAtom(const std::string& name) const {
  auto it = real_.find(name);
  if (it == real_.end()) throw ContextError("'" + name + "' is not a real bundle atom");
  return it->second;
}

GradedElement ChernModel::ch(const BundleExpr& e) const {
  using K = BundleExpr::Kind;
  switch (e.kind()) {
    case K::Atom:
      return atomCharacter(e.name());
    case K::Constant:
      return GradedElement::constant(ctx_, e.value());
    case K::Sum:
      return ch(e.left()) + ch(e.right());
    case K::Difference:
      return ch(e.left()) - ch(e.right());
    case K::Scale:
      return ch(e.left()) * e.value();
    case K::Tensor:
      return ch(e.left()) * ch(e.right());
    case K::Lambda2: {
      GradedElement c = ch(e.left());
      return (c * c - c.adamsScaled(2)) / Rational(2);
    }
    case K::Sym2: {
      GradedElement c = ch(e.left());
      return (c * c + c.adamsScaled(2)) / Rational(2);
    }
    case K::Adams:
      return ch(e.left()).adamsScaled(e.adamsIndex());
    case K::Tilde: {
      GradedElement c = ch(e.left());
      return c - c.degreeZeroPart();
    }
  }
  throw std::logic_error("unhandled bundle node");
}

ContextPtr standardContext(int maxDegree) {
  std::vector<Generator> gens;
  for (const char* b : {"T", "F1", "F2"})
    for (int i = 1; i <= 3; ++i) gens.push_back({"p" + std::to_string(i) + b, 4 * i});
  gens.push_back({"c", 2});
  gens.push_back({"m", 0});
  gens.push_back({"n", 0});
  return makeContext(std::move(gens), maxDegree);
}

std::optional<long> RankSpec::concreteM() const {
  if (m) return m;
  if (mShift && n) return *n + *mShift;
  return std::nullopt;
}

bool RankSpec::forcesDifference(long k) const {
  if (mShift) return *mShift == k;
  if (m && n) return *m - *n == k;
  return false;
}

std::string RankSpec::toString() const {
  std::vector<std::string> parts;
  if (m) parts.push_back("m=" + std::to_string(*m));
  if (mShift) parts.push_back(*mShift >= 0 ? "m=n+" + std::to_string(*mShift) : "m=n-" + std::to_string(-*mShift));
  if (n) parts.push_back("n=" + std::to_string(*n));
  if (parts.empty()) return "symbolic";
  std::string s;
  for (const auto& p : parts) s += (s.empty() ? "" : ",") + p;
  return s;
}

RankSpec RankSpec::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s == "symbolic") return {};
  RankSpec spec;
  auto parseLong = [&](const std::string& v) -> long {
    if (v.empty()) throw ParseError("missing rank value in '" + s + "'");
    std::size_t used = 0;
    long x = 0;
    try {
      x = std::stol(v, &used);
    } catch (const std::exception&) {
      throw ParseError("bad rank value '" + v + "'");
    }
    if (used != v.size()) throw ParseError("bad rank value '" + v + "'");
    return x;
  };
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    std::string item = s.substr(pos, comma - pos);
    pos = comma + 1;
    if (item.rfind("m=n", 0) == 0) {
      if (spec.m || spec.mShift) throw ParseError("m given twice");
      std::string rest = item.substr(3);
      if (rest.empty()) {
        spec.mShift = 0;
      } else if (rest[0] == '+' || rest[0] == '-') {
        long k = parseLong(rest.substr(1));
        spec.mShift = rest[0] == '+' ? k : -k;
      } else {
        throw ParseError("bad rank relation '" + item + "'");
      }
    } else if (item.rfind("m=", 0) == 0) {
      if (spec.m || spec.mShift) throw ParseError("m given twice");
      spec.m = parseLong(item.substr(2));
    } else if (item.rfind("n=", 0) == 0) {
      if (spec.n) throw ParseError("n given twice");
      spec.n = parseLong(item.substr(2));
    } else {
      throw ParseError("expected 'symbolic', 'm=INT', 'm=n+INT' or 'n=INT', got '" + item + "'");
    }
  }
  if ((spec.m && *spec.m < 0) || (spec.n && *spec.n < 0)) throw ParseError("ranks must be non-negative");
  if (auto cm = spec.concreteM(); cm && *cm < 0) throw ParseError("ranks must be non-negative");
  return spec;
}

ChernModel standardModel(const ContextPtr& ctx, const ModelOptions& options) {
  ChernModel model(ctx);
  const RankSpec& r = options.ranks;

  GradedElement nValue = r.n ? GradedElement::constant(ctx, Rational(*r.n)) : GradedElement::generator(ctx, "n");
  GradedElement mValue = r.m        ? GradedElement::constant(ctx, Rational(*r.m))
                         : r.mShift ? nValue + GradedElement::constant(ctx, Rational(*r.mShift))
                                    : GradedElement::generator(ctx, "m");

  auto real = [&](const std::string& suffix, const GradedElement& rank) {
    RealBundleClasses b{rank, {}};
    std::optional<Rational> concrete = rank.asConstant();
    for (int i = 1; i <= 3; ++i) {
      // A rank-r real bundle has no Pontryagin classes beyond p_{r/2}.
      if (concrete && Rational(2 * i) > *concrete)
        b.pontryagin.push_back(GradedElement::zero(ctx));
      else
        b.pontryagin.push_back(GradedElement::generator(ctx, "p" + std::to_string(i) + suffix));
    }
    return b;
  };

  model.defineRealAtom("TZ", real("T", GradedElement::constant(ctx, Rational(10))));
  model.defineRealAtom("F1", real("F1", mValue));
  model.defineRealAtom("F", real("F1", mValue));
  model.defineRealAtom("F2", real("F2", nValue));

  GradedElement c = options.xiTrivial ? GradedElement::zero(ctx) : GradedElement::generator(ctx, "c");
  model.defineRealAtom("xi", RealBundleClasses{GradedElement::constant(ctx, Rational(2)), {c * c}});
  model.setEulerClass(c);

  model.defineAtom("m", mValue);
  model.defineAtom("n", nValue);
  return model;
}

namespace {

struct FamilyShape {
  bool halfIntegral;  // t_i = q^{i - 1/2} rather than q^i
  int signMode;       // +1: +1/k, -1: -1/k, 0: (-1)^{k-1}/k
};

FamilyShape shapeOf(ProductFamily f) {
  switch (f) {
    case ProductFamily::SWhole:
      return {false, +1};
    case ProductFamily::LambdaMinusHalf:
      return {true, -1};
    case ProductFamily::LambdaPlusHalf:
      return {true, 0};
    case ProductFamily::LambdaWhole:
      return {false, 0};
    case ProductFamily::LambdaMinusWhole:
      return {false, -1};
  }
  throw std::logic_error("unknown product family");
}

}  // namespace

QSeries<GradedElement> lambdaProductLog(const ChernModel& model, const BundleExpr& e, ProductFamily family,
                                        std::size_t order) {
  const ContextPtr& ctx = model.context();
  QSeries<GradedElement> log(order, GradedElement::zero(ctx));
  const FamilyShape shape = shapeOf(family);
  const GradedElement base = model.ch(e);
  std::vector<GradedElement> adams;  // adams[k-1] = ch(psi^k E)
  for (std::size_t i = 1;; ++i) {
    const std::size_t step = shape.halfIntegral ? 2 * i - 1 : 2 * i;
    if (step >= order) break;
    for (std::size_t k = 1; k * step < order; ++k) {
      while (adams.size() < k) adams.push_back(base.adamsScaled(static_cast<long>(adams.size() + 1)));
      Rational coeff = Rational(1) / Rational(static_cast<long>(k));
      if (shape.signMode == -1 || (shape.signMode == 0 && k % 2 == 0)) coeff = -coeff;
      log.addToCoefficient(k * step, adams[k - 1] * coeff);
    }
  }
  return log;
}

QSeries<GradedElement> lambdaProductCh(const ChernModel& model, const BundleExpr& e, ProductFamily family,
                                       std::size_t order) {
  return expSeries(lambdaProductLog(model, e, family, order));
}

QSeries<GradedElement> theta2Expansion(const ChernModel& model, std::size_t order) {
  static const BundleExpr tz = BundleExpr::parse("~TZ");
  static const BundleExpr fermion = BundleExpr::parse("~F1 - ~F2 - 2*~xi");
  static const BundleExpr xi = BundleExpr::parse("~xi");
  QSeries<GradedElement> log = lambdaProductLog(model, tz, ProductFamily::SWhole, order);
  log += lambdaProductLog(model, fermion, ProductFamily::LambdaMinusHalf, order);
  log += lambdaProductLog(model, xi, ProductFamily::LambdaPlusHalf, order);
  log += lambdaProductLog(model, xi, ProductFamily::LambdaWhole, order);
  return expSeries(log);
}

QSeries<GradedElement> theta1Expansion(const ChernModel& model, const BundleExpr& v, std::size_t order) {
  if (!model.rank(v).asConstant())
    throw UnsupportedConfiguration("Theta_1 needs an integer rank for V, got " + model.rank(v).toString());
  static const BundleExpr tz = BundleExpr::parse("~TZ");
  static const BundleExpr xi = BundleExpr::parse("~xi");
  const BundleExpr vPart = v.tilde() - Rational(2) * xi;
  QSeries<GradedElement> log = lambdaProductLog(model, tz, ProductFamily::SWhole, order);
  log += lambdaProductLog(model, vPart, ProductFamily::LambdaWhole, order);
  log += lambdaProductLog(model, xi, ProductFamily::LambdaPlusHalf, order);
  log += lambdaProductLog(model, xi, ProductFamily::LambdaMinusHalf, order);
  return expSeries(log);
}

BundleExpr theta2B0() { return BundleExpr::parse("1"); }

BundleExpr theta2B1() { return BundleExpr::parse("m - F1 + F2 - n + 3*~xi"); }

BundleExpr theta2B2() {
  return BundleExpr::parse(
      "L2(F1) + S2(F2) - F1*F2 + TZ + ((m-n)*(m-n) + (m-n))/2 - 10 - (m-n)*(F1-F2)"
      " + 5*~xi*~xi + 3*(m - F1 + F2 - n + 1)*~xi");
}

std::vector<Rational> halfSinhQuotientSeries(std::size_t terms) {
  scalar::Series s = scalar::divideByX(scalar::sinhScaled(Rational(1, 2), terms + 1));
  for (auto& c : s) c *= 2;
  return scalar::inverse(s);
}

namespace {

std::vector<GradedElement> elementarySymmetric(const std::vector<GradedElement>& values, std::size_t upTo,
                                               const ContextPtr& ctx) {
  std::vector<GradedElement> e(upTo + 1, GradedElement::zero(ctx));
  e[0] = GradedElement::one(ctx);
  for (const auto& v : values)
    for (std::size_t k = upTo; k >= 1; --k) e[k] += e[k - 1] * v;
  return e;
}

using Series = QSeries<GradedElement>;

// 1 + sign * a * q^{h/2}
Series binomial(std::size_t order, std::size_t h, const GradedElement& a, int sign) {
  Series s = Series::one(order, a);
  if (h < order) s.setCoefficient(h, sign > 0 ? a : -a);
  return s;
}

// prod_i (1 + sign e^{w} t_i)(1 + sign e^{-w} t_i) / (1 + sign t_i)^2 over
// t_i = q^{i-1/2} (half) or q^i (whole).
Series rootPairQuotient(const GradedElement& w, bool half, int sign, std::size_t order) {
  const ContextPtr& ctx = w.context();
  GradedElement ep = expNilpotent(w);
  GradedElement em = expNilpotent(-w);
  GradedElement one = GradedElement::one(ctx);
  Series num = Series::one(order, one);
  Series den = Series::one(order, one);
  for (std::size_t i = 1;; ++i) {
    std::size_t h = half ? 2 * i - 1 : 2 * i;
    if (h >= order) break;
    num = num * binomial(order, h, ep, sign) * binomial(order, h, em, sign);
    den = den * binomial(order, h, one, sign) * binomial(order, h, one, sign);
  }
  return num * invertSeries(den);
}

}  // namespace

ThetaQuotientExpansion thetaQuotientExpansion(long m, long n, bool xiTrivial, std::size_t order, int maxDegree) {
  if (m < 0 || n < 0 || m % 2 != 0 || n % 2 != 0)
    throw UnsupportedConfiguration("theta-quotient expansion needs even non-negative concrete ranks");
  std::vector<Generator> gens;
  std::vector<std::string> xs, ys, zs;
  for (int j = 1; j <= 5; ++j) xs.push_back("x" + std::to_string(j));
  for (long j = 1; j <= m / 2; ++j) ys.push_back("y" + std::to_string(j));
  for (long j = 1; j <= n / 2; ++j) zs.push_back("z" + std::to_string(j));
  for (const auto* group : {&xs, &ys, &zs})
    for (const auto& name : *group) gens.push_back({name, 2});
  gens.push_back({"u", 2});
  if (gens.size() > RingContext::kMaxGenerators)
    throw UnsupportedConfiguration("too many explicit roots for one ring context");
  ContextPtr ctx = makeContext(std::move(gens), maxDegree);
  GradedElement one = GradedElement::one(ctx);
  auto root = [&](const std::string& name) { return GradedElement::generator(ctx, name); };

  Series total = Series::one(order, one);

  const auto sinhQuotient = halfSinhQuotientSeries(static_cast<std::size_t>(maxDegree) + 2);
  for (const auto& x : xs) {
    // x theta'(0)/theta(x) = (x/2)/sinh(x/2) * prod (1-q^j)^2 / ((1-e^x q^j)(1-e^-x q^j))
    GradedElement w = root(x);
    Series factor = invertSeries(rootPairQuotient(w, false, -1, order));
    total = total * factor.scaledBy(applyUnivariateSeries(sinhQuotient, w));
  }
  for (const auto& y : ys) total = total * rootPairQuotient(root(y), true, -1, order);
  for (const auto& z : zs) total = total * invertSeries(rootPairQuotient(root(z), true, -1, order));
  if (!xiTrivial) {
    GradedElement u = root("u");
    Series theta2Inv = invertSeries(rootPairQuotient(u, true, -1, order));
    total = total * theta2Inv * theta2Inv;
    total = total * rootPairQuotient(u, true, +1, order);
    GradedElement coshHalf = (expNilpotent(u / Rational(2)) + expNilpotent(-u / Rational(2))) / Rational(2);
    total = total * rootPairQuotient(u, false, +1, order).scaledBy(coshHalf);
  }

  ThetaQuotientExpansion out{ctx, std::move(total), {}};
  auto squares = [&](const std::vector<std::string>& names) {
    std::vector<GradedElement> v;
    for (const auto& nm : names) v.push_back(root(nm) * root(nm));
    return v;
  };
  auto assignPontryagin = [&](const std::string& suffix, const std::vector<std::string>& names) {
    auto e = elementarySymmetric(squares(names), 3, ctx);
    for (int i = 1; i <= 3; ++i) out.pontryaginImage.insert_or_assign("p" + std::to_string(i) + suffix, e[i]);
  };
  assignPontryagin("T", xs);
  assignPontryagin("F1", ys);
  assignPontryagin("F2", zs);
  out.pontryaginImage.insert_or_assign("c", xiTrivial ? GradedElement::zero(ctx) : root("u"));
  out.pontryaginImage.insert_or_assign("m", GradedElement::constant(ctx, Rational(m)));
  out.pontryaginImage.insert_or_assign("n", GradedElement::constant(ctx, Rational(n)));
  return out;
}

}  // namespace anomod
