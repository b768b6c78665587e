#include "anomod/graded_ring.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "anomod/errors.hpp"

namespace anomod {

RingContext::RingContext(std::vector<Generator> generators, int maxDegree)
    : generators_(std::move(generators)), maxDegree_(maxDegree) {
  if (generators_.size() > kMaxGenerators)
    throw ContextError("at most " + std::to_string(kMaxGenerators) + " generators are supported");
  if (maxDegree_ < 0 || maxDegree_ % 2 != 0) throw ContextError("maximum degree must be even and >= 0");
  std::set<std::string> seen;
  for (const auto& g : generators_) {
    if (g.degree < 0 || g.degree % 2 != 0) throw ContextError("generator " + g.name + " has odd or negative degree");
    if (g.name.empty()) throw ContextError("empty generator name");
    if (!seen.insert(g.name).second) throw ContextError("duplicate generator " + g.name);
  }
}

std::optional<std::size_t> RingContext::find(std::string_view name) const {
  for (std::size_t i = 0; i < generators_.size(); ++i)
    if (generators_[i].name == name) return i;
  return std::nullopt;
}

std::size_t RingContext::indexOf(std::string_view name) const {
  auto i = find(name);
  if (!i) throw ContextError("unknown generator '" + std::string(name) + "'");
  return *i;
}

bool RingContext::operator==(const RingContext& other) const {
  return maxDegree_ == other.maxDegree_ && generators_ == other.generators_;
}

ContextPtr makeContext(std::vector<Generator> generators, int maxDegree) {
  return std::make_shared<const RingContext>(std::move(generators), maxDegree);
}

namespace {

bool termLess(const GradedElement::Term& a, const GradedElement::Term& b) {
  if (a.degree != b.degree) return a.degree < b.degree;
  // Higher exponent on earlier generators first, so p1T precedes p2T.
  return a.monomial > b.monomial;
}

struct MonoKeyLess {
  bool operator()(const std::pair<int, Monomial>& a, const std::pair<int, Monomial>& b) const {
    if (a.first != b.first) return a.first < b.first;
    return a.second > b.second;
  }
};

using Accumulator = std::map<std::pair<int, Monomial>, Rational, MonoKeyLess>;

std::vector<GradedElement::Term> drain(Accumulator& acc) {
  std::vector<GradedElement::Term> out;
  out.reserve(acc.size());
  for (auto& [key, c] : acc)
    if (c != 0) out.push_back({key.second, key.first, std::move(c)});
  return out;
}

}  // namespace

GradedElement::GradedElement(ContextPtr ctx) : ctx_(std::move(ctx)) {
  if (!ctx_) throw ContextError("null ring context");
}

GradedElement::GradedElement(ContextPtr ctx, std::vector<Term> terms) : ctx_(std::move(ctx)), terms_(std::move(terms)) {}

int GradedElement::degreeOf(const Monomial& m) const {
  int d = 0;
  for (std::size_t i = 0; i < ctx_->size(); ++i) d += m.exponents[i] * ctx_->degreeOf(i);
  return d;
}

GradedElement GradedElement::constant(ContextPtr ctx, const Rational& value) {
  GradedElement e(std::move(ctx));
  if (value != 0) e.terms_.push_back({Monomial{}, 0, value});
  return e;
}

GradedElement GradedElement::generator(ContextPtr ctx, std::string_view name) {
  auto i = ctx->indexOf(name);
  Monomial m;
  m.exponents[i] = 1;
  return term(std::move(ctx), m, Rational(1));
}

GradedElement GradedElement::term(ContextPtr ctx, const Monomial& m, const Rational& coefficient) {
  GradedElement e(std::move(ctx));
  for (std::size_t i = e.ctx_->size(); i < RingContext::kMaxGenerators; ++i)
    if (m.exponents[i] != 0) throw ContextError("monomial uses slots beyond the context");
  int d = e.degreeOf(m);
  if (coefficient != 0 && d <= e.ctx_->maxDegree()) e.terms_.push_back({m, d, coefficient});
  return e;
}

void GradedElement::requireSameContext(const GradedElement& other) const {
  if (ctx_ != other.ctx_ && !(*ctx_ == *other.ctx_)) throw ContextError("operands belong to different ring contexts");
}

bool GradedElement::isNilpotent() const { return terms_.empty() || terms_.front().degree > 0; }

bool GradedElement::isHomogeneous(int degree) const {
  return std::all_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.degree == degree; });
}

std::optional<Rational> GradedElement::asConstant() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() == 1 && terms_[0].monomial == Monomial{}) return terms_[0].coefficient;
  return std::nullopt;
}

GradedElement GradedElement::extractDegree(int degree) const {
  std::vector<Term> out;
  for (const auto& t : terms_)
    if (t.degree == degree) out.push_back(t);
  return GradedElement(ctx_, std::move(out));
}

GradedElement GradedElement::adamsScaled(long k) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    mpz_class f;
    mpz_pow_ui(f.get_mpz_t(), mpz_class(k).get_mpz_t(), static_cast<unsigned long>(t.degree / 2));
    Rational c = t.coefficient * f;
    if (c != 0) out.push_back({t.monomial, t.degree, std::move(c)});
  }
  return GradedElement(ctx_, std::move(out));
}

GradedElement GradedElement::operator-() const {
  GradedElement r = *this;
  for (auto& t : r.terms_) t.coefficient = -t.coefficient;
  return r;
}

GradedElement& GradedElement::operator+=(const GradedElement& other) {
  requireSameContext(other);
  std::vector<Term> out;
  out.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end() || (a != terms_.end() && termLess(*a, *b))) {
      out.push_back(std::move(*a++));
    } else if (a == terms_.end() || termLess(*b, *a)) {
      out.push_back(*b++);
    } else {
      Rational c = a->coefficient + b->coefficient;
      if (c != 0) out.push_back({a->monomial, a->degree, std::move(c)});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
  return *this;
}

GradedElement& GradedElement::operator-=(const GradedElement& other) { return *this += -other; }

GradedElement operator*(const GradedElement& a, const GradedElement& b) {
  a.requireSameContext(b);
  const int maxDeg = a.ctx_->maxDegree();
  const std::size_t n = a.ctx_->size();
  Accumulator acc;
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      // Terms are sorted by degree, so the rest of b is too heavy.
      if (ta.degree + tb.degree > maxDeg) break;
      Monomial m;
      for (std::size_t i = 0; i < n; ++i) {
        unsigned e = ta.monomial.exponents[i] + tb.monomial.exponents[i];
        if (e > 255) throw PreconditionError("exponent overflow in product");
        m.exponents[i] = static_cast<std::uint8_t>(e);
      }
      auto [it, inserted] = acc.try_emplace({ta.degree + tb.degree, m}, ta.coefficient * tb.coefficient);
      if (!inserted) it->second += ta.coefficient * tb.coefficient;
    }
  }
  return GradedElement(a.ctx_, drain(acc));
}

GradedElement& GradedElement::operator*=(const GradedElement& other) {
  *this = *this * other;
  return *this;
}

GradedElement& GradedElement::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coefficient *= scalar;
  return *this;
}

GradedElement& GradedElement::operator/=(const Rational& scalar) {
  if (scalar == 0) throw std::domain_error("division of graded element by zero");
  for (auto& t : terms_) t.coefficient /= scalar;
  return *this;
}

bool GradedElement::operator==(const GradedElement& other) const {
  requireSameContext(other);
  if (terms_.size() != other.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].monomial != other.terms_[i].monomial || terms_[i].coefficient != other.terms_[i].coefficient)
      return false;
  return true;
}

std::string formatMonomial(const RingContext& ctx, const Monomial& m) {
  std::string s;
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    if (m.exponents[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += ctx.generators()[i].name;
    if (m.exponents[i] > 1) s += "^" + std::to_string(m.exponents[i]);
  }
  return s;
}

namespace {

// Unsigned rendering of one term: "3/2*p1T^2", "p1T", "5".
std::string formatMagnitude(const RingContext& ctx, const GradedElement::Term& t) {
  Rational mag = abs(t.coefficient);
  std::string mono = formatMonomial(ctx, t.monomial);
  if (mono.empty()) return toString(mag);
  if (mag == 1) return mono;
  return toString(mag) + "*" + mono;
}

}  // namespace

std::string GradedElement::toString() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    bool neg = terms_[i].coefficient < 0;
    if (i == 0)
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    s += formatMagnitude(*ctx_, terms_[i]);
  }
  return s;
}

std::vector<std::string> GradedElement::sampleTerms(std::size_t limit) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < terms_.size() && i < limit; ++i)
    out.push_back((terms_[i].coefficient < 0 ? "-" : "") + formatMagnitude(*ctx_, terms_[i]));
  return out;
}

GradedElement GradedElement::parse(ContextPtr ctx, std::string_view text) {
  GradedElement result(ctx);
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw ParseError("empty element");
  if (s == "0") return result;

  std::size_t pos = 0;
  bool first = true;
  while (pos < s.size()) {
    Rational sign(1);
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!first) {
      throw ParseError("expected '+' or '-' in '" + s + "'");
    }
    first = false;
    std::size_t end = pos;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    std::string_view termText(s.data() + pos, end - pos);
    if (termText.empty()) throw ParseError("empty term in '" + s + "'");
    pos = end;

    Rational coeff(1);
    Monomial mono;
    bool sawCoefficient = false;
    std::size_t p = 0;
    while (p <= termText.size()) {
      std::size_t star = termText.find('*', p);
      if (star == std::string_view::npos) star = termText.size();
      std::string_view factor = termText.substr(p, star - p);
      if (factor.empty()) throw ParseError("empty factor in '" + std::string(termText) + "'");
      if (std::isdigit(static_cast<unsigned char>(factor[0]))) {
        if (sawCoefficient || p != 0) throw ParseError("coefficient must lead the term: '" + std::string(termText) + "'");
        coeff = parseRational(factor);
        sawCoefficient = true;
      } else {
        std::string_view name = factor;
        unsigned exp = 1;
        if (auto caret = factor.find('^'); caret != std::string_view::npos) {
          name = factor.substr(0, caret);
          std::string_view e = factor.substr(caret + 1);
          if (e.empty() || !std::all_of(e.begin(), e.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            throw ParseError("bad exponent in '" + std::string(factor) + "'");
          exp = static_cast<unsigned>(std::stoul(std::string(e)));
        }
        auto idx = ctx->indexOf(name);
        unsigned total = mono.exponents[idx] + exp;
        if (total > 255) throw ParseError("exponent too large");
        mono.exponents[idx] = static_cast<std::uint8_t>(total);
      }
      p = star + 1;
    }
    result += term(ctx, mono, sign * coeff);
  }
  return result;
}

GradedElement power(const GradedElement& x, unsigned k) {
  GradedElement result = GradedElement::one(x.context());
  GradedElement base = x;
  while (k > 0) {
    if (k & 1u) result *= base;
    k >>= 1u;
    if (k > 0) base *= base;
  }
  return result;
}

GradedElement expNilpotent(const GradedElement& x) {
  if (!x.isNilpotent()) throw PreconditionError("exp requires an argument without degree-0 part");
  GradedElement result = GradedElement::one(x.context());
  GradedElement term = result;
  for (unsigned k = 1; ; ++k) {
    term = term * x / Rational(k);
    if (term.isZero()) break;
    result += term;
  }
  return result;
}

GradedElement invertUnit(const GradedElement& x) {
  GradedElement nu = x - GradedElement::one(x.context());
  if (!nu.isNilpotent()) throw PreconditionError("invertUnit requires constant part equal to 1");
  GradedElement result = GradedElement::one(x.context());
  GradedElement term = result;
  for (;;) {
    term = -(term * nu);
    if (term.isZero()) break;
    result += term;
  }
  return result;
}

GradedElement applyUnivariateSeries(std::span<const Rational> coeffs, const GradedElement& x) {
  if (!x.isNilpotent()) throw PreconditionError("univariate series needs a nilpotent argument");
  GradedElement result = GradedElement::zero(x.context());
  GradedElement pw = GradedElement::one(x.context());
  for (std::size_t k = 0;; ++k) {
    if (pw.isZero()) break;
    if (k >= coeffs.size()) throw PreconditionError("not enough series coefficients for the truncation degree");
    if (coeffs[k] != 0) result += pw * coeffs[k];
    pw *= x;
  }
  return result;
}

GradedElement substitute(const GradedElement& x, const std::map<std::string, GradedElement>& assignment,
                         const ContextPtr& target) {
  const ContextPtr& src = x.context();
  const ContextPtr& dst = target ? target : src;

  // image[i] is the value of generator i in the destination ring.
  std::vector<GradedElement> image;
  image.reserve(src->size());
  for (std::size_t i = 0; i < src->size(); ++i) {
    const auto& gen = src->generators()[i];
    if (auto it = assignment.find(gen.name); it != assignment.end()) {
      const GradedElement& v = it->second;
      if (v.context() != dst && !(*v.context() == *dst)) throw ContextError("assigned value for " + gen.name + " lives in another context");
      if (!v.isHomogeneous(gen.degree))
        throw PreconditionError("value assigned to " + gen.name + " is not homogeneous of degree " + std::to_string(gen.degree));
      image.push_back(v);
    } else {
      auto j = dst->find(gen.name);
      if (!j) throw ContextError("generator " + gen.name + " has no image in the target context");
      if (dst->degreeOf(*j) != gen.degree) throw ContextError("generator " + gen.name + " changes degree");
      image.push_back(GradedElement::generator(dst, gen.name));
    }
  }
  for (const auto& [name, v] : assignment) src->indexOf(name);

  std::vector<std::vector<GradedElement>> powers(src->size());
  auto powerOf = [&](std::size_t i, unsigned e) -> const GradedElement& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(GradedElement::one(dst));
    while (cache.size() <= e) cache.push_back(cache.back() * image[i]);
    return cache[e];
  };

  GradedElement result(dst);
  for (const auto& t : x.terms()) {
    GradedElement prod = GradedElement::constant(dst, t.coefficient);
    for (std::size_t i = 0; i < src->size() && !prod.isZero(); ++i)
      if (t.monomial.exponents[i] > 0) prod *= powerOf(i, t.monomial.exponents[i]);
    result += prod;
  }
  return result;
}

}  // namespace anomod
