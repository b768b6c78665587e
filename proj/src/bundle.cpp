#include "anomod/bundle.hpp"

#include <cctype>

#include "anomod/errors.hpp"

namespace anomod {

BundleExpr BundleExpr::make(Kind kind, const BundleExpr* l, const BundleExpr* r) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  if (l) n->left = std::make_shared<const BundleExpr>(*l);
  if (r) n->right = std::make_shared<const BundleExpr>(*r);
  return BundleExpr(std::move(n));
}

BundleExpr BundleExpr::atom(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Atom;
  n->name = std::move(name);
  return BundleExpr(std::move(n));
}

BundleExpr BundleExpr::constant(const Rational& rank) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Constant;
  n->value = rank;
  return BundleExpr(std::move(n));
}

BundleExpr operator+(const BundleExpr& a, const BundleExpr& b) { return BundleExpr::make(BundleExpr::Kind::Sum, &a, &b); }
BundleExpr operator-(const BundleExpr& a, const BundleExpr& b) {
  return BundleExpr::make(BundleExpr::Kind::Difference, &a, &b);
}
BundleExpr operator*(const BundleExpr& a, const BundleExpr& b) { return BundleExpr::make(BundleExpr::Kind::Tensor, &a, &b); }

BundleExpr operator*(const Rational& s, const BundleExpr& a) {
  auto n = std::make_shared<BundleExpr::Node>();
  n->kind = BundleExpr::Kind::Scale;
  n->value = s;
  n->left = std::make_shared<const BundleExpr>(a);
  return BundleExpr(std::move(n));
}

BundleExpr BundleExpr::operator-() const { return Rational(-1) * *this; }
BundleExpr BundleExpr::lambda2() const { return make(Kind::Lambda2, this, nullptr); }
BundleExpr BundleExpr::sym2() const { return make(Kind::Sym2, this, nullptr); }
BundleExpr BundleExpr::tilde() const { return make(Kind::Tilde, this, nullptr); }

BundleExpr BundleExpr::adams(long k) const {
  if (k < 1) throw std::invalid_argument("Adams operation index must be >= 1");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Adams;
  n->adams = k;
  n->left = std::make_shared<const BundleExpr>(*this);
  return BundleExpr(std::move(n));
}

namespace {

// Precedence: 1 sum/difference, 2 tensor/scale, 3 unary/primary.
int precedence(BundleExpr::Kind k) {
  switch (k) {
    case BundleExpr::Kind::Sum:
    case BundleExpr::Kind::Difference:
      return 1;
    case BundleExpr::Kind::Tensor:
    case BundleExpr::Kind::Scale:
      return 2;
    default:
      return 3;
  }
}

std::string render(const BundleExpr& e);

std::string wrap(const BundleExpr& e, int minPrec) {
  std::string s = render(e);
  if (precedence(e.kind()) < minPrec) return "(" + s + ")";
  return s;
}

std::string render(const BundleExpr& e) {
  using K = BundleExpr::Kind;
  switch (e.kind()) {
    case K::Atom:
      return e.name();
    case K::Constant:
      if (e.value() < 0) return "(" + toString(e.value()) + ")";
      if (e.value().get_den() != 1) return "(" + toString(e.value()) + ")";
      return toString(e.value());
    case K::Sum:
      return render(e.left()) + " + " + wrap(e.right(), 2);
    case K::Difference:
      return render(e.left()) + " - " + wrap(e.right(), 2);
    case K::Tensor:
      return wrap(e.left(), 2) + "*" + wrap(e.right(), 3);
    case K::Scale: {
      const Rational& s = e.value();
      std::string lead = s.get_den() == 1 && s >= 0 ? toString(s) : "(" + toString(s) + ")";
      return lead + "*" + wrap(e.left(), 3);
    }
    case K::Lambda2:
      return "L2(" + render(e.left()) + ")";
    case K::Sym2:
      return "S2(" + render(e.left()) + ")";
    case K::Adams:
      return "psi" + std::to_string(e.adamsIndex()) + "(" + render(e.left()) + ")";
    case K::Tilde:
      return "~" + wrap(e.left(), 3);
  }
  return {};
}

class Parser {
 public:
  explicit Parser(std::string_view text) {
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) src_ += c;
  }

  BundleExpr parseAll() {
    if (src_.empty()) throw ParseError("empty bundle expression");
    BundleExpr e = expr();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("bundle expression: " + what + " at offset " + std::to_string(pos_) + " in '" + src_ + "'");
  }
  bool peek(char c) const { return pos_ < src_.size() && src_[pos_] == c; }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  bool acceptWord(std::string_view w) {
    if (src_.compare(pos_, w.size(), w) == 0) {
      pos_ += w.size();
      return true;
    }
    return false;
  }
  std::string integer() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return src_.substr(start, pos_ - start);
  }

  BundleExpr expr() {
    BundleExpr e = term();
    for (;;) {
      if (accept('+'))
        e = e + term();
      else if (accept('-'))
        e = e - term();
      else
        return e;
    }
  }

  BundleExpr term() {
    BundleExpr e = unary();
    for (;;) {
      if (accept('*')) {
        e = e * unary();
      } else if (accept('/')) {
        Rational d = parseRational(integer());
        if (d == 0) fail("division by zero");
        e = (Rational(1) / d) * e;
      } else {
        return e;
      }
    }
  }

  BundleExpr unary() {
    if (accept('-')) return -unary();
    if (accept('~')) return unary().tilde();
    return primary();
  }

  BundleExpr call() {
    expect('(');
    BundleExpr inner = expr();
    expect(')');
    return inner;
  }

  BundleExpr primary() {
    if (accept('(')) {
      BundleExpr e = expr();
      expect(')');
      return e;
    }
    if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      return BundleExpr::constant(parseRational(integer()));
    }
    std::size_t start = pos_;
    while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
    if (start == pos_) fail("expected operand");
    std::string word = src_.substr(start, pos_ - start);
    if (peek('(')) {
      if (word == "L2") return call().lambda2();
      if (word == "S2") return call().sym2();
      if (word == "tilde") return call().tilde();
      if (word.size() > 3 && word.rfind("psi", 0) == 0) {
        std::string k = word.substr(3);
        for (char c : k)
          if (!std::isdigit(static_cast<unsigned char>(c))) fail("bad Adams index");
        long idx = std::stol(k);
        if (idx < 1) fail("Adams index must be >= 1");
        return call().adams(idx);
      }
      fail("unknown operation '" + word + "'");
    }
    if (!std::isalpha(static_cast<unsigned char>(word[0]))) fail("bad atom name '" + word + "'");
    return BundleExpr::atom(word);
  }

  std::string src_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string BundleExpr::toString() const { return render(*this); }

BundleExpr BundleExpr::parse(std::string_view text) { return Parser(text).parseAll(); }

}  // namespace anomod
