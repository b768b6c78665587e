#pragma once

// Symbolic virtual-bundle expressions.
//
// Grammar accepted by BundleExpr::parse (whitespace is ignored):
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' unary) | ('/' INTEGER))*
//   unary   := '-' unary | '~' unary | primary
//   primary := NUMBER | NAME | '(' expr ')'
//            | 'L2(' expr ')' | 'S2(' expr ')' | 'psi' INTEGER '(' expr ')'
//            | 'tilde(' expr ')'
//
// '*' is the tensor product (a number or rank symbol acts as a trivial
// bundle, so "3*F1" scales), '/ k' divides by an integer, '~E' is E - rank E.
// NAME is an atom resolved by the ChernModel: TZ, F1, F2, F (alias of F1),
// xi, and the rank symbols m and n, which denote trivial bundles of that rank.

#include <memory>
#include <string>
#include <string_view>

#include "anomod/rational.hpp"

namespace anomod {

class BundleExpr {
 public:
  enum class Kind { Atom, Constant, Sum, Difference, Scale, Tensor, Lambda2, Sym2, Adams, Tilde };

  static BundleExpr atom(std::string name);
  static BundleExpr constant(const Rational& rank);
  static BundleExpr parse(std::string_view text);

  Kind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  const Rational& value() const { return node_->value; }
  long adamsIndex() const { return node_->adams; }
  const BundleExpr& left() const { return *node_->left; }
  const BundleExpr& right() const { return *node_->right; }

  friend BundleExpr operator+(const BundleExpr& a, const BundleExpr& b);
  friend BundleExpr operator-(const BundleExpr& a, const BundleExpr& b);
  friend BundleExpr operator*(const BundleExpr& a, const BundleExpr& b);
  friend BundleExpr operator*(const Rational& s, const BundleExpr& a);
  BundleExpr operator-() const;

  BundleExpr lambda2() const;
  BundleExpr sym2() const;
  BundleExpr adams(long k) const;
  BundleExpr tilde() const;

  /// Deterministic, re-parseable rendering.
  std::string toString() const;

 private:
  struct Node {
    Kind kind;
    std::string name;
    Rational value;
    long adams = 0;
    std::shared_ptr<const BundleExpr> left;
    std::shared_ptr<const BundleExpr> right;
  };
  explicit BundleExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static BundleExpr make(Kind kind, const BundleExpr* l, const BundleExpr* r);

  std::shared_ptr<const Node> node_;
};

}  // namespace anomod
