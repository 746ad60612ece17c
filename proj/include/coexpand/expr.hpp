#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "coexpand/builtin.hpp"

namespace coexpand {

struct Node;

/// Immutable expression tree for a scalar function of one variable `x`.
///
/// Copies share structure; nothing reachable from a FunctionExpr is ever
/// mutated, so values may be shared freely between threads.
class FunctionExpr {
 public:
  /// The identity function x.
  FunctionExpr();

  static FunctionExpr variable();
  /// Throws std::invalid_argument for non-finite values.
  static FunctionExpr constant(double value);
  static FunctionExpr apply(Builtin b, FunctionExpr arg);
  static FunctionExpr pow(FunctionExpr base, int exponent);

  const Node& node() const noexcept { return *node_; }

  /// Structural equality; constants compare bit-for-bit.
  friend bool operator==(const FunctionExpr& a, const FunctionExpr& b);

 private:
  explicit FunctionExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  friend FunctionExpr make_node(Node node);

  std::shared_ptr<const Node> node_;
};

enum class BinaryOp { Add, Sub, Mul, Div };

struct Constant {
  double value;
};
struct Variable {};
struct Binary {
  BinaryOp op;
  FunctionExpr lhs;
  FunctionExpr rhs;
};
struct PowInt {
  FunctionExpr base;
  int exponent;
};
struct Neg {
  FunctionExpr operand;
};
struct Apply {
  Builtin fn;
  FunctionExpr arg;
};
/// (left ⋆ right)(arg): left(arg) when arg <= 0, right(arg) when arg >= 0.
/// `left` and `right` are functions of their own variable; substitution
/// (compose) only ever rewrites `arg`.
struct Glue {
  FunctionExpr left;
  FunctionExpr right;
  FunctionExpr arg;
};

struct Node {
  std::variant<Constant, Variable, Binary, PowInt, Neg, Apply, Glue> data;
};

FunctionExpr operator+(const FunctionExpr& a, const FunctionExpr& b);
FunctionExpr operator-(const FunctionExpr& a, const FunctionExpr& b);
FunctionExpr operator*(const FunctionExpr& a, const FunctionExpr& b);
FunctionExpr operator/(const FunctionExpr& a, const FunctionExpr& b);
FunctionExpr operator-(const FunctionExpr& a);

/// Non-constant affine map t -> slope * t + intercept.
struct AffineMap {
  double slope = 1.0;
  double intercept = 0.0;

  double operator()(double t) const noexcept { return slope * t + intercept; }
  static AffineMap identity() noexcept { return {1.0, 0.0}; }
  FunctionExpr to_expr() const;
};

/// g ∘ f: substitutes f for the variable of g.
FunctionExpr compose(const FunctionExpr& g, const FunctionExpr& f);

/// a ∘ f ∘ b.  Throws DegenerateAffine if either slope is zero.
FunctionExpr affine_conjugate(const FunctionExpr& f, const AffineMap& a, const AffineMap& b);

std::string format(const FunctionExpr& f);

/// The tree folded to slope * x + intercept, when it is affine after
/// constant folding (glue nodes are never folded).
std::optional<AffineMap> affine_form(const FunctionExpr& f);

/// True when the tree is syntactically the identity after constant folding.
bool is_identity(const FunctionExpr& f);

bool contains_glue(const FunctionExpr& f);
std::size_t node_count(const FunctionExpr& f);

namespace detail {
/// Builds a glue node without validating the glue hypotheses.  Only the
/// validated `glue` constructor and the internal reparse path use this.
FunctionExpr make_glue_unchecked(FunctionExpr left, FunctionExpr right, FunctionExpr arg = FunctionExpr());
FunctionExpr make_binary(BinaryOp op, FunctionExpr lhs, FunctionExpr rhs);
FunctionExpr make_neg(FunctionExpr operand);
}  // namespace detail

}  // namespace coexpand
