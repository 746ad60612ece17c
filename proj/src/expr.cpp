#include "coexpand/expr.hpp"

#include <charconv>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "coexpand/error.hpp"

namespace coexpand {

namespace {

constexpr std::string_view kBuiltinNames[] = {"exp", "log", "sqrt", "sin", "cos", "tanh", "atan", "erf"};

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

std::string_view builtin_name(Builtin b) noexcept { return kBuiltinNames[static_cast<int>(b)]; }

std::optional<Builtin> builtin_from_name(std::string_view name) noexcept {
  for (Builtin b : kAllBuiltins) {
    if (builtin_name(b) == name) return b;
  }
  return std::nullopt;
}

FunctionExpr make_node(Node node) { return FunctionExpr(std::make_shared<const Node>(std::move(node))); }

FunctionExpr::FunctionExpr() : FunctionExpr(std::make_shared<const Node>(Node{Variable{}})) {}

FunctionExpr FunctionExpr::variable() { return FunctionExpr(); }

FunctionExpr FunctionExpr::constant(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("constant must be finite");
  return make_node(Node{Constant{value}});
}

FunctionExpr FunctionExpr::apply(Builtin b, FunctionExpr arg) { return make_node(Node{Apply{b, std::move(arg)}}); }

FunctionExpr FunctionExpr::pow(FunctionExpr base, int exponent) {
  return make_node(Node{PowInt{std::move(base), exponent}});
}

bool operator==(const FunctionExpr& a, const FunctionExpr& b) {
  if (a.node_ == b.node_) return true;
  const auto& da = a.node().data;
  const auto& db = b.node().data;
  if (da.index() != db.index()) return false;
  return std::visit(
      overloaded{
          [&](const Constant& x) {
            double y = std::get<Constant>(db).value;
            return std::memcmp(&x.value, &y, sizeof(double)) == 0;
          },
          [&](const Variable&) { return true; },
          [&](const Binary& x) {
            const auto& y = std::get<Binary>(db);
            return x.op == y.op && x.lhs == y.lhs && x.rhs == y.rhs;
          },
          [&](const PowInt& x) {
            const auto& y = std::get<PowInt>(db);
            return x.exponent == y.exponent && x.base == y.base;
          },
          [&](const Neg& x) { return x.operand == std::get<Neg>(db).operand; },
          [&](const Apply& x) {
            const auto& y = std::get<Apply>(db);
            return x.fn == y.fn && x.arg == y.arg;
          },
          [&](const Glue& x) {
            const auto& y = std::get<Glue>(db);
            return x.left == y.left && x.right == y.right && x.arg == y.arg;
          },
      },
      da);
}

namespace detail {

FunctionExpr make_glue_unchecked(FunctionExpr left, FunctionExpr right, FunctionExpr arg) {
  return make_node(Node{Glue{std::move(left), std::move(right), std::move(arg)}});
}

FunctionExpr make_binary(BinaryOp op, FunctionExpr lhs, FunctionExpr rhs) {
  return make_node(Node{Binary{op, std::move(lhs), std::move(rhs)}});
}

FunctionExpr make_neg(FunctionExpr operand) { return make_node(Node{Neg{std::move(operand)}}); }

}  // namespace detail

FunctionExpr operator+(const FunctionExpr& a, const FunctionExpr& b) {
  return detail::make_binary(BinaryOp::Add, a, b);
}
FunctionExpr operator-(const FunctionExpr& a, const FunctionExpr& b) {
  return detail::make_binary(BinaryOp::Sub, a, b);
}
FunctionExpr operator*(const FunctionExpr& a, const FunctionExpr& b) {
  return detail::make_binary(BinaryOp::Mul, a, b);
}
FunctionExpr operator/(const FunctionExpr& a, const FunctionExpr& b) {
  return detail::make_binary(BinaryOp::Div, a, b);
}
FunctionExpr operator-(const FunctionExpr& a) { return detail::make_neg(a); }

FunctionExpr AffineMap::to_expr() const {
  FunctionExpr x;
  FunctionExpr scaled = slope == 1.0 ? x
                        : slope == -1.0 ? -x
                                        : FunctionExpr::constant(slope) * x;
  if (intercept == 0.0) return scaled;
  if (intercept < 0.0) return scaled - FunctionExpr::constant(-intercept);
  return scaled + FunctionExpr::constant(intercept);
}

FunctionExpr compose(const FunctionExpr& g, const FunctionExpr& f) {
  return std::visit(
      overloaded{
          [&](const Constant&) { return g; },
          [&](const Variable&) { return f; },
          [&](const Binary& b) { return detail::make_binary(b.op, compose(b.lhs, f), compose(b.rhs, f)); },
          [&](const PowInt& p) { return FunctionExpr::pow(compose(p.base, f), p.exponent); },
          [&](const Neg& n) { return detail::make_neg(compose(n.operand, f)); },
          [&](const Apply& a) { return FunctionExpr::apply(a.fn, compose(a.arg, f)); },
          [&](const Glue& gl) { return detail::make_glue_unchecked(gl.left, gl.right, compose(gl.arg, f)); },
      },
      g.node().data);
}

FunctionExpr affine_conjugate(const FunctionExpr& f, const AffineMap& a, const AffineMap& b) {
  if (a.slope == 0.0) throw DegenerateAffine("outer affine map has zero slope");
  if (b.slope == 0.0) throw DegenerateAffine("inner affine map has zero slope");
  FunctionExpr inner = (b.slope == 1.0 && b.intercept == 0.0) ? f : compose(f, b.to_expr());
  if (a.slope == 1.0 && a.intercept == 0.0) return inner;
  return compose(a.to_expr(), inner);
}

// ---------------------------------------------------------------------------
// Printing.  Precedence levels mirror the grammar: 1 = expr (+ -),
// 2 = term (* /), 3 = factor (unary minus, negative literal),
// 4 = power, 5 = base (number, x, call, parenthesised).

namespace {

std::string number_text(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

int level(const FunctionExpr& f) {
  return std::visit(overloaded{
                        [](const Constant& c) { return std::signbit(c.value) ? 3 : 5; },
                        [](const Variable&) { return 5; },
                        [](const Binary& b) { return (b.op == BinaryOp::Add || b.op == BinaryOp::Sub) ? 1 : 2; },
                        [](const PowInt&) { return 4; },
                        [](const Neg&) { return 3; },
                        [](const Apply&) { return 5; },
                        [](const Glue&) { return 5; },
                    },
                    f.node().data);
}

void emit(const FunctionExpr& f, std::string& out);

void emit_at(const FunctionExpr& f, int min_level, std::string& out) {
  if (level(f) < min_level) {
    out += '(';
    emit(f, out);
    out += ')';
  } else {
    emit(f, out);
  }
}

void emit(const FunctionExpr& f, std::string& out) {
  std::visit(overloaded{
                 [&](const Constant& c) { out += number_text(c.value); },
                 [&](const Variable&) { out += 'x'; },
                 [&](const Binary& b) {
                   bool additive = b.op == BinaryOp::Add || b.op == BinaryOp::Sub;
                   int own = additive ? 1 : 2;
                   emit_at(b.lhs, own, out);
                   static constexpr const char* kOps[] = {" + ", " - ", " * ", " / "};
                   out += kOps[static_cast<int>(b.op)];
                   emit_at(b.rhs, own + 1, out);
                 },
                 [&](const PowInt& p) {
                   emit_at(p.base, 5, out);
                   out += '^';
                   out += std::to_string(p.exponent);
                 },
                 [&](const Neg& n) {
                   out += '-';
                   // "-2" would re-read as a negative literal, so a literal
                   // operand is always parenthesised.
                   bool literal = std::holds_alternative<Constant>(n.operand.node().data);
                   emit_at(n.operand, literal ? 6 : 4, out);
                 },
                 [&](const Apply& a) {
                   out += builtin_name(a.fn);
                   out += '(';
                   emit(a.arg, out);
                   out += ')';
                 },
                 [&](const Glue& g) {
                   out += "glue(";
                   emit(g.left, out);
                   out += ", ";
                   emit(g.right, out);
                   if (!std::holds_alternative<Variable>(g.arg.node().data)) {
                     out += ", ";
                     emit(g.arg, out);
                   }
                   out += ')';
                 },
             },
             f.node().data);
}

}  // namespace

std::string format(const FunctionExpr& f) {
  std::string out;
  emit(f, out);
  return out;
}

// ---------------------------------------------------------------------------

std::optional<AffineMap> affine_form(const FunctionExpr& f) {
  using R = std::optional<AffineMap>;
  return std::visit(
      overloaded{
          [](const Constant& c) -> R { return AffineMap{0.0, c.value}; },
          [](const Variable&) -> R { return AffineMap{1.0, 0.0}; },
          [](const Binary& b) -> R {
            R l = affine_form(b.lhs);
            if (!l) return std::nullopt;
            R r = affine_form(b.rhs);
            if (!r) return std::nullopt;
            switch (b.op) {
              case BinaryOp::Add: return AffineMap{l->slope + r->slope, l->intercept + r->intercept};
              case BinaryOp::Sub: return AffineMap{l->slope - r->slope, l->intercept - r->intercept};
              case BinaryOp::Mul:
                if (l->slope == 0.0) return AffineMap{l->intercept * r->slope, l->intercept * r->intercept};
                if (r->slope == 0.0) return AffineMap{r->intercept * l->slope, r->intercept * l->intercept};
                return std::nullopt;
              case BinaryOp::Div:
                if (r->slope != 0.0 || r->intercept == 0.0) return std::nullopt;
                return AffineMap{l->slope / r->intercept, l->intercept / r->intercept};
            }
            return std::nullopt;
          },
          [](const PowInt& p) -> R {
            if (p.exponent == 0) return AffineMap{0.0, 1.0};
            R b = affine_form(p.base);
            if (!b) return std::nullopt;
            if (p.exponent == 1) return b;
            if (b->slope != 0.0) return std::nullopt;
            if (p.exponent < 0 && b->intercept == 0.0) return std::nullopt;
            return AffineMap{0.0, powi(b->intercept, p.exponent)};
          },
          [](const Neg& n) -> R {
            R e = affine_form(n.operand);
            if (!e) return std::nullopt;
            return AffineMap{-e->slope, -e->intercept};
          },
          [](const Apply& a) -> R {
            R e = affine_form(a.arg);
            if (!e || e->slope != 0.0) return std::nullopt;
            try {
              double v = prim::apply(a.fn, e->intercept);
              if (!std::isfinite(v)) return std::nullopt;
              return AffineMap{0.0, v};
            } catch (const DomainViolation&) {
              return std::nullopt;
            }
          },
          [](const Glue&) -> R { return std::nullopt; },
      },
      f.node().data);
}

bool is_identity(const FunctionExpr& f) {
  auto a = affine_form(f);
  return a && a->slope == 1.0 && a->intercept == 0.0;
}

bool contains_glue(const FunctionExpr& f) {
  return std::visit(overloaded{
                        [](const Constant&) { return false; },
                        [](const Variable&) { return false; },
                        [](const Binary& b) { return contains_glue(b.lhs) || contains_glue(b.rhs); },
                        [](const PowInt& p) { return contains_glue(p.base); },
                        [](const Neg& n) { return contains_glue(n.operand); },
                        [](const Apply& a) { return contains_glue(a.arg); },
                        [](const Glue&) { return true; },
                    },
                    f.node().data);
}

std::size_t node_count(const FunctionExpr& f) {
  return std::visit(overloaded{
                        [](const Constant&) -> std::size_t { return 1; },
                        [](const Variable&) -> std::size_t { return 1; },
                        [](const Binary& b) { return 1 + node_count(b.lhs) + node_count(b.rhs); },
                        [](const PowInt& p) { return 1 + node_count(p.base); },
                        [](const Neg& n) { return 1 + node_count(n.operand); },
                        [](const Apply& a) { return 1 + node_count(a.arg); },
                        [](const Glue& g) {
                          return 1 + node_count(g.left) + node_count(g.right) + node_count(g.arg);
                        },
                    },
                    f.node().data);
}

}  // namespace coexpand
