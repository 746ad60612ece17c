#include "coexpand/eval.hpp"

#include <type_traits>

namespace coexpand {

namespace {

template <class V>
struct IsJet : std::false_type {};
template <class S>
struct IsJet<Jet3<S>> : std::true_type {};

template <class V>
auto scalar_part(const V& v) {
  if constexpr (IsJet<V>::value) {
    return v.v;
  } else {
    return v;
  }
}

template <class V>
V make_constant(double c) {
  if constexpr (IsJet<V>::value) {
    using S = decltype(V{}.v);
    return V::constant(S(c));
  } else {
    return V(c);
  }
}

template <class V>
V divide(const V& a, const V& b) {
  if constexpr (IsJet<V>::value) {
    return a / b;
  } else {
    return prim::div(a, b);
  }
}

template <class V>
V power(const V& a, int n) {
  if constexpr (IsJet<V>::value) {
    return powi(a, n);
  } else {
    return prim::powi(a, n);
  }
}

template <class V>
V builtin(Builtin b, const V& a) {
  if constexpr (IsJet<V>::value) {
    return apply(b, a);
  } else {
    return prim::apply(b, a);
  }
}

struct Context {
  const EvalOptions& options;
  SeamInfo* seams;

  void touch(bool straddle) const {
    if (!seams) return;
    seams->touched = true;
    seams->straddled = seams->straddled || straddle;
  }
};

template <class V>
V evaluate(const FunctionExpr& f, const V& x, const Context& ctx);

// Evaluate a glue child as a function of its own variable at `t`, then
// chain with the argument.
template <class V>
V glue_child(const FunctionExpr& child, const V& arg, const decltype(scalar_part(std::declval<V>()))& t,
             const Context& ctx) {
  if constexpr (IsJet<V>::value) {
    V inner = evaluate(child, V::variable(t), ctx);
    return chain(arg, inner.v, inner.d1, inner.d2, inner.d3);
  } else {
    (void)arg;
    return evaluate(child, V(t), ctx);
  }
}

template <class V>
V evaluate_glue(const Glue& g, const V& x, const Context& ctx) {
  V arg = evaluate(g.arg, x, ctx);
  auto t = scalar_part(arg);
  using S = decltype(t);
  if constexpr (std::is_same_v<S, double>) {
    bool left = t < 0 || (t == 0 && ctx.options.seam_side == GlueSide::Left);
    if (t == 0) ctx.touch(false);
    return glue_child(left ? g.left : g.right, arg, t, ctx);
  } else {
    if (t.is_point() && t.lo() == 0.0) {
      ctx.touch(false);
      return glue_child(ctx.options.seam_side == GlueSide::Left ? g.left : g.right, arg, t, ctx);
    }
    if (t.hi() <= 0) {
      if (t.hi() == 0) ctx.touch(false);
      return glue_child(g.left, arg, t, ctx);
    }
    if (t.lo() >= 0) {
      if (t.lo() == 0) ctx.touch(false);
      return glue_child(g.right, arg, t, ctx);
    }
    ctx.touch(true);
    if constexpr (IsJet<V>::value) {
      V inner_l = evaluate(g.left, V::variable(Interval(t.lo(), 0.0)), ctx);
      V inner_r = evaluate(g.right, V::variable(Interval(0.0, t.hi())), ctx);
      V inner = hull(inner_l, inner_r);
      return chain(arg, inner.v, inner.d1, inner.d2, inner.d3);
    } else {
      return hull(evaluate(g.left, V(Interval(t.lo(), 0.0)), ctx), evaluate(g.right, V(Interval(0.0, t.hi())), ctx));
    }
  }
}

template <class V>
V evaluate(const FunctionExpr& f, const V& x, const Context& ctx) {
  const auto& data = f.node().data;
  switch (data.index()) {
    case 0: return make_constant<V>(std::get<Constant>(data).value);
    case 1: return x;
    case 2: {
      const auto& b = std::get<Binary>(data);
      V l = evaluate(b.lhs, x, ctx);
      V r = evaluate(b.rhs, x, ctx);
      switch (b.op) {
        case BinaryOp::Add: return l + r;
        case BinaryOp::Sub: return l - r;
        case BinaryOp::Mul: return l * r;
        case BinaryOp::Div: return divide(l, r);
      }
      return l;
    }
    case 3: {
      const auto& p = std::get<PowInt>(data);
      return power(evaluate(p.base, x, ctx), p.exponent);
    }
    case 4: return -evaluate(std::get<Neg>(data).operand, x, ctx);
    case 5: {
      const auto& a = std::get<Apply>(data);
      return builtin(a.fn, evaluate(a.arg, x, ctx));
    }
    default: return evaluate_glue(std::get<Glue>(data), x, ctx);
  }
}

}  // namespace

double eval(const FunctionExpr& f, double x, const EvalOptions& options, SeamInfo* seams) {
  return evaluate(f, x, Context{options, seams});
}

Interval interval_eval(const FunctionExpr& f, const Interval& x, const EvalOptions& options, SeamInfo* seams) {
  return evaluate(f, x, Context{options, seams});
}

Jet3<double> jet_eval(const FunctionExpr& f, double x, const EvalOptions& options, SeamInfo* seams) {
  return evaluate(f, Jet3<double>::variable(x), Context{options, seams});
}

Jet3<Interval> jet_eval(const FunctionExpr& f, const Interval& x, const EvalOptions& options, SeamInfo* seams) {
  return evaluate(f, Jet3<Interval>::variable(x), Context{options, seams});
}

}  // namespace coexpand
