#pragma once

#include "coexpand/builtin.hpp"
#include "coexpand/interval.hpp"

namespace coexpand {

/// Value and derivatives of order 1..3 of a function at an expansion point.
/// S is double (point jets) or Interval (enclosures of the jet over a set).
template <class S>
struct Jet3 {
  S v{};
  S d1{};
  S d2{};
  S d3{};

  static Jet3 variable(const S& x) { return {x, S(1.0), S(0.0), S(0.0)}; }
  static Jet3 constant(const S& c) { return {c, S(0.0), S(0.0), S(0.0)}; }
};

/// Faà di Bruno to order three: the jet of g(u(x)) from the jet of u and
/// g, g', g'', g''' evaluated at u(x).
template <class S>
Jet3<S> chain(const Jet3<S>& u, const S& g0, const S& g1, const S& g2, const S& g3) {
  S u1sq = prim::sqr(u.d1);
  return {g0, g1 * u.d1, g2 * u1sq + g1 * u.d2,
          g3 * prim::powi(u.d1, 3) + S(3.0) * g2 * u.d1 * u.d2 + g1 * u.d3};
}

template <class S>
Jet3<S> operator+(const Jet3<S>& a, const Jet3<S>& b) {
  return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2, a.d3 + b.d3};
}

template <class S>
Jet3<S> operator-(const Jet3<S>& a, const Jet3<S>& b) {
  return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2, a.d3 - b.d3};
}

template <class S>
Jet3<S> operator-(const Jet3<S>& a) {
  return {-a.v, -a.d1, -a.d2, -a.d3};
}

template <class S>
Jet3<S> operator*(const Jet3<S>& a, const Jet3<S>& b) {
  return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + S(2.0) * a.d1 * b.d1 + a.v * b.d2,
          a.d3 * b.v + S(3.0) * (a.d2 * b.d1 + a.d1 * b.d2) + a.v * b.d3};
}

template <class S>
Jet3<S> reciprocal(const Jet3<S>& u) {
  S r = prim::div(S(1.0), u.v);
  S r2 = prim::sqr(r);
  return chain(u, r, -r2, S(2.0) * prim::powi(r, 3), S(-6.0) * prim::sqr(r2));
}

template <class S>
Jet3<S> operator/(const Jet3<S>& a, const Jet3<S>& b) {
  // Constant denominators are common (x/4) and divide componentwise exactly.
  if (b.d1 == S(0.0) && b.d2 == S(0.0) && b.d3 == S(0.0)) {
    return {prim::div(a.v, b.v), prim::div(a.d1, b.v), prim::div(a.d2, b.v), prim::div(a.d3, b.v)};
  }
  return a * reciprocal(b);
}

template <class S>
Jet3<S> powi(const Jet3<S>& u, int n) {
  if (n == 0) return Jet3<S>::constant(S(1.0));
  if (n == 1) return u;
  if (n < 0) return reciprocal(powi(u, -n));
  const S& t = u.v;
  double nn = n;
  S g1 = S(nn) * prim::powi(t, n - 1);
  S g2 = n >= 2 ? S(nn * (nn - 1)) * prim::powi(t, n - 2) : S(0.0);
  S g3 = n >= 3 ? S(nn * (nn - 1) * (nn - 2)) * prim::powi(t, n - 3) : S(0.0);
  return chain(u, prim::powi(t, n), g1, g2, g3);
}

/// Jet of a builtin applied to u.  Domain rules: log and sqrt need a
/// strictly positive argument at jet order (sqrt' is unbounded at 0).
template <class S>
Jet3<S> apply(Builtin b, const Jet3<S>& u) {
  const S& t = u.v;
  switch (b) {
    case Builtin::Exp: {
      S e = prim::exp(t);
      return chain(u, e, e, e, e);
    }
    case Builtin::Log: {
      S l = prim::log(t);
      S r = prim::div(S(1.0), t);
      return chain(u, l, r, -prim::sqr(r), S(2.0) * prim::powi(r, 3));
    }
    case Builtin::Sqrt: {
      prim::require_positive(t, "sqrt");
      S s = prim::sqrt(t);
      S r = prim::div(S(1.0), s);
      return chain(u, s, S(0.5) * r, S(-0.25) * prim::powi(r, 3), S(0.375) * prim::powi(r, 5));
    }
    case Builtin::Sin: {
      S s = prim::sin(t);
      S c = prim::cos(t);
      return chain(u, s, c, -s, -c);
    }
    case Builtin::Cos: {
      S s = prim::sin(t);
      S c = prim::cos(t);
      return chain(u, c, -s, -c, s);
    }
    case Builtin::Tanh: {
      S th = prim::tanh(t);
      S th2 = prim::sqr(th);
      S w = prim::sech2(t);
      return chain(u, th, w, S(-2.0) * th * w, (S(6.0) * th2 - S(2.0)) * w);
    }
    case Builtin::Atan: {
      S q = prim::div(S(1.0), S(1.0) + prim::sqr(t));
      return chain(u, prim::atan(t), q, S(-2.0) * t * prim::sqr(q), (S(6.0) * prim::sqr(t) - S(2.0)) * prim::powi(q, 3));
    }
    case Builtin::Erf: {
      S e = prim::two_over_sqrt_pi<S>() * prim::exp(-prim::sqr(t));
      return chain(u, prim::erf(t), e, S(-2.0) * t * e, (S(4.0) * prim::sqr(t) - S(2.0)) * e);
    }
  }
  return u;
}

inline Jet3<Interval> hull(const Jet3<Interval>& a, const Jet3<Interval>& b) {
  return {hull(a.v, b.v), hull(a.d1, b.d1), hull(a.d2, b.d2), hull(a.d3, b.d3)};
}

inline Jet3<Interval> to_interval(const Jet3<double>& j) { return {j.v, j.d1, j.d2, j.d3}; }

}  // namespace coexpand
