#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string_view>

#include "coexpand/error.hpp"
#include "coexpand/interval.hpp"

namespace coexpand {

enum class Builtin { Exp, Log, Sqrt, Sin, Cos, Tanh, Atan, Erf };

inline constexpr std::array<Builtin, 8> kAllBuiltins = {Builtin::Exp,  Builtin::Log,  Builtin::Sqrt,
                                                        Builtin::Sin,  Builtin::Cos,  Builtin::Tanh,
                                                        Builtin::Atan, Builtin::Erf};

std::string_view builtin_name(Builtin b) noexcept;
std::optional<Builtin> builtin_from_name(std::string_view name) noexcept;

/// Scalar primitives with a uniform interface over double and Interval.
/// The double overloads raise DomainViolation exactly where the interval
/// overloads do, so point and interval evaluation fail on the same inputs.
namespace prim {

inline double exp(double x) { return std::exp(x); }
inline double log(double x) {
  if (!(x > 0)) throw DomainViolation("log", x, x);
  return std::log(x);
}
inline double sqrt(double x) {
  if (!(x >= 0)) throw DomainViolation("sqrt", x, x);
  return std::sqrt(x);
}
inline double sin(double x) { return std::sin(x); }
inline double cos(double x) { return std::cos(x); }
inline double tanh(double x) { return std::tanh(x); }
inline double atan(double x) { return std::atan(x); }
inline double erf(double x) { return std::erf(x); }
inline double sqr(double x) { return x * x; }
inline double powi(double x, int n) { return coexpand::powi(x, n); }
inline double div(double a, double b) {
  if (b == 0.0) throw DomainViolation("div", b, b);
  return a / b;
}
inline double hull(double a, double /*b*/) { return a; }
/// 1 - tanh(x)^2 without the cancellation for large |x|.
inline double sech2(double x) {
  double c = std::cosh(x);
  return 1.0 / (c * c);
}
inline bool positive(double x) { return x > 0; }
inline void require_positive(double x, const char* what) {
  if (!(x > 0)) throw DomainViolation(what, x, x);
}

inline Interval exp(const Interval& x) { return coexpand::exp(x); }
inline Interval log(const Interval& x) { return coexpand::log(x); }
inline Interval sqrt(const Interval& x) { return coexpand::sqrt(x); }
inline Interval sin(const Interval& x) { return coexpand::sin(x); }
inline Interval cos(const Interval& x) { return coexpand::cos(x); }
inline Interval tanh(const Interval& x) { return coexpand::tanh(x); }
inline Interval atan(const Interval& x) { return coexpand::atan(x); }
inline Interval erf(const Interval& x) { return coexpand::erf(x); }
inline Interval sqr(const Interval& x) { return coexpand::sqr(x); }
inline Interval powi(const Interval& x, int n) { return coexpand::powi(x, n); }
inline Interval div(const Interval& a, const Interval& b) { return a / b; }
inline Interval hull(const Interval& a, const Interval& b) { return coexpand::hull(a, b); }
inline bool positive(const Interval& x) { return x.lo() > 0; }
inline Interval sech2(const Interval& x) {
  auto cosh_at = [](double a) {
    Interval e = coexpand::exp(Interval(a));
    return (e + Interval(1.0) / e) * Interval(0.5);
  };
  Interval c(cosh_at(x.mig()).lo(), cosh_at(x.mag()).hi());
  Interval direct = Interval(1.0) / coexpand::sqr(c);
  Interval t = coexpand::tanh(x);
  Interval alt = Interval(1.0) - coexpand::sqr(t);
  Interval both = coexpand::intersect(direct, alt);
  return both.is_empty() ? direct : both;
}
inline void require_positive(const Interval& x, const char* what) {
  if (!(x.lo() > 0)) throw DomainViolation(what, x.lo(), x.hi());
}

template <class S>
S two_over_sqrt_pi();
template <>
inline double two_over_sqrt_pi<double>() {
  return std::numbers::inv_sqrtpi * 2.0;
}
template <>
inline Interval two_over_sqrt_pi<Interval>() {
  return Interval::around(std::numbers::inv_sqrtpi * 2.0);
}

template <class S>
S apply(Builtin b, const S& x) {
  switch (b) {
    case Builtin::Exp: return prim::exp(x);
    case Builtin::Log: return prim::log(x);
    case Builtin::Sqrt: return prim::sqrt(x);
    case Builtin::Sin: return prim::sin(x);
    case Builtin::Cos: return prim::cos(x);
    case Builtin::Tanh: return prim::tanh(x);
    case Builtin::Atan: return prim::atan(x);
    case Builtin::Erf: return prim::erf(x);
  }
  return x;
}

}  // namespace prim

}  // namespace coexpand
