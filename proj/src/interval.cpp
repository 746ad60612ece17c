#include "coexpand/interval.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cfloat>
#include <numbers>
#include <stdexcept>
#include <string>

#include "coexpand/error.hpp"

namespace coexpand {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Below this magnitude an fma residual may itself underflow, so the sign of
// the rounding error is not trustworthy.
constexpr double kTiny = 0x1p-960;

}  // namespace

Interval make_raw(double lo, double hi) noexcept { return Interval(lo, hi, Interval::Raw{}); }

namespace rounding {

namespace {

double step_up(double x) noexcept {
  if (std::isnan(x) || x == kInf) return x;
  if (x == 0.0) return std::numeric_limits<double>::denorm_min();
  auto bits = std::bit_cast<std::uint64_t>(x);
  return std::bit_cast<double>(x > 0 ? bits + 1 : bits - 1);
}

}  // namespace

double next_down(double x, int ulps) noexcept {
  for (int i = 0; i < ulps; ++i) x = -step_up(-x);
  return x;
}

double next_up(double x, int ulps) noexcept {
  for (int i = 0; i < ulps; ++i) x = step_up(x);
  return x;
}

namespace {

// Exact rounding error of s = fl(a + b) via Knuth's two-sum.
double two_sum_err(double a, double b, double s) noexcept {
  double bb = s - a;
  return (a - (s - bb)) + (b - bb);
}

bool finite3(double a, double b, double r) noexcept {
  return std::isfinite(a) && std::isfinite(b) && std::isfinite(r);
}

}  // namespace

double add_down(double a, double b) noexcept {
  double s = a + b;
  if (!finite3(a, b, s)) return (std::isinf(s) && std::isfinite(a) && std::isfinite(b)) ? next_down(s) : s;
  return two_sum_err(a, b, s) < 0 ? next_down(s) : s;
}

double add_up(double a, double b) noexcept {
  double s = a + b;
  if (!finite3(a, b, s)) return (std::isinf(s) && std::isfinite(a) && std::isfinite(b)) ? next_up(s) : s;
  return two_sum_err(a, b, s) > 0 ? next_up(s) : s;
}

double sub_down(double a, double b) noexcept { return add_down(a, -b); }
double sub_up(double a, double b) noexcept { return add_up(a, -b); }

double mul_down(double a, double b) noexcept {
  if (a == 0.0 || b == 0.0) return 0.0;
  double p = a * b;
  if (!finite3(a, b, p)) return (std::isinf(p) && std::isfinite(a) && std::isfinite(b)) ? next_down(p) : p;
  if (std::fabs(p) < kTiny) return next_down(p);
  return std::fma(a, b, -p) < 0 ? next_down(p) : p;
}

double mul_up(double a, double b) noexcept {
  if (a == 0.0 || b == 0.0) return 0.0;
  double p = a * b;
  if (!finite3(a, b, p)) return (std::isinf(p) && std::isfinite(a) && std::isfinite(b)) ? next_up(p) : p;
  if (std::fabs(p) < kTiny) return next_up(p);
  return std::fma(a, b, -p) > 0 ? next_up(p) : p;
}

namespace {

// Sign of (a / b - fl(a / b)); 0 when exact.
int div_err_sign(double a, double b, double q) noexcept {
  double r = std::fma(-q, b, a);  // exact: a - q*b
  if (r == 0.0) return 0;
  return ((r > 0) == (b > 0)) ? 1 : -1;
}

}  // namespace

double div_down(double a, double b) noexcept {
  if (a == 0.0) return 0.0;
  double q = a / b;
  if (!finite3(a, b, q)) return (std::isinf(q) && std::isfinite(a) && std::isfinite(b)) ? next_down(q) : q;
  if (std::fabs(q) < kTiny || std::fabs(a) < kTiny) return next_down(q);
  return div_err_sign(a, b, q) < 0 ? next_down(q) : q;
}

double div_up(double a, double b) noexcept {
  if (a == 0.0) return 0.0;
  double q = a / b;
  if (!finite3(a, b, q)) return (std::isinf(q) && std::isfinite(a) && std::isfinite(b)) ? next_up(q) : q;
  if (std::fabs(q) < kTiny || std::fabs(a) < kTiny) return next_up(q);
  return div_err_sign(a, b, q) > 0 ? next_up(q) : q;
}

}  // namespace rounding

using namespace rounding;

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (std::isnan(lo) || std::isnan(hi)) {
    lo_ = hi_ = kNaN;
  } else if (lo > hi) {
    throw std::invalid_argument("Interval: lo > hi (" + std::to_string(lo) + ", " + std::to_string(hi) + ")");
  }
}

Interval Interval::empty() noexcept { return make_raw(kNaN, kNaN); }
Interval Interval::entire() noexcept { return make_raw(-kInf, kInf); }
Interval Interval::around(double value) noexcept { return make_raw(next_down(value), next_up(value)); }

double Interval::width() const noexcept { return is_empty() ? 0.0 : sub_up(hi_, lo_); }

double Interval::mid() const noexcept {
  if (lo_ == hi_) return lo_;
  if (std::isinf(lo_) || std::isinf(hi_)) {
    if (std::isinf(lo_) && std::isinf(hi_)) return 0.0;
    return std::isinf(lo_) ? -DBL_MAX : DBL_MAX;
  }
  double m = 0.5 * lo_ + 0.5 * hi_;
  return std::clamp(m, lo_, hi_);
}

double Interval::mag() const noexcept { return std::max(std::fabs(lo_), std::fabs(hi_)); }

double Interval::mig() const noexcept {
  if (contains_zero()) return 0.0;
  return std::min(std::fabs(lo_), std::fabs(hi_));
}

bool Interval::subset_of(const Interval& o) const noexcept {
  if (is_empty()) return true;
  if (o.is_empty()) return false;
  return o.lo_ <= lo_ && hi_ <= o.hi_;
}

bool Interval::interior_subset_of(const Interval& o) const noexcept {
  if (is_empty()) return true;
  if (o.is_empty()) return false;
  return o.lo_ < lo_ && hi_ < o.hi_;
}

bool Interval::overlaps(const Interval& o) const noexcept {
  if (is_empty() || o.is_empty()) return false;
  return lo_ <= o.hi_ && o.lo_ <= hi_;
}

Interval operator+(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty();
  return make_raw(add_down(a.lo(), b.lo()), add_up(a.hi(), b.hi()));
}

Interval operator-(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty();
  return make_raw(sub_down(a.lo(), b.hi()), sub_up(a.hi(), b.lo()));
}

Interval operator-(const Interval& a) {
  if (a.is_empty()) return a;
  return make_raw(-a.hi(), -a.lo());
}

Interval operator*(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty();
  const double al = a.lo(), ah = a.hi(), bl = b.lo(), bh = b.hi();
  if (al >= 0) {
    if (bl >= 0) return make_raw(mul_down(al, bl), mul_up(ah, bh));
    if (bh <= 0) return make_raw(mul_down(ah, bl), mul_up(al, bh));
    return make_raw(mul_down(ah, bl), mul_up(ah, bh));
  }
  if (ah <= 0) {
    if (bl >= 0) return make_raw(mul_down(al, bh), mul_up(ah, bl));
    if (bh <= 0) return make_raw(mul_down(ah, bh), mul_up(al, bl));
    return make_raw(mul_down(al, bh), mul_up(al, bl));
  }
  if (bl >= 0) return make_raw(mul_down(al, bh), mul_up(ah, bh));
  if (bh <= 0) return make_raw(mul_down(ah, bl), mul_up(al, bl));
  double lo = std::min({mul_down(a.lo(), b.lo()), mul_down(a.lo(), b.hi()), mul_down(a.hi(), b.lo()),
                        mul_down(a.hi(), b.hi())});
  double hi = std::max({mul_up(a.lo(), b.lo()), mul_up(a.lo(), b.hi()), mul_up(a.hi(), b.lo()),
                        mul_up(a.hi(), b.hi())});
  return make_raw(lo, hi);
}

Interval operator/(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty();
  if (b.contains_zero()) throw DomainViolation("div", b.lo(), b.hi());
  double lo = std::min({div_down(a.lo(), b.lo()), div_down(a.lo(), b.hi()), div_down(a.hi(), b.lo()),
                        div_down(a.hi(), b.hi())});
  double hi = std::max({div_up(a.lo(), b.lo()), div_up(a.lo(), b.hi()), div_up(a.hi(), b.lo()),
                        div_up(a.hi(), b.hi())});
  return make_raw(lo, hi);
}

Interval& Interval::operator+=(const Interval& rhs) { return *this = *this + rhs; }
Interval& Interval::operator-=(const Interval& rhs) { return *this = *this - rhs; }
Interval& Interval::operator*=(const Interval& rhs) { return *this = *this * rhs; }
Interval& Interval::operator/=(const Interval& rhs) { return *this = *this / rhs; }

Interval hull(const Interval& a, const Interval& b) {
  if (a.is_empty()) return b;
  if (b.is_empty()) return a;
  return make_raw(std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

Interval intersect(const Interval& a, const Interval& b) {
  if (!a.overlaps(b)) return Interval::empty();
  return make_raw(std::max(a.lo(), b.lo()), std::min(a.hi(), b.hi()));
}

namespace {

// x^n for x >= 0, n >= 1, rounded in the requested direction.  All partial
// products are non-negative so directed rounding composes monotonically.
double pow_pos(double x, int n, bool up) {
  double result = 1.0;
  double base = x;
  while (n > 0) {
    if (n & 1) result = up ? mul_up(result, base) : mul_down(result, base);
    n >>= 1;
    if (n > 0) base = up ? mul_up(base, base) : mul_down(base, base);
  }
  return result;
}

Interval widen(double lo, double hi) {
  return make_raw(next_down(lo, Interval::kTranscendentalUlps), next_up(hi, Interval::kTranscendentalUlps));
}

Interval clamp_to(Interval x, double lo, double hi) {
  return make_raw(std::clamp(x.lo(), lo, hi), std::clamp(x.hi(), lo, hi));
}

// Monotone increasing transcendental g with g(0) = 0 exactly.
template <class F>
Interval monotone_odd(const Interval& x, F&& g) {
  double lo = x.lo() == 0.0 ? 0.0 : next_down(g(x.lo()), Interval::kTranscendentalUlps);
  double hi = x.hi() == 0.0 ? 0.0 : next_up(g(x.hi()), Interval::kTranscendentalUlps);
  return make_raw(lo, hi);
}

}  // namespace

Interval sqr(const Interval& x) {
  if (x.is_empty()) return x;
  double mig = x.mig();
  double mag = x.mag();
  return make_raw(mul_down(mig, mig), mul_up(mag, mag));
}

Interval powi(const Interval& x, int n) {
  if (x.is_empty()) return x;
  if (n == 0) return Interval(1.0);
  if (n < 0) {
    if (x.contains_zero()) throw DomainViolation("pow", x.lo(), x.hi());
    return Interval(1.0) / powi(x, -n);
  }
  if (n == 1) return x;
  if (x.lo() >= 0) return make_raw(pow_pos(x.lo(), n, false), pow_pos(x.hi(), n, true));
  if (x.hi() <= 0) {
    Interval p = make_raw(pow_pos(-x.hi(), n, false), pow_pos(-x.lo(), n, true));
    return (n % 2 == 0) ? p : -p;
  }
  if (n % 2 == 0) return make_raw(0.0, pow_pos(x.mag(), n, true));
  return make_raw(-pow_pos(-x.lo(), n, true), pow_pos(x.hi(), n, true));
}

Interval exp(const Interval& x) {
  if (x.is_empty()) return x;
  double lo = x.lo() == 0.0 ? 1.0 : next_down(std::exp(x.lo()), Interval::kTranscendentalUlps);
  double hi = x.hi() == 0.0 ? 1.0 : next_up(std::exp(x.hi()), Interval::kTranscendentalUlps);
  return make_raw(std::max(lo, 0.0), hi);
}

Interval log(const Interval& x) {
  if (x.is_empty()) return x;
  if (x.lo() <= 0.0) throw DomainViolation("log", x.lo(), x.hi());
  double lo = x.lo() == 1.0 ? 0.0 : next_down(std::log(x.lo()), Interval::kTranscendentalUlps);
  double hi = x.hi() == 1.0 ? 0.0 : next_up(std::log(x.hi()), Interval::kTranscendentalUlps);
  return make_raw(lo, hi);
}

Interval sqrt(const Interval& x) {
  if (x.is_empty()) return x;
  if (x.lo() < 0.0) throw DomainViolation("sqrt", x.lo(), x.hi());
  // sqrt is correctly rounded (IEEE 754); recover the direction from the
  // residual x - s*s.
  auto down = [](double v) {
    double s = std::sqrt(v);
    if (s == 0.0 || std::isinf(s)) return s;
    return std::fma(-s, s, v) < 0 ? next_down(s) : s;
  };
  auto up = [](double v) {
    double s = std::sqrt(v);
    if (std::isinf(s)) return s;
    if (s == 0.0) return v == 0.0 ? 0.0 : next_up(s);
    return std::fma(-s, s, v) > 0 ? next_up(s) : s;
  };
  return make_raw(down(x.lo()), up(x.hi()));
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// True when some point c + 2*pi*k (k integer) may lie in [lo, hi]; errs on
// the side of "yes" by a relative slack, which only loosens the enclosure.
bool may_contain_phase(double lo, double hi, double c) {
  double slack = 1e-12 * (1.0 + std::max(std::fabs(lo), std::fabs(hi)));
  double k = std::ceil((lo - slack - c) / kTwoPi);
  return c + k * kTwoPi <= hi + slack;
}

template <class F>
Interval periodic(const Interval& x, F&& g, double max_phase, double min_phase) {
  if (x.is_empty()) return x;
  if (!std::isfinite(x.lo()) || !std::isfinite(x.hi()) || x.width() >= kTwoPi) return Interval(-1.0, 1.0);
  Interval ends = hull(widen(g(x.lo()), g(x.lo())), widen(g(x.hi()), g(x.hi())));
  double lo = ends.lo();
  double hi = ends.hi();
  if (may_contain_phase(x.lo(), x.hi(), max_phase)) hi = 1.0;
  if (may_contain_phase(x.lo(), x.hi(), min_phase)) lo = -1.0;
  return clamp_to(make_raw(lo, hi), -1.0, 1.0);
}

}  // namespace

Interval sin(const Interval& x) {
  if (x.is_point() && x.lo() == 0.0) return Interval(0.0);
  return periodic(x, [](double v) { return std::sin(v); }, std::numbers::pi / 2, -std::numbers::pi / 2);
}

Interval cos(const Interval& x) {
  if (x.is_point() && x.lo() == 0.0) return Interval(1.0);
  return periodic(x, [](double v) { return std::cos(v); }, 0.0, std::numbers::pi);
}

Interval tanh(const Interval& x) {
  if (x.is_empty()) return x;
  return clamp_to(monotone_odd(x, [](double v) { return std::tanh(v); }), -1.0, 1.0);
}

Interval atan(const Interval& x) {
  if (x.is_empty()) return x;
  constexpr double kHalfPiUp = 0x1.921fb54442d19p+0;  // > pi/2
  return clamp_to(monotone_odd(x, [](double v) { return std::atan(v); }), -kHalfPiUp, kHalfPiUp);
}

// glibc documents erf at <= 1 ulp on x86-64 and aarch64; the widening
// below (kTranscendentalUlps per side) plus an absolute 1e-15 margin covers
// that with room to spare.
Interval erf(const Interval& x) {
  if (x.is_empty()) return x;
  constexpr double kAbs = 1e-15;
  double lo = x.lo() == 0.0 ? 0.0 : next_down(std::erf(x.lo()) - kAbs, Interval::kTranscendentalUlps);
  double hi = x.hi() == 0.0 ? 0.0 : next_up(std::erf(x.hi()) + kAbs, Interval::kTranscendentalUlps);
  return clamp_to(make_raw(lo, hi), -1.0, 1.0);
}

double powi(double x, int n) {
  if (n < 0) {
    if (x == 0.0) throw DomainViolation("pow", x, x);
    return 1.0 / powi(x, -n);
  }
  double result = 1.0;
  double base = x;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return result;
}

std::string to_string(const Interval& x) {
  if (x.is_empty()) return "[empty]";
  char buf[96];
  std::snprintf(buf, sizeof buf, "[%.17g, %.17g]", x.lo(), x.hi());
  return buf;
}

}  // namespace coexpand
