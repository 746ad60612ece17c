#pragma once

#include <cmath>
#include <limits>
#include <string>

namespace coexpand {

/// Closed real interval [lo, hi] with outward-rounded arithmetic.
///
/// Field operations (+, -, *, /, sqrt) are rounded exactly one ulp outward
/// only when the floating-point result is inexact; the rounding error is
/// recovered with two-sum / fma residuals.  Transcendental primitives are
/// widened by kTranscendentalUlps per side on top of the libm result, except
/// at the handful of arguments where the value is known exactly
/// (exp(0) = 1, log(1) = 0, tanh(0) = sin(0) = atan(0) = erf(0) = 0).
///
/// The empty interval is represented by NaN endpoints.
class Interval {
 public:
  static constexpr int kTranscendentalUlps = 3;

  constexpr Interval() noexcept : lo_(0.0), hi_(0.0) {}
  constexpr Interval(double point) noexcept : lo_(point), hi_(point) {}  // NOLINT
  Interval(double lo, double hi);

  static Interval empty() noexcept;
  static Interval entire() noexcept;
  /// Smallest interval enclosing a decimal constant known only to within
  /// one ulp, e.g. a libm-provided mathematical constant.
  static Interval around(double value) noexcept;

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

  bool is_empty() const noexcept { return std::isnan(lo_); }
  bool is_point() const noexcept { return lo_ == hi_; }
  double width() const noexcept;
  /// Midpoint, rounded to nearest; always inside the interval.
  double mid() const noexcept;
  double mag() const noexcept;  // max |x|
  double mig() const noexcept;  // min |x|

  bool contains(double x) const noexcept { return lo_ <= x && x <= hi_; }
  bool contains_zero() const noexcept { return contains(0.0); }
  bool subset_of(const Interval& other) const noexcept;
  bool interior_subset_of(const Interval& other) const noexcept;
  bool overlaps(const Interval& other) const noexcept;

  Interval& operator+=(const Interval& rhs);
  Interval& operator-=(const Interval& rhs);
  Interval& operator*=(const Interval& rhs);
  Interval& operator/=(const Interval& rhs);

  friend bool operator==(const Interval& a, const Interval& b) noexcept {
    return (a.is_empty() && b.is_empty()) || (a.lo_ == b.lo_ && a.hi_ == b.hi_);
  }

 private:
  struct Raw {};
  constexpr Interval(double lo, double hi, Raw) noexcept : lo_(lo), hi_(hi) {}
  friend Interval make_raw(double lo, double hi) noexcept;

  double lo_;
  double hi_;
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);
Interval operator*(const Interval& a, const Interval& b);
/// Throws DomainViolation("div", ...) when the divisor contains zero.
Interval operator/(const Interval& a, const Interval& b);

Interval hull(const Interval& a, const Interval& b);
Interval intersect(const Interval& a, const Interval& b);

Interval sqr(const Interval& x);
Interval powi(const Interval& x, int n);
Interval exp(const Interval& x);
Interval log(const Interval& x);
Interval sqrt(const Interval& x);
Interval sin(const Interval& x);
Interval cos(const Interval& x);
Interval tanh(const Interval& x);
Interval atan(const Interval& x);
Interval erf(const Interval& x);

std::string to_string(const Interval& x);

/// Directed-rounding primitives on doubles; exposed for the analysis layer.
namespace rounding {
double add_down(double a, double b) noexcept;
double add_up(double a, double b) noexcept;
double sub_down(double a, double b) noexcept;
double sub_up(double a, double b) noexcept;
double mul_down(double a, double b) noexcept;
double mul_up(double a, double b) noexcept;
double div_down(double a, double b) noexcept;
double div_up(double a, double b) noexcept;
double next_down(double x, int ulps = 1) noexcept;
double next_up(double x, int ulps = 1) noexcept;
}  // namespace rounding

// Plain-double counterparts so generic code can call sqr/powi on either
// scalar type.
inline double sqr(double x) noexcept { return x * x; }
double powi(double x, int n);

}  // namespace coexpand
