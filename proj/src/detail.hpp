#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "coexpand/analysis.hpp"

namespace coexpand::detail {

inline Interval nonnegative(const Interval& a) { return Interval(std::max(a.lo(), 0.0), std::max(a.hi(), 0.0)); }

// Bounds on χ_f over a box with X strictly right of Y.  Each returns
// Interval::entire() when the form is undefined on the box.
/// With `settle`, stops refining once the bound is known to be at most 1.
Interval chi_direct(const FunctionExpr& f, const Interval& X, const Interval& Y, bool settle = false);

// N with sign(χ − 1) = sign(N), from third-order expansions of f around
// the box centre.  Needs f smooth on hull(X, Y).
Interval taylor_numerator(const FunctionExpr& f, const Interval& X, const Interval& Y);

// Same idea with one-sided expansions at an exact seam s, Y ≤ s ≤ X.
Interval seam_numerator(const FunctionExpr& f, const Interval& X, const Interval& Y, double s);

// χ over the box from the smooth Taylor form: 1 + h² N / D².
Interval chi_taylor(const FunctionExpr& f, const Interval& X, const Interval& Y);

// Enclosure of d/dx log χ (wrt_x) or d/dy log χ over the box.
Interval log_chi_partial(const FunctionExpr& f, const Interval& X, const Interval& Y, bool wrt_x);

// Rigorous lower bound on χ_f(x, y) for x > y, or -inf.
double chi_lower(const FunctionExpr& f, double x, double y);

// Value and derivative enclosure of a scalar function over an interval.
struct Slope {
  Interval value;
  Interval derivative;
};
using SlopeFn = std::function<Slope(const Interval&)>;

struct RootSearch {
  std::vector<Interval> isolated;    // exactly one simple zero each
  std::vector<Interval> unresolved;  // merged clusters of undecided leaves
  std::size_t cells = 0;
  bool exhausted = false;            // cell budget ran out
};

// Bisection with an interval Newton test on slightly inflated cells.
RootSearch isolate_roots(const SlopeFn& g, const Interval& domain, int depth, std::size_t budget = 4'000'000);

// A glue node seen from the top level: its children and its argument as a
// function of the top-level variable.
struct GlueSite {
  FunctionExpr left;
  FunctionExpr right;
  FunctionExpr arg;
};
std::vector<GlueSite> glue_sites(const FunctionExpr& f);

// True when every glue site's children pass glueable_check over the range
// their argument takes on the domain.
bool glue_hypotheses_hold(const FunctionExpr& f, const Interval& domain, const CertifyParams& params);

// How far past a point s of a component the cross-pair bound has been
// verified: every pair y < s < x with left <= y and x <= right has χ ≤ 1.
// The bound normalises f on each side of s to G(t) with G(0) = 0,
// G'(0) = 1 and needs 0 < G(t)/t <= 1 and G'(t) <= (G(t)/t)^2.
struct SeamReach {
  double left;
  double right;
};
SeamReach seam_reach(const FunctionExpr& f, double s, const Interval& component, const std::vector<double>& seams,
                     std::size_t budget);

}  // namespace coexpand::detail
