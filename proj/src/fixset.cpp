#include <algorithm>
#include <cmath>
#include <vector>

#include "coexpand/analysis.hpp"
#include "coexpand/error.hpp"
#include "detail.hpp"

namespace coexpand {

std::string_view fix_kind_name(FixSetClass::Kind k) noexcept {
  switch (k) {
    case FixSetClass::Kind::FiniteSet: return "FiniteSet";
    case FixSetClass::Kind::IntervalFix: return "IntervalFix";
    case FixSetClass::Kind::Unresolved: return "Unresolved";
  }
  return "Unresolved";
}

namespace {

constexpr double kNumericTolerance = 1e-9;
constexpr double kNumericMinWidth = 1e-6;

// |f(x) - x| <= tol over X, by subdivision.
bool numerically_identity(const FunctionExpr& f, const Interval& X, double tol) {
  std::vector<Interval> stack{X};
  int cells = 0;
  while (!stack.empty()) {
    Interval c = stack.back();
    stack.pop_back();
    if (++cells > 4096) return false;
    Interval g;
    try {
      Jet3<Interval> j = jet_eval(f, c);
      double m = c.mid();
      Interval mv = interval_eval(f, Interval(m)) - Interval(m) + (j.d1 - Interval(1.0)) * (c - Interval(m));
      g = intersect(j.v - c, mv);
      if (g.is_empty()) g = mv;
    } catch (const DomainViolation&) {
      return false;
    }
    if (g.mag() <= tol) continue;
    if (c.width() < X.width() * 1e-6) return false;
    double m = c.mid();
    stack.emplace_back(m, c.hi());
    stack.emplace_back(c.lo(), m);
  }
  return true;
}

}  // namespace

FixSetClass classify_fixed_set(const FunctionExpr& f, const Interval& domain, const CertifyParams& params) {
  CritReport crit = critical_points(f, domain, params.root_depth);
  if (!crit.isolating.empty()) {
    throw PreconditionUnmet("classify_fixed_set: f has " + std::to_string(crit.isolating.size()) +
                            " critical point(s) in " + to_string(domain));
  }
  if (crit.status == CritReport::Status::Incomplete) throw PreconditionUnmet("classify_fixed_set: " + crit.reason);

  FixSetClass out;
  std::vector<double> cuts{domain.lo()};
  for (const Seam& s : find_seams(f, domain, params.root_depth)) cuts.push_back(s.x);
  cuts.push_back(domain.hi());

  std::vector<Interval> identity;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    Interval piece(cuts[k], cuts[k + 1]);
    if (!is_identity(select_branch(f, piece.mid()))) continue;
    if (!identity.empty() && identity.back().hi() == piece.lo()) {
      identity.back() = hull(identity.back(), piece);
    } else {
      identity.push_back(piece);
    }
  }

  std::vector<FixedPoint> points = fixed_points(f, domain, {params.root_depth});

  if (!identity.empty()) {
    Interval fixed = identity.front();
    for (const Interval& i : identity) fixed = hull(fixed, i);
    out.kind = FixSetClass::Kind::IntervalFix;
    out.evidence = FixSetClass::Evidence::IdentityOnInterval;
    out.interval = fixed;
    out.reaches_domain_lo = fixed.lo() == domain.lo();
    out.reaches_domain_hi = fixed.hi() == domain.hi();
    if (identity.size() > 1) {
      out.theorem_alarm = true;
      out.note = "f is the identity on several disjoint pieces";
    }
    double slack = 1e-9 * (1.0 + fixed.mag());
    Interval near(fixed.lo() - slack, fixed.hi() + slack);
    for (const FixedPoint& p : points) {
      if (p.isolating.overlaps(near)) continue;
      if (p.certified) {
        out.theorem_alarm = true;
        out.note = "isolated fixed point at " + to_string(p.isolating) + " outside the fixed interval";
      } else if (out.note.empty()) {
        out.note = "unresolved fixed-point cluster at " + to_string(p.isolating);
      }
    }
    return out;
  }

  bool all_certified = std::all_of(points.begin(), points.end(), [](const FixedPoint& p) { return p.certified; });
  if (all_certified) {
    out.kind = FixSetClass::Kind::FiniteSet;
    out.points = points;
    if (points.size() > 3) {
      out.theorem_alarm = true;
      out.note = std::to_string(points.size()) + " isolated fixed points";
    }
    return out;
  }

  for (const FixedPoint& p : points) {
    if (p.certified || p.isolating.width() < kNumericMinWidth) continue;
    if (numerically_identity(f, p.isolating, kNumericTolerance)) {
      out.kind = FixSetClass::Kind::IntervalFix;
      out.evidence = FixSetClass::Evidence::NumericOnly;
      out.interval = p.isolating;
      out.reaches_domain_lo = p.isolating.lo() == domain.lo();
      out.reaches_domain_hi = p.isolating.hi() == domain.hi();
      out.note = "|f(x) - x| <= 1e-9 on the interval; not a proof";
      return out;
    }
  }
  out.kind = FixSetClass::Kind::Unresolved;
  out.points = points;
  out.note = "some fixed points could not be isolated";
  return out;
}

}  // namespace coexpand
