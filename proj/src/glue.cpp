#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

#include "coexpand/analysis.hpp"
#include "coexpand/error.hpp"
#include "detail.hpp"

namespace coexpand {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

using Status = GlueableResult::Status;

// Upper bound of g(x) = s * f(x) + c * x over X, from the direct form and
// mean-value forms centred at both ends.
double upper(const FunctionExpr& f, const Interval& X, double s, double c) {
  Jet3<Interval> j = jet_eval(f, X);
  Interval S(s), C(c);
  Interval dg = S * j.d1 + C;
  double best = (S * j.v + C * X).hi();
  for (double e : {X.lo(), X.hi()}) {
    Interval ge = S * interval_eval(f, Interval(e)) + C * Interval(e);
    best = std::min(best, (ge + dg * (X - Interval(e))).hi());
  }
  return best;
}

// Checks -|x| <= f(x) <= |x| on one side of 0.  `sign` is +1 for [0, b] and
// -1 for [a, 0].
GlueableResult check_side(const FunctionExpr& f, const Interval& side, int sign, const CertifyParams& params) {
  GlueableResult out;
  double leaf = side.width() * std::ldexp(1.0, -std::max(params.max_depth, 30));
  std::vector<Interval> stack{side};
  std::size_t cells = 0;
  bool unknown = false;
  while (!stack.empty()) {
    Interval X = stack.back();
    stack.pop_back();
    if (++cells > params.budget) {
      out.status = Status::Unknown;
      out.reason = "cell budget exhausted";
      return out;
    }
    bool ok = false;
    try {
      // sign * f - sign * x <= 0 and -sign * f - sign * x <= 0
      ok = upper(f, X, sign, -sign) <= 0.0 && upper(f, X, -sign, -sign) <= 0.0;
    } catch (const DomainViolation&) {
    }
    if (ok) continue;
    double m = X.mid();
    Interval fm = interval_eval(f, Interval(m));
    if (fm.lo() > std::fabs(m) || fm.hi() < -std::fabs(m)) {
      char buf[48];
      std::snprintf(buf, sizeof buf, "%.17g", m);
      out.status = Status::NotGlueable;
      out.witness = m;
      out.reason = std::string("|f(x)| > |x| at x = ") + buf;
      return out;
    }
    if (X.width() <= leaf) {
      unknown = true;
      continue;
    }
    stack.emplace_back(m, X.hi());
    stack.emplace_back(X.lo(), m);
  }
  out.status = unknown ? Status::Unknown : Status::Glueable;
  if (unknown) out.reason = "could not separate |f(x)| from |x| everywhere";
  return out;
}

}  // namespace

GlueableResult glueable_check(const FunctionExpr& f, const Interval& domain, const CertifyParams& params) {
  if (!domain.contains_zero()) throw PreconditionUnmet("glueable_check: domain must contain 0");
  GlueableResult out;
  out.component = domain;
  Jet3<Interval> j0;
  try {
    j0 = jet_eval(f, Interval(0.0));
  } catch (const DomainViolation&) {
    out.status = Status::NotGlueable;
    out.reason = "f is undefined at 0";
    return out;
  }
  if (intersect(j0.v, Interval(-4 * kEps, 4 * kEps)).is_empty()) {
    out.status = Status::NotGlueable;
    out.witness = 0.0;
    out.reason = "f(0) = " + to_string(j0.v) + " is not 0";
    return out;
  }
  if (intersect(j0.d1, Interval(1 - 4 * kEps, 1 + 4 * kEps)).is_empty()) {
    out.status = Status::NotGlueable;
    out.reason = "f'(0) = " + to_string(j0.d1) + " is not 1";
    return out;
  }

  CritReport crit = critical_points(f, domain, params.root_depth);
  double a = domain.lo(), b = domain.hi();
  bool bounded_by_unresolved = false;
  for (const Interval& c : crit.isolating) {
    if (c.hi() < 0) a = std::max(a, c.lo());
    if (c.lo() > 0) b = std::min(b, c.hi());
  }
  if (crit.status == CritReport::Status::Incomplete) {
    for (const Interval& comp : crit.components) {
      if (!comp.contains_zero()) continue;
      if (comp.lo() > a) a = comp.lo(), bounded_by_unresolved = true;
      if (comp.hi() < b) b = comp.hi(), bounded_by_unresolved = true;
    }
  }
  out.component = Interval(a, b);

  for (int sign : {1, -1}) {
    Interval side = sign > 0 ? Interval(0.0, b) : Interval(a, 0.0);
    if (side.width() == 0) continue;
    GlueableResult r;
    try {
      r = check_side(f, side, sign, params);
    } catch (const DomainViolation& e) {
      r.status = Status::Unknown;
      r.reason = e.what();
    }
    if (r.status != Status::Glueable) {
      r.component = out.component;
      return r;
    }
  }
  out.status = bounded_by_unresolved ? Status::Unknown : Status::Glueable;
  if (bounded_by_unresolved) out.reason = "critical points next to 0 could not be isolated";
  return out;
}

FunctionExpr glue(const FunctionExpr& f, const FunctionExpr& g, const GlueParams& params) {
  GlueableResult left = glueable_check(f, Interval(-params.window, 0.0), params.certify);
  if (left.status != Status::Glueable) throw NotGlueable(GlueSide::Left, left.reason);
  GlueableResult right = glueable_check(g, Interval(0.0, params.window), params.certify);
  if (right.status != Status::Glueable) throw NotGlueable(GlueSide::Right, right.reason);
  return detail::make_glue_unchecked(f, g);
}

namespace detail {

bool glue_hypotheses_hold(const FunctionExpr& f, const Interval& domain, const CertifyParams& params) {
  for (const GlueSite& site : glue_sites(f)) {
    Interval range;
    try {
      range = interval_eval(site.arg, domain);
    } catch (const DomainViolation&) {
      return false;
    }
    if (!std::isfinite(range.lo()) || !std::isfinite(range.hi())) return false;
    if (range.lo() < 0 && glueable_check(site.left, Interval(range.lo(), 0.0), params).status != Status::Glueable) {
      return false;
    }
    if (range.hi() > 0 && glueable_check(site.right, Interval(0.0, range.hi()), params).status != Status::Glueable) {
      return false;
    }
  }
  return true;
}

}  // namespace detail

}  // namespace coexpand
