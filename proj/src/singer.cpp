#include <algorithm>
#include <cmath>
#include <vector>

#include "coexpand/analysis.hpp"
#include "coexpand/error.hpp"
#include "detail.hpp"

namespace coexpand {

namespace {

constexpr int kMarchSteps = 4096;
constexpr int kBisections = 60;

class Orbits {
 public:
  Orbits(const FunctionExpr& f, const SingerOptions& options) : f_(f), options_(options) {}

  // f^n(x) in double; NaN once the orbit leaves the domain of f.
  double apply(double x, int n) const {
    for (int i = 0; i < n && std::isfinite(x); ++i) {
      try {
        x = eval(f_, x);
      } catch (const DomainViolation&) {
        return std::nan("");
      }
    }
    return x;
  }

  bool converges(double x, double p, int period) const {
    for (int k = 0; k < options_.iters; ++k) {
      if (std::fabs(x - p) < options_.tol) return true;
      x = apply(x, period);
      if (!std::isfinite(x)) return false;
    }
    return std::fabs(x - p) < options_.tol;
  }

  // Walks from p towards `end` until convergence fails, then bisects the
  // last step.  Returns the edge and whether `end` was reached.
  std::pair<double, bool> basin_edge(double p, double end, int period) const {
    double step = (end - p) / kMarchSteps;
    if (step == 0) return {end, true};
    double inside = p;
    for (int k = 1; k <= kMarchSteps; ++k) {
      double x = k == kMarchSteps ? end : p + k * step;
      if (converges(x, p, period)) {
        inside = x;
        continue;
      }
      double outside = x;
      for (int b = 0; b < kBisections; ++b) {
        double m = 0.5 * (inside + outside);
        if (m == inside || m == outside) break;
        (converges(m, p, period) ? inside : outside) = m;
      }
      return {inside, false};
    }
    return {end, true};
  }

 private:
  const FunctionExpr& f_;
  const SingerOptions& options_;
};

}  // namespace

SingerReport singer_check(const FunctionExpr& f, const Interval& domain, const SingerOptions& options) {
  SingerReport report;
  CritReport crit = critical_points(f, domain, options.certify_params.root_depth);
  report.critical = crit.isolating;
  Orbits orbits(f, options);

  std::size_t cells = 0;
  for (int n = 1; n <= options.max_period; ++n) {
    FunctionExpr g = iterate(f, n);
    auto slope = [&](const Interval& x) {
      Jet3<Interval> j = jet_eval(g, x);
      return detail::Slope{j.v - x, j.d1 - Interval(1.0)};
    };
    if (cells >= options.budget) throw BudgetExceeded("singer_check: period search exceeded its budget");
    detail::RootSearch rs = detail::isolate_roots(slope, domain, options.certify_params.root_depth, options.budget - cells);
    cells += rs.cells;
    if (rs.exhausted) throw BudgetExceeded("singer_check: period search exceeded its budget at period " + std::to_string(n));

    for (const Interval& r : rs.isolated) {
      Interval m = jet_eval(g, r).d1;
      if (!(m.mag() < 1.0)) continue;
      double p = r.mid();
      bool lower_period = false;
      for (int k = 1; k < n; ++k) {
        if (n % k == 0 && std::fabs(orbits.apply(p, k) - p) < 1e-9 * (1.0 + std::fabs(p))) lower_period = true;
      }
      if (lower_period) continue;
      std::vector<double> orbit{p};
      for (int k = 1; k < n; ++k) orbit.push_back(orbits.apply(p, k));
      bool seen = false;
      for (const AttractingOrbit& o : report.orbits) {
        for (double q : o.orbit) {
          if (o.period == n && std::fabs(q - p) < 1e-9 * (1.0 + std::fabs(p))) seen = true;
        }
      }
      if (seen) continue;

      AttractingOrbit a;
      a.period = n;
      a.orbit = orbit;
      a.multiplier = m;
      auto [hi, reaches_hi] = orbits.basin_edge(p, domain.hi(), n);
      auto [lo, reaches_lo] = orbits.basin_edge(p, domain.lo(), n);
      a.basin_lo = lo;
      a.basin_hi = hi;
      a.reaches_lo = reaches_lo;
      a.reaches_hi = reaches_hi;
      for (const Interval& c : crit.isolating) {
        double x = c.mid();
        for (int k = 0; k < options.iters && std::isfinite(x); ++k) {
          x = orbits.apply(x, 1);
          bool close = std::any_of(orbit.begin(), orbit.end(), [&](double q) { return std::fabs(x - q) < options.tol; });
          if (close) {
            a.attracted_critical_points.push_back(c.mid());
            break;
          }
        }
      }
      a.dichotomy_holds = a.reaches_lo || a.reaches_hi || !a.attracted_critical_points.empty();
      report.orbits.push_back(a);
    }
  }

  if (options.certify) {
    try {
      report.membership = certify_membership(f, domain, options.certify_params).verdict;
    } catch (const PreconditionUnmet&) {
    }
  }
  bool violated = std::any_of(report.orbits.begin(), report.orbits.end(),
                              [](const AttractingOrbit& o) { return !o.dichotomy_holds; });
  report.theorem_alarm = violated && report.membership == Verdict::Certified;
  return report;
}

}  // namespace coexpand
