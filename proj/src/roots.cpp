#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "coexpand/analysis.hpp"
#include "coexpand/error.hpp"
#include "detail.hpp"

namespace coexpand {

namespace detail {

namespace {

struct Cell {
  Interval x;
  int depth;
};

struct Found {
  Interval root;
  Interval cell;  // inflated cell in which the root is unique
};

Interval inflate(const Interval& x) {
  double pad = x.width() / 64;
  return Interval(x.lo() - pad, x.hi() + pad);
}

// Mean-value enclosure of g over X intersected with the direct one.
Interval value_enclosure(const SlopeFn& g, const Interval& X, const Slope& s) {
  double m = X.mid();
  Interval mv = g(Interval(m)).value + s.derivative * (X - Interval(m));
  Interval both = intersect(s.value, mv);
  return both.is_empty() ? s.value : both;
}

// Interval Newton on X: empty if X has no zero, otherwise the contraction.
// `unique` is set when the Newton image lies inside X.
Interval newton(const SlopeFn& g, const Interval& X, const Interval& dX, bool& unique) {
  double m = X.mid();
  Interval gm = g(Interval(m)).value;
  Interval n = Interval(m) - gm / dX;
  unique = n.subset_of(X);
  return intersect(n, X);
}

}  // namespace

RootSearch isolate_roots(const SlopeFn& g, const Interval& domain, int depth, std::size_t budget) {
  RootSearch out;
  std::vector<Found> found;
  std::vector<Interval> leaves;
  std::vector<Cell> stack{{domain, 0}};
  while (!stack.empty()) {
    Cell c = stack.back();
    stack.pop_back();
    if (++out.cells > budget) {
      out.exhausted = true;
      leaves.push_back(c.x);
      continue;
    }
    Slope s = g(c.x);
    Interval value = value_enclosure(g, c.x, s);
    if (!value.contains_zero()) continue;
    if (!s.derivative.contains_zero()) {
      Interval big = inflate(c.x);
      Interval dbig;
      try {
        dbig = g(big).derivative;
      } catch (const DomainViolation&) {
        big = intersect(big, domain);
        dbig = g(big).derivative;
      }
      if (!dbig.contains_zero()) {
        bool unique = false;
        Interval y = newton(g, big, dbig, unique);
        if (y.is_empty()) continue;
        if (unique) {
          for (int it = 0; it < 60; ++it) {
            bool u2 = false;
            Interval next = newton(g, y, g(y).derivative, u2);
            if (next.is_empty() || next == y) break;
            y = next;
          }
          if (y.overlaps(c.x) && y.overlaps(domain)) found.push_back({y, big});
          continue;
        }
      }
    }
    // A flat stretch of g: more bisection cannot separate roots there.
    bool flat = value.mag() <= 1e-13 * (1.0 + c.x.mag()) && s.derivative.contains_zero();
    if (flat || c.depth >= depth || c.x.width() <= 4 * std::numeric_limits<double>::epsilon() * c.x.mag()) {
      leaves.push_back(c.x);
      continue;
    }
    double m = c.x.mid();
    if (m <= c.x.lo() || m >= c.x.hi()) {
      leaves.push_back(c.x);
      continue;
    }
    stack.push_back({Interval(m, c.x.hi()), c.depth + 1});
    stack.push_back({Interval(c.x.lo(), m), c.depth + 1});
  }

  std::sort(found.begin(), found.end(), [](const Found& a, const Found& b) { return a.root.lo() < b.root.lo(); });
  std::vector<Found> merged;
  for (const Found& f : found) {
    if (!merged.empty() && merged.back().root.overlaps(f.root)) {
      Found& last = merged.back();
      if (f.root.subset_of(last.cell) || last.root.subset_of(f.cell)) {
        Interval both = intersect(last.root, f.root);
        last.root = both;
        continue;
      }
      out.unresolved.push_back(hull(last.root, f.root));
      merged.pop_back();
      continue;
    }
    merged.push_back(f);
  }
  for (const Found& f : merged) out.isolated.push_back(f.root);

  std::sort(leaves.begin(), leaves.end(), [](const Interval& a, const Interval& b) { return a.lo() < b.lo(); });
  for (const Interval& l : leaves) {
    if (!out.unresolved.empty() && out.unresolved.back().hi() >= l.lo()) {
      out.unresolved.back() = hull(out.unresolved.back(), l);
    } else {
      out.unresolved.push_back(l);
    }
  }
  std::sort(out.unresolved.begin(), out.unresolved.end(),
            [](const Interval& a, const Interval& b) { return a.lo() < b.lo(); });
  return out;
}

}  // namespace detail

std::string_view stability_name(Stability s) noexcept {
  switch (s) {
    case Stability::Attracting: return "attracting";
    case Stability::Repelling: return "repelling";
    case Stability::Neutral: return "neutral";
    case Stability::Unresolved: return "unresolved";
  }
  return "unresolved";
}

CritReport critical_points(const FunctionExpr& f, const Interval& domain, int depth) {
  auto g = [&](const Interval& x) {
    Jet3<Interval> j = jet_eval(f, x);
    return detail::Slope{j.d1, j.d2};
  };
  detail::RootSearch rs = detail::isolate_roots(g, domain, depth);
  CritReport out;
  out.isolating = rs.isolated;
  if (!rs.unresolved.empty()) {
    out.status = CritReport::Status::Incomplete;
    out.reason = "f' could not be separated from 0 on " + to_string(rs.unresolved.front());
    if (rs.unresolved.size() > 1) out.reason += " and " + std::to_string(rs.unresolved.size() - 1) + " more";
  }
  std::vector<Interval> cuts = rs.isolated;
  cuts.insert(cuts.end(), rs.unresolved.begin(), rs.unresolved.end());
  std::sort(cuts.begin(), cuts.end(), [](const Interval& a, const Interval& b) { return a.lo() < b.lo(); });
  double start = domain.lo();
  for (const Interval& c : cuts) {
    if (c.lo() > start) out.components.emplace_back(start, c.lo());
    start = std::max(start, c.hi());
  }
  if (domain.hi() > start) out.components.emplace_back(start, domain.hi());
  return out;
}

namespace {

// A double p in r at which g = f - x vanishes exactly to second order, with
// the next derivative of g keeping one sign on r.  If g''(r) excludes 0, g is
// strictly convex or concave.  If instead g''(p) = 0 and g'''(r) excludes 0,
// g' has a strict extremum 0 at p and g is strictly monotone.  Either way p
// is the only zero of g in r.
std::optional<double> tangential_root(const FunctionExpr& f, const Interval& r) {
  std::vector<double> candidates;
  if (r.contains(0.0)) candidates.push_back(0.0);
  double m = r.mid();
  candidates.push_back(m);
  for (int k = 0; k <= 40; k += 4) candidates.push_back(std::ldexp(std::round(std::ldexp(m, k)), -k));
  const Interval zero(0.0);
  try {
    Jet3<Interval> jr = jet_eval(f, r);
    bool convex = !jr.d2.contains_zero();
    bool inflected = !jr.d3.contains_zero();
    if (!convex && !inflected) return std::nullopt;
    for (double p : candidates) {
      if (!r.contains(p)) continue;
      Jet3<Interval> j = jet_eval(f, Interval(p));
      if (!(j.v - Interval(p) == zero && j.d1 - Interval(1.0) == zero)) continue;
      if (convex || j.d2 == zero) return p;
    }
  } catch (const DomainViolation&) {
  }
  return std::nullopt;
}

}  // namespace

std::vector<FixedPoint> fixed_points(const FunctionExpr& f, const Interval& domain, const FixedPointOptions& options) {
  auto g = [&](const Interval& x) {
    Jet3<Interval> j = jet_eval(f, x);
    return detail::Slope{j.v - x, j.d1 - Interval(1.0)};
  };
  detail::RootSearch rs = detail::isolate_roots(g, domain, options.depth);
  auto classify = [&](const Interval& m, bool certified) {
    if (!certified) return Stability::Unresolved;
    if (m.lo() > -1 && m.hi() < 1) return Stability::Attracting;
    if (m.mig() > 1) return Stability::Repelling;
    if ((m.contains(1.0) || m.contains(-1.0)) && m.width() <= options.neutral_tolerance) return Stability::Neutral;
    return Stability::Unresolved;
  };
  std::vector<FixedPoint> out;
  for (const Interval& r : rs.isolated) {
    Interval m = jet_eval(f, r).d1;
    out.push_back({r, m, classify(m, true), true});
  }
  for (const Interval& r : rs.unresolved) {
    if (auto p = tangential_root(f, r)) {
      Interval m = jet_eval(f, Interval(*p)).d1;
      out.push_back({r, m, classify(m, true), true});
      continue;
    }
    Interval m = jet_eval(f, r).d1;
    out.push_back({r, m, Stability::Unresolved, false});
  }
  std::sort(out.begin(), out.end(),
            [](const FixedPoint& a, const FixedPoint& b) { return a.isolating.lo() < b.isolating.lo(); });
  return out;
}

namespace detail {

namespace {

void collect_glue_sites(const FunctionExpr& f, const FunctionExpr& context, std::vector<GlueSite>& out) {
  const auto& data = f.node().data;
  if (const auto* b = std::get_if<Binary>(&data)) {
    collect_glue_sites(b->lhs, context, out);
    collect_glue_sites(b->rhs, context, out);
  } else if (const auto* p = std::get_if<PowInt>(&data)) {
    collect_glue_sites(p->base, context, out);
  } else if (const auto* n = std::get_if<Neg>(&data)) {
    collect_glue_sites(n->operand, context, out);
  } else if (const auto* a = std::get_if<Apply>(&data)) {
    collect_glue_sites(a->arg, context, out);
  } else if (const auto* g = std::get_if<Glue>(&data)) {
    collect_glue_sites(g->arg, context, out);
    FunctionExpr arg = compose(g->arg, context);
    out.push_back({g->left, g->right, arg});
    collect_glue_sites(g->left, arg, out);
    collect_glue_sites(g->right, arg, out);
  }
}

}  // namespace

std::vector<GlueSite> glue_sites(const FunctionExpr& f) {
  std::vector<GlueSite> out;
  collect_glue_sites(f, FunctionExpr::variable(), out);
  return out;
}

}  // namespace detail

std::vector<Seam> find_seams(const FunctionExpr& f, const Interval& domain, int depth) {
  std::vector<Seam> out;
  for (const detail::GlueSite& site : detail::glue_sites(f)) {
    const FunctionExpr& a = site.arg;
    std::vector<double> candidates;
    if (auto affine = affine_form(a); affine && affine->slope != 0.0) {
      candidates.push_back(-affine->intercept / affine->slope);
    } else {
      auto g = [&](const Interval& x) {
        Jet3<Interval> j = jet_eval(a, x);
        return detail::Slope{j.v, j.d1};
      };
      detail::RootSearch rs = detail::isolate_roots(g, domain, depth);
      for (const Interval& r : rs.isolated) candidates.push_back(r.mid());
    }
    for (double s : candidates) {
      if (!(s > domain.lo() && s < domain.hi())) continue;
      bool exact = false;
      try {
        exact = interval_eval(a, Interval(s)) == Interval(0.0);
      } catch (const DomainViolation&) {
      }
      out.push_back({s + 0.0, exact});
    }
  }
  std::sort(out.begin(), out.end(), [](const Seam& a, const Seam& b) { return a.x < b.x; });
  std::vector<Seam> unique;
  for (const Seam& s : out) {
    if (!unique.empty() && unique.back().x == s.x) {
      unique.back().exact = unique.back().exact && s.exact;
    } else {
      unique.push_back(s);
    }
  }
  return unique;
}

FunctionExpr select_branch(const FunctionExpr& f, double x) {
  const auto& data = f.node().data;
  if (const auto* b = std::get_if<Binary>(&data)) {
    return detail::make_binary(b->op, select_branch(b->lhs, x), select_branch(b->rhs, x));
  }
  if (const auto* p = std::get_if<PowInt>(&data)) return FunctionExpr::pow(select_branch(p->base, x), p->exponent);
  if (const auto* n = std::get_if<Neg>(&data)) return detail::make_neg(select_branch(n->operand, x));
  if (const auto* a = std::get_if<Apply>(&data)) return FunctionExpr::apply(a->fn, select_branch(a->arg, x));
  if (const auto* g = std::get_if<Glue>(&data)) {
    double t = eval(g->arg, x);
    FunctionExpr chosen = select_branch(t <= 0 ? g->left : g->right, t);
    return compose(chosen, select_branch(g->arg, x));
  }
  return f;
}

FunctionExpr iterate(const FunctionExpr& f, int n) {
  if (n < 1) throw std::invalid_argument("iterate: n must be at least 1");
  FunctionExpr out = f;
  for (int i = 1; i < n; ++i) out = compose(f, out);
  return out;
}

}  // namespace coexpand
