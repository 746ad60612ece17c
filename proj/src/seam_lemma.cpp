#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "coexpand/analysis.hpp"
#include "coexpand/error.hpp"
#include "detail.hpp"

namespace coexpand::detail {

namespace {

constexpr int kLeafBits = 36;

// One side of s, parameterised by t = sign (x - s) >= 0 and normalised as
// G(t) = sign (f(s + sign t) - f(s)) / f'(s).  q(t) = G(t) / t.
class Side {
 public:
  Side(const FunctionExpr& f, double s, int sign) : f_(f), s_(s), sign_(sign) {
    opt_.seam_side = sign > 0 ? GlueSide::Right : GlueSide::Left;
    Jet3<Interval> jl = jet_eval(f, Interval(s), {GlueSide::Left});
    Jet3<Interval> jr = jet_eval(f, Interval(s), {GlueSide::Right});
    hp_ = intersect(jl.d1, jr.d1);
    Jet3<Interval> js = sign > 0 ? jr : jl;
    hs_ = js.v;
    ok_ = !hp_.is_empty() && !hp_.contains_zero();
    if (ok_) b0_ = Interval(sign) * js.d2 / hp_;
  }

  bool usable() const { return ok_; }

  // Both conditions over the x-cell X on this side.
  bool cell(const Interval& X) const {
    try {
      return check(X);
    } catch (const DomainViolation&) {
      return false;
    }
  }

 private:
  Interval t_of(const Interval& X) const {
    Interval S(s_);
    return nonnegative(sign_ > 0 ? X - S : S - X);
  }

  Interval g_of(const Interval& fx) const { return Interval(sign_) * (fx - hs_) / hp_; }

  bool check(const Interval& X) const {
    SeamInfo cell_seams, hull_seams;
    Jet3<Interval> jx = jet_eval(f_, X, opt_, &cell_seams);
    Interval T = t_of(X);
    Interval d1 = jx.d1 / hp_;
    if (!(d1.lo() > 0.0)) return false;
    Interval d2 = Interval(sign_) * jx.d2 / hp_;
    Interval d3 = jx.d3 / hp_;

    Interval H = sign_ > 0 ? Interval(s_, X.hi()) : Interval(X.lo(), s_);
    Jet3<Interval> jh = jet_eval(f_, H, opt_, &hull_seams);
    bool taylor = !hull_seams.straddled;
    Interval h3 = jh.d3 / hp_;

    Interval q = jh.d1 / hp_;
    if (T.lo() > 0.0) {
      Interval direct = g_of(jx.v) / T;
      if (!intersect(q, direct).is_empty()) q = intersect(q, direct);
    }
    Interval slope0 = b0_ * Interval(0.5) + h3 * T / Interval(6.0);  // (q - 1) / t
    if (taylor) {
      Interval qt = Interval(1.0) + T * slope0;
      if (!intersect(q, qt).is_empty()) q = intersect(q, qt);
    }
    if (!(q.lo() > 0.0)) return false;

    double xn = sign_ > 0 ? X.lo() : X.hi();
    Interval tn = t_of(Interval(xn));
    bool at_seam = xn == s_;

    // q <= 1, i.e. E(t) = t - G(t) >= 0.
    bool bounded = q.hi() <= 1.0 || (taylor && slope0.hi() <= 0.0);
    if (!bounded) {
      Interval en = at_seam ? Interval(0.0) : tn - g_of(interval_eval(f_, Interval(xn), opt_));
      Interval W = nonnegative(T - tn);
      bounded = (en + (Interval(1.0) - d1) * W).lo() >= 0.0;
    }
    if (!bounded) return false;

    // D(t) = G'(t) - q(t)^2 <= 0.
    if ((d1 - sqr(q)).hi() <= 0.0) return true;
    if (taylor) {
      // D = t^2 (G'''(a)/2 - G'''(b)/3 - (G''(0)/2 + G'''(b) t / 6)^2)
      Interval bracket = h3 * Interval(0.5) - h3 / Interval(3.0) - sqr(slope0);
      if (bracket.hi() <= 0.0) return true;
    }
    if (at_seam || cell_seams.straddled) return false;
    // Second order around the near end of the cell.
    Jet3<Interval> jn = jet_eval(f_, Interval(xn), opt_);
    Interval n1 = jn.d1 / hp_;
    Interval n2 = Interval(sign_) * jn.d2 / hp_;
    Interval qn = g_of(jn.v) / tn;
    Interval qn1 = (n1 - qn) / tn;
    Interval dn = n1 - sqr(qn);
    Interval dn1 = n2 - Interval(2.0) * qn * qn1;
    Interval q1 = (d1 - q) / T;
    Interval q2 = (d2 - Interval(2.0) * q1) / T;
    Interval dd = d3 - Interval(2.0) * sqr(q1) - Interval(2.0) * q * q2;
    Interval W = nonnegative(T - tn);
    return (dn + dn1 * W + dd * sqr(W) * Interval(0.5)).hi() <= 0.0;
  }

  const FunctionExpr& f_;
  double s_;
  int sign_;
  EvalOptions opt_;
  Interval hp_, hs_, b0_;
  bool ok_ = false;
};

// Walks away from s over `region`, split at the seams inside it, and returns
// the far end of the verified stretch.
double reach(const Side& side, double s, const Interval& region, int sign, const std::vector<double>& seams,
             std::size_t budget) {
  if (!side.usable()) return s;
  std::vector<double> cuts{region.lo(), region.hi()};
  for (double c : seams) {
    if (c > region.lo() && c < region.hi()) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  if (sign < 0) std::reverse(cuts.begin(), cuts.end());
  double leaf = region.width() * std::ldexp(1.0, -kLeafBits);
  std::size_t cells = 0;
  double verified = s;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    Interval piece(std::min(cuts[k], cuts[k + 1]), std::max(cuts[k], cuts[k + 1]));
    std::vector<Interval> stack{piece};
    while (!stack.empty()) {
      Interval X = stack.back();
      stack.pop_back();
      if (++cells > budget) return verified;
      if (side.cell(X)) {
        verified = sign > 0 ? X.hi() : X.lo();
        continue;
      }
      if (X.width() <= leaf) return verified;
      double m = X.mid();
      // near half on top
      if (sign > 0) {
        stack.emplace_back(m, X.hi());
        stack.emplace_back(X.lo(), m);
      } else {
        stack.emplace_back(X.lo(), m);
        stack.emplace_back(m, X.hi());
      }
    }
  }
  return verified;
}

}  // namespace

SeamReach seam_reach(const FunctionExpr& f, double s, const Interval& component, const std::vector<double>& seams,
                     std::size_t budget) {
  SeamReach r{s, s};
  if (!(s > component.lo() && s < component.hi())) return r;
  try {
    Side right(f, s, +1);
    Side left(f, s, -1);
    r.right = reach(right, s, Interval(s, component.hi()), +1, seams, budget);
    if (r.right > s) r.left = reach(left, s, Interval(component.lo(), s), -1, seams, budget);
  } catch (const DomainViolation&) {
  }
  return r;
}

}  // namespace coexpand::detail
