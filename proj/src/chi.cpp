#include <cmath>
#include <limits>

#include "coexpand/analysis.hpp"
#include "coexpand/error.hpp"
#include "detail.hpp"

namespace coexpand {

namespace {

double spacing(double v) {
  v = std::fabs(v);
  return std::nextafter(v, std::numeric_limits<double>::infinity()) - v;
}

const Interval kEntire = Interval::entire();

}  // namespace

double chi(const FunctionExpr& f, double x, double y) {
  if (x == y) throw DiagonalInput("chi: x == y (" + std::to_string(x) + ")");
  Jet3<double> jx = jet_eval(f, x);
  Jet3<double> jy = jet_eval(f, y);
  double df = jx.v - jy.v;
  if (std::fabs(df) <= 4 * spacing(std::max(std::fabs(jx.v), std::fabs(jy.v)))) {
    throw ValueCollision("chi: f(x) and f(y) coincide to within 4 ulp");
  }
  double q = (x - y) / df;
  return jx.d1 * jy.d1 * q * q;
}

double u_f(const FunctionExpr& f, double x, double y) {
  if (x == y) throw DiagonalInput("u_f: x == y (" + std::to_string(x) + ")");
  Jet3<double> jx = jet_eval(f, x);
  Jet3<double> jy = jet_eval(f, y);
  double df = jx.v - jy.v;
  if (std::fabs(df) <= 4 * spacing(std::max(std::fabs(jx.v), std::fabs(jy.v)))) {
    throw ValueCollision("u_f: f(x) and f(y) coincide to within 4 ulp");
  }
  double dx = x - y;
  return jx.d1 * jy.d1 / (df * df) - 1.0 / (dx * dx);
}

double schwarzian(const FunctionExpr& f, double x) {
  SeamInfo seams;
  Jet3<double> j = jet_eval(f, x, {}, &seams);
  if (seams.touched) throw SeamPoint("schwarzian: x = " + std::to_string(x) + " lies on a glue seam");
  if (j.d1 == 0.0) throw CriticalPoint("schwarzian: f'(" + std::to_string(x) + ") = 0");
  double r = j.d2 / j.d1;
  return j.d3 / j.d1 - 1.5 * r * r;
}

Interval schwarzian(const FunctionExpr& f, const Interval& x) {
  SeamInfo seams;
  Jet3<Interval> j = jet_eval(f, x, {}, &seams);
  if (seams.straddled) throw SeamPoint("schwarzian: " + to_string(x) + " straddles a glue seam");
  if (j.d1.contains_zero()) throw CriticalPoint("schwarzian: f' may vanish on " + to_string(x));
  return j.d3 / j.d1 - Interval(1.5) * sqr(j.d2 / j.d1);
}

Interval chi_interval(const FunctionExpr& f, const Box2& b) {
  Interval X = b.x;
  Interval Y = b.y;
  if (X.overlaps(Y)) throw DiagonalInput("chi_interval: box meets the diagonal");
  if (X.hi() < Y.lo()) std::swap(X, Y);
  Interval direct = detail::chi_direct(f, X, Y);
  Interval taylor = detail::chi_taylor(f, X, Y);
  Interval both = intersect(direct, taylor);
  if (both.is_empty()) both = direct.width() < taylor.width() ? direct : taylor;
  if (both == kEntire) throw DomainViolation("chi", X.lo(), X.hi());
  return both;
}

namespace detail {

namespace {

struct Quotient {
  Jet3<Interval> jx, jy, jh;
  Interval slope;  // (f(x) - f(y)) / (x - y)
  Interval chi;
  Interval lx;     // partials of log χ
  Interval ly;
};

bool quotient(const FunctionExpr& f, const Interval& X, const Interval& Y, Quotient& q) {
  try {
    q.jx = jet_eval(f, X);
    q.jy = jet_eval(f, Y);
    q.slope = kEntire;
    Interval gap = X - Y;
    if (!gap.contains_zero()) {
      Interval df = q.jx.v - q.jy.v;
      if (!df.contains_zero()) q.slope = df / gap;
    }
    q.jh = jet_eval(f, hull(X, Y));
    q.slope = intersect(q.slope, q.jh.d1);
    if (q.slope.is_empty() || q.slope.contains_zero()) return false;
    q.chi = q.jx.d1 * q.jy.d1 / sqr(q.slope);
    // f[x,x,y] and f[x,y,y], each also inside f''(hull) / 2
    Interval half_curv = q.jh.d2 * Interval(0.5);
    Interval fxxy = half_curv, fxyy = half_curv;
    if (!gap.contains_zero()) {
      Interval a = intersect(half_curv, (q.jx.d1 - q.slope) / gap);
      Interval b = intersect(half_curv, (q.slope - q.jy.d1) / gap);
      if (!a.is_empty()) fxxy = a;
      if (!b.is_empty()) fxyy = b;
    }
    Interval two(2.0);
    // Undefined next to a critical point, where the quotient itself is still usable.
    q.lx = q.jx.d1.contains_zero() ? kEntire : q.jx.d2 / q.jx.d1 - two * fxxy / q.slope;
    q.ly = q.jy.d1.contains_zero() ? kEntire : q.jy.d2 / q.jy.d1 - two * fxyy / q.slope;
    return true;
  } catch (const DomainViolation&) {
    return false;
  }
}

}  // namespace

// Direct quotient, tightened by a mean-value form around the box centre.
// The partials of log χ are f''(x)/f'(x) - 2 f[x,x,y] / f[x,y] and
// f''(y)/f'(y) - 2 f[x,y,y] / f[x,y].
Interval chi_direct(const FunctionExpr& f, const Interval& X, const Interval& Y, bool settle) {
  Quotient q;
  if (!quotient(f, X, Y, q)) return kEntire;
  if (settle && q.chi.hi() <= 1.0) return q.chi;
  if ((X.is_point() && Y.is_point()) || q.lx == kEntire || q.ly == kEntire) return q.chi;
  try {
    double xc = X.mid(), yc = Y.mid();
    Quotient c;
    if (!quotient(f, Interval(xc), Interval(yc), c)) return q.chi;
    Interval centre = c.chi;
    Interval t = chi_taylor(f, Interval(xc), Interval(yc));
    if (!(t == kEntire) && !intersect(centre, t).is_empty()) centre = intersect(centre, t);
    Interval mv = centre + q.chi * (q.lx * (X - Interval(xc)) + q.ly * (Y - Interval(yc)));
    Interval both = intersect(q.chi, mv);
    return both.is_empty() ? q.chi : both;
  } catch (const DomainViolation&) {
    return q.chi;
  }
}

Interval log_chi_partial(const FunctionExpr& f, const Interval& X, const Interval& Y, bool wrt_x) {
  Quotient q;
  if (!quotient(f, X, Y, q)) return kEntire;
  return wrt_x ? q.lx : q.ly;
}

namespace {

struct TaylorParts {
  Interval h;
  Interval a;
  Interval numerator;
  Interval third;
};

bool taylor_parts(const FunctionExpr& f, const Interval& X, const Interval& Y, TaylorParts& out) {
  try {
    SeamInfo seams;
    Interval H = hull(X, Y);
    Jet3<Interval> jh = jet_eval(f, H, {}, &seams);
    Interval C = (X + Y) * Interval(0.5);
    Jet3<Interval> jc = jet_eval(f, C, {}, &seams);
    if (seams.straddled) return false;
    Interval h = nonnegative((X - Y) * Interval(0.5));
    const Interval& a = jc.d1;
    const Interval& b = jc.d2;
    const Interval& T = jh.d3;
    Interval n = a * (T - T / Interval(3.0)) - sqr(b) + h * b * Interval(0.5) * (T - T) +
                 sqr(h) * (T * T * Interval(0.25) - sqr(T) / Interval(36.0));
    out = {h, a, n, T};
    return true;
  } catch (const DomainViolation&) {
    return false;
  }
}

}  // namespace

Interval taylor_numerator(const FunctionExpr& f, const Interval& X, const Interval& Y) {
  TaylorParts p;
  if (!taylor_parts(f, X, Y, p)) return kEntire;
  return p.numerator;
}

Interval chi_taylor(const FunctionExpr& f, const Interval& X, const Interval& Y) {
  TaylorParts p;
  if (!taylor_parts(f, X, Y, p)) return kEntire;
  Interval h2 = sqr(p.h);
  Interval d = p.a + h2 * p.third / Interval(6.0);
  if (d.contains_zero()) return kEntire;
  return Interval(1.0) + h2 * p.numerator / sqr(d);
}

Interval seam_numerator(const FunctionExpr& f, const Interval& X, const Interval& Y, double s) {
  try {
    SeamInfo seams;
    EvalOptions right{GlueSide::Right};
    EvalOptions left{GlueSide::Left};
    Jet3<Interval> jr = jet_eval(f, Interval(s), right, &seams);
    Jet3<Interval> jl = jet_eval(f, Interval(s), left, &seams);
    Interval tp = jet_eval(f, Interval(s, X.hi()), right, &seams).d3;
    Interval tm = jet_eval(f, Interval(Y.lo(), s), left, &seams).d3;
    if (seams.straddled) return kEntire;
    Interval a = intersect(jr.d1, jl.d1);
    if (a.is_empty()) a = hull(jr.d1, jl.d1);
    const Interval& bp = jr.d2;
    const Interval& bm = jl.d2;
    Interval u = nonnegative(X - Interval(s));
    Interval v = nonnegative(Interval(s) - Y);
    Interval u2 = sqr(u), v2 = sqr(v), u3 = powi(u, 3), v3 = powi(v, 3);
    Interval w = u + v;
    Interval half(0.5);
    Interval alpha = u * bp + u2 * tp * half;
    Interval beta = v2 * tm * half - v * bm;
    Interval cubic = u3 * tp + v3 * tm;
    Interval gamma = (u2 * bp - v2 * bm) * half + cubic / Interval(6.0);
    Interval rest = (u2 * tp + v2 * tm) * w * half - cubic / Interval(3.0);
    return w * a * (u * v * (bp - bm) + rest) + alpha * beta * sqr(w) - sqr(gamma);
  } catch (const DomainViolation&) {
    return kEntire;
  }
}

double chi_lower(const FunctionExpr& f, double x, double y) {
  if (x < y) std::swap(x, y);
  if (x == y) return -std::numeric_limits<double>::infinity();
  double best = -std::numeric_limits<double>::infinity();
  Interval direct = chi_direct(f, Interval(x), Interval(y));
  if (!(direct == kEntire)) best = direct.lo();
  Interval taylor = chi_taylor(f, Interval(x), Interval(y));
  if (!(taylor == kEntire)) best = std::max(best, taylor.lo());
  return best;
}

}  // namespace detail

}  // namespace coexpand
