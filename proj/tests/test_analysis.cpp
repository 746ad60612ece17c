#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "coexpand/analysis.hpp"
#include "coexpand/error.hpp"
#include "coexpand/eval.hpp"
#include "coexpand/parser.hpp"
#include "coexpand/zoo.hpp"
#include "support.hpp"

using namespace coexpand;

namespace {

FunctionExpr id_tanh() { return glue(FunctionExpr::variable(), parse("tanh(x)")); }

FunctionExpr tanh_g1() {
  FunctionExpr g1 = affine_conjugate(id_tanh(), {1.0, 1.0}, {1.0, -1.0});
  return glue(parse("tanh(x)"), g1);
}

double fd_schwarzian(const FunctionExpr& f, double x, double h) {
  double m2 = eval(f, x - 2 * h), m1 = eval(f, x - h), z = eval(f, x), p1 = eval(f, x + h), p2 = eval(f, x + 2 * h);
  double d1 = (m2 - 8 * m1 + 8 * p1 - p2) / (12 * h);
  double d2 = (-m2 + 16 * m1 - 30 * z + 16 * p1 - p2) / (12 * h * h);
  double d3 = (-m2 + 2 * m1 - 2 * p1 + p2) / (2 * h * h * h);
  return d3 / d1 - 1.5 * (d2 / d1) * (d2 / d1);
}

// Richardson step on two stencil widths.
double fd_schwarzian(const FunctionExpr& f, double x) {
  const double h = 1e-3;
  return (4 * fd_schwarzian(f, x, h) - fd_schwarzian(f, x, 2 * h)) / 3;
}

bool near(const Interval& i, double v) { return std::fabs(i.mid() - v) <= 1e-12 * (1 + std::fabs(v)); }

}  // namespace

TEST_CASE("chi examples") {
  FunctionExpr a = parse("2*x + 1");
  CHECK(chi(a, 0.3, -4.0) == 1.0);
  CHECK(chi(a, 7.0, 2.0) == 1.0);
  CHECK(chi(parse("x^2"), 1.0, 2.0) == doctest::Approx(8.0 / 9.0).epsilon(1e-15));
  CHECK(chi(parse("exp(x)"), 0.0, 1.0) == doctest::Approx(0.9206735942077924).epsilon(1e-14));
  CHECK_THROWS_AS(chi(a, 1.0, 1.0), DiagonalInput);
  CHECK_THROWS_AS(chi(parse("x^2"), 1.0, -1.0), ValueCollision);
}

TEST_CASE("chi_interval examples") {
  Interval one = chi_interval(parse("3*x - 7"), {Interval(1, 2), Interval(-2, -1)});
  CHECK(one.contains(1.0));
  CHECK(one.width() <= 1e-14);

  Interval t = chi_interval(parse("tanh(2*x)"), {Interval(1, 1.5), Interval(-1.5, -1)});
  CHECK(t.hi() < 1.0);

  Interval c = chi_interval(zoo::counterexample(), {Interval(-1.0005, -0.9995), Interval(-1.6005, -1.5995)});
  CHECK(c.lo() > 1.0);

  CHECK_THROWS_AS(chi_interval(parse("tanh(x)"), {Interval(0, 1), Interval(0.5, 2)}), DiagonalInput);
}

TEST_CASE("u_f examples") {
  CHECK(u_f(parse("5*x - 1"), 2.0, -3.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(std::fabs(u_f(parse("tanh(x)"), 0.1, 0.101) + 1.0 / 3.0) <= 1e-3);

  // 6 u_f(x, x + h) - S_f(x) shrinks at least linearly in h until rounding takes over near 1e-3.
  std::mt19937_64 rng(17);
  int fitted = 0;
  for (const auto& s : testing::smooth_library()) {
    FunctionExpr f = parse(s.text);
    double x0 = testing::uniform(rng, s.lo, s.hi - 0.1);
    double target = schwarzian(f, x0);
    double e1 = std::fabs(6 * u_f(f, x0, x0 + 1e-1) - target);
    double e2 = std::fabs(6 * u_f(f, x0, x0 + 1e-2) - target);
    double e3 = std::fabs(6 * u_f(f, x0, x0 + 1e-3) - target);
    INFO(std::string(s.text), " at ", x0, ": ", e1, " ", e2, " ", e3);
    CHECK(e3 <= 0.3 * e2 + 1e-5);
    if (e2 < 1e-5) continue;
    ++fitted;
    CHECK(std::log10(e1 / e2) >= 0.9);
  }
  CHECK(fitted >= 5);
}

TEST_CASE("schwarzian examples") {
  CHECK(schwarzian(parse("4*x + 1"), 0.3) == 0.0);
  CHECK(schwarzian(parse("tanh(x)"), 0.7) == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(schwarzian(zoo::counterexample(), 1.0) > 1.0);
  CHECK(schwarzian(zoo::counterexample(), Interval(1.0)).lo() > 1.0);
  CHECK_THROWS_AS(schwarzian(parse("x^2"), 0.0), CriticalPoint);
  CHECK_THROWS_AS(schwarzian(id_tanh(), 0.0), SeamPoint);
}

TEST_CASE("schwarzian matches a five-point finite difference") {
  std::mt19937_64 rng(19);
  const double h = 1e-3;
  for (int k = 0; k < 1000; ++k) {
    const auto& s = testing::smooth_library()[k % 6];
    FunctionExpr f = parse(s.text);
    double x0 = testing::uniform(rng, s.lo + 5 * h, s.hi - 5 * h);
    INFO(std::string(s.text), " at ", x0);
    CHECK(std::fabs(schwarzian(f, x0) - fd_schwarzian(f, x0)) <= 1e-5);
  }
}

TEST_CASE("critical points") {
  CritReport t = critical_points(parse("tanh(2*x)"), Interval(-5, 5));
  CHECK(t.status == CritReport::Status::Complete);
  CHECK(t.isolating.empty());
  REQUIRE(t.components.size() == 1);
  CHECK(t.components[0] == Interval(-5, 5));

  CritReport q = critical_points(parse("x^2"), Interval(-1, 1));
  CHECK(q.status == CritReport::Status::Complete);
  REQUIRE(q.isolating.size() == 1);
  CHECK(q.isolating[0].contains(0.0));
  CHECK(q.components.size() == 2);

  CritReport c = critical_points(zoo::counterexample(), Interval(-3, 3));
  CHECK(c.isolating.empty());
  CHECK(c.status == CritReport::Status::Complete);
}

TEST_CASE("fixed points") {
  const Interval d(-10, 10);
  CHECK(fixed_points(parse("x + 1"), d).empty());

  auto two = fixed_points(parse("2*x"), d);
  REQUIRE(two.size() == 1);
  CHECK(two[0].isolating.contains(0.0));
  CHECK(two[0].stability == Stability::Repelling);

  auto e = fixed_points(parse("exp(x) - 2"), d);
  REQUIRE(e.size() == 2);
  CHECK(near(e[0].isolating, -1.841405660436954));
  CHECK(e[0].stability == Stability::Attracting);
  CHECK(near(e[1].isolating, 1.1461932206205825));
  CHECK(e[1].stability == Stability::Repelling);

  auto t = fixed_points(parse("tanh(2*x)"), Interval(-5, 5));
  REQUIRE(t.size() == 3);
  CHECK(near(t[0].isolating, -0.9575040240773554));
  CHECK(t[1].isolating.contains(0.0));
  CHECK(t[1].multiplier.contains(2.0));
  CHECK(near(t[2].isolating, 0.9575040240773554));
  CHECK(t[0].stability == Stability::Attracting);
  CHECK(t[1].stability == Stability::Repelling);
  CHECK(t[2].stability == Stability::Attracting);
  for (const FixedPoint& p : t) {
    CHECK(p.certified);
    if (p.stability == Stability::Attracting) CHECK((p.multiplier.hi() < 1 && p.multiplier.lo() > -1));
  }
}

TEST_CASE("certify_membership examples") {
  Certificate a = certify_membership(parse("3*x - 7"), Interval(-5, 5));
  CHECK(a.verdict == Verdict::Certified);
  CHECK_FALSE(a.witness);

  Certificate t = certify_membership(parse("tanh(2*x)"), Interval(-5, 5));
  CHECK(t.verdict == Verdict::Certified);
  CHECK(t.frontier.empty());

  Certificate c = certify_membership(zoo::counterexample(), Interval(-3, 3));
  REQUIRE(c.verdict == Verdict::Falsified);
  REQUIRE(c.witness);
  CHECK(c.witness->chi_lower_bound > 1.0);
  CHECK(chi(zoo::counterexample(), c.witness->x, c.witness->y) > 1.0);

  CertifyParams tiny;
  tiny.budget = 3;
  CHECK(certify_membership(parse("tanh(2*x)"), Interval(-5, 5), tiny).verdict == Verdict::Unknown);

  CHECK(certify_membership(zoo::logistic(3.2), Interval(-5, 5)).verdict == Verdict::Certified);
}

TEST_CASE("certified boxes survive a grid scan") {
  CertifyParams p;
  p.record_trace = true;
  FunctionExpr f = parse("exp(x) - 2");
  Certificate c = certify_membership(f, Interval(-2, 2), p);
  REQUIRE(c.verdict == Verdict::Certified);
  REQUIRE_FALSE(c.trace.empty());
  double worst = 0;
  for (std::size_t k = 0; k < c.trace.size(); k += std::max<std::size_t>(1, c.trace.size() / 50)) {
    const Box2& b = c.trace[k].box;
    if (c.trace[k].how == Discharge::Schwarzian || c.trace[k].how == Discharge::GlueLemma) continue;
    for (int i = 0; i <= 40; ++i) {
      for (int j = 0; j <= 40; ++j) {
        double x = b.x.lo() + b.x.width() * i / 40, y = b.y.lo() + b.y.width() * j / 40;
        if (x == y) continue;
        worst = std::max(worst, chi(f, x, y));
      }
    }
  }
  CHECK(worst <= 1 + 1e-9);
}

TEST_CASE("glueable_check") {
  const Interval d(-5, 5);
  CHECK(glueable_check(parse("tanh(x)"), d).status == GlueableResult::Status::Glueable);
  CHECK(glueable_check(FunctionExpr::variable(), d).status == GlueableResult::Status::Glueable);
  CHECK(glueable_check(parse("exp(x) - 1"), Interval(-5, 0)).status == GlueableResult::Status::Glueable);
  GlueableResult two = glueable_check(parse("2*x"), d);
  CHECK(two.status == GlueableResult::Status::NotGlueable);
  GlueableResult e = glueable_check(parse("exp(x) - 1"), d);
  CHECK(e.status == GlueableResult::Status::NotGlueable);
  REQUIRE(e.witness);
  CHECK(std::fabs(std::exp(*e.witness) - 1) > std::fabs(*e.witness));
}

TEST_CASE("fixed-set classification") {
  FixSetClass a = classify_fixed_set(id_tanh(), Interval(-5, 5));
  CHECK(a.kind == FixSetClass::Kind::IntervalFix);
  CHECK(a.evidence == FixSetClass::Evidence::IdentityOnInterval);
  CHECK(a.interval == Interval(-5, 0));
  CHECK(a.reaches_domain_lo);

  FixSetClass b = classify_fixed_set(tanh_g1(), Interval(-5, 5));
  CHECK(b.kind == FixSetClass::Kind::IntervalFix);
  CHECK(b.evidence == FixSetClass::Evidence::IdentityOnInterval);
  CHECK(b.interval == Interval(0, 1));

  FixSetClass t = classify_fixed_set(parse("tanh(2*x)"), Interval(-5, 5));
  CHECK(t.kind == FixSetClass::Kind::FiniteSet);
  CHECK(t.points.size() == 3);
  CHECK_FALSE(t.theorem_alarm);

  CHECK_THROWS_AS(classify_fixed_set(parse("x^2"), Interval(-1, 1)), PreconditionUnmet);
}

TEST_CASE("glued examples are certified") {
  CHECK(certify_membership(id_tanh(), Interval(-5, 5)).verdict == Verdict::Certified);
  CHECK(certify_membership(zoo::elu(), Interval(-5, 5)).verdict == Verdict::Certified);
  CHECK(certify_membership(tanh_g1(), Interval(-5, 5)).verdict == Verdict::Certified);
}

TEST_CASE("singer_check") {
  SingerReport h = singer_check(parse("x/2"), Interval(-100, 100));
  REQUIRE(h.orbits.size() == 1);
  CHECK(h.orbits[0].period == 1);
  CHECK(h.orbits[0].reaches_lo);
  CHECK(h.orbits[0].reaches_hi);
  CHECK_FALSE(h.theorem_alarm);

  SingerReport t = singer_check(parse("tanh(2*x)"), Interval(-5, 5));
  REQUIRE(t.orbits.size() == 2);
  for (const AttractingOrbit& o : t.orbits) {
    CHECK(o.period == 1);
    CHECK((o.reaches_lo || o.reaches_hi));
    CHECK(o.dichotomy_holds);
  }
  CHECK(t.critical.empty());
  CHECK_FALSE(t.theorem_alarm);

  SingerReport l = singer_check(zoo::logistic(3.2), Interval(0, 1));
  auto cycle = std::find_if(l.orbits.begin(), l.orbits.end(), [](const AttractingOrbit& o) { return o.period == 2; });
  REQUIRE(cycle != l.orbits.end());
  REQUIRE(cycle->attracted_critical_points.size() == 1);
  CHECK(cycle->attracted_critical_points[0] == doctest::Approx(0.5));
  CHECK_FALSE(l.theorem_alarm);
}

TEST_CASE("affine conjugation leaves chi unchanged") {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 500; ++k) {
    const auto& s = testing::smooth_library()[rng() % testing::smooth_library().size()];
    FunctionExpr f = parse(s.text);
    double bs = testing::uniform(rng, 0.5, 2) * (rng() % 2 ? 1 : -1);
    double as = testing::uniform(rng, -3, 3);
    if (std::fabs(as) < 0.1) continue;
    AffineMap B{bs, 0}, A{as, testing::uniform(rng, -2, 2)};
    double u = testing::uniform(rng, s.lo, s.hi), v = testing::uniform(rng, s.lo, s.hi);
    // choose (x, y) with B(x), B(y) inside the library domain
    double x = (u - B.intercept) / B.slope, y = (v - B.intercept) / B.slope;
    if (std::fabs(u - v) < 1e-3) continue;
    FunctionExpr h = affine_conjugate(f, A, B);
    CHECK(chi(h, x, y) == doctest::Approx(chi(f, u, v)).epsilon(1e-10));
  }
}

TEST_CASE("U and chi identity") {
  std::mt19937_64 rng(29);
  for (int k = 0; k < 2000; ++k) {
    const auto& s = testing::smooth_library()[rng() % testing::smooth_library().size()];
    FunctionExpr f = parse(s.text);
    double x = testing::uniform(rng, s.lo, s.hi), y = testing::uniform(rng, s.lo, s.hi);
    if (std::fabs(x - y) < 1e-2) continue;
    CHECK(std::fabs((x - y) * (x - y) * u_f(f, x, y) - (chi(f, x, y) - 1)) <= 1e-10);
  }
}

TEST_CASE("Schwarzian chain rule") {
  std::mt19937_64 rng(31);
  const auto& lib = testing::smooth_library();
  for (int k = 0; k < 500; ++k) {
    const auto& sf = lib[rng() % 6];
    FunctionExpr f = parse(sf.text);
    FunctionExpr g = parse(lib[rng() % 6].text);
    double x0 = testing::uniform(rng, sf.lo, sf.hi);
    double lhs, rhs;
    try {
      lhs = schwarzian(compose(g, f), x0);
      double d = jet_eval(f, x0).d1;
      rhs = schwarzian(g, eval(f, x0)) * d * d + schwarzian(f, x0);
    } catch (const Error&) {
      continue;
    }
    CHECK(std::fabs(lhs - rhs) <= 1e-8 * (1 + std::fabs(lhs)));
  }
}

TEST_CASE("tangential fixed points") {
  for (const char* text : {"tanh(x)", "sin(x)", "2*(exp(x/2) - 1)"}) {
    auto pts = fixed_points(parse(text), Interval(-1, 1));
    INFO(text);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].certified);
    CHECK(pts[0].isolating.contains(0.0));
    CHECK(pts[0].stability == Stability::Neutral);
    FixSetClass c = classify_fixed_set(parse(text), Interval(-1, 1));
    CHECK(c.kind == FixSetClass::Kind::FiniteSet);
    CHECK(c.points.size() == 1);
  }
}
