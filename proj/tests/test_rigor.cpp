#include <doctest.h>

#include <cmath>
#include <limits>

#include "coexpand/box.hpp"
#include "coexpand/error.hpp"
#include "coexpand/eval.hpp"
#include "coexpand/parser.hpp"
#include "support.hpp"

using namespace coexpand;

TEST_CASE("interval field operations round outward") {
  Interval third = Interval(1.0) / Interval(3.0);
  CHECK(third.lo() < third.hi());
  CHECK((third * Interval(3.0)).contains(1.0));
  Interval s = Interval(0.1) + Interval(0.2);
  CHECK(s.lo() <= 0.30000000000000004);
  CHECK(s.hi() >= 0.30000000000000004);
  CHECK((Interval(0.5) + Interval(0.25)).is_point());
  CHECK(sqrt(Interval(2.0)).contains(std::sqrt(2.0)));
  CHECK((sqr(sqrt(Interval(2.0)))).contains(2.0));
  CHECK(sqr(Interval(-1, 2)) == Interval(0, 4));
  CHECK(intersect(Interval(0, 1), Interval(2, 3)).is_empty());
  CHECK(hull(Interval(0, 1), Interval(2, 3)) == Interval(0, 3));
}

TEST_CASE("division by an interval containing zero") {
  CHECK_THROWS_AS(interval_eval(parse("1/x"), Interval(-1, 1)), DomainViolation);
  CHECK_THROWS_AS(interval_eval(parse("x^-2"), Interval(-1, 1)), DomainViolation);
  CHECK_NOTHROW(interval_eval(parse("1/x"), Interval(1, 2)));
}

TEST_CASE("interval_eval examples") {
  CHECK(interval_eval(parse("2*x + 1"), Interval(0, 1)) == Interval(1, 3));
  Interval t = interval_eval(parse("tanh(x)"), Interval(-1, 1));
  CHECK(t.contains(std::tanh(1.0)));
  CHECK(t.contains(-std::tanh(1.0)));
  CHECK(t.width() <= 1.53);
  CHECK_THROWS_AS(interval_eval(parse("log(x)"), Interval(-1, 1)), DomainViolation);
  CHECK_THROWS_AS(interval_eval(parse("sqrt(x)"), Interval(-1, 1)), DomainViolation);
  CHECK(interval_eval(parse("exp(x)"), Interval(0.0)) == Interval(1.0));
}

TEST_CASE("jet examples") {
  Jet3<double> sq = jet_eval(parse("x^2"), 3.0);
  CHECK(sq.v == 9);
  CHECK(sq.d1 == 6);
  CHECK(sq.d2 == 2);
  CHECK(sq.d3 == 0);
  Jet3<double> t = jet_eval(parse("tanh(x)"), 0.0);
  CHECK(t.v == 0);
  CHECK(t.d1 == 1);
  CHECK(t.d2 == 0);
  CHECK(t.d3 == doctest::Approx(-2));
  Jet3<double> e = jet_eval(parse("exp(x)"), 0.0);
  CHECK(e.v == 1);
  CHECK(e.d1 == 1);
  CHECK(e.d2 == 1);
  CHECK(e.d3 == 1);
}

TEST_CASE("enclosure of point values and jets") {
  std::mt19937_64 rng(3);
  int tested = 0;
  for (int attempt = 0; attempt < 200000 && tested < 10000; ++attempt) {
    FunctionExpr f = testing::random_tree(rng, 4);
    double a = testing::uniform(rng, -3, 3);
    double w = std::ldexp(1.0, -static_cast<int>(rng() % 20));
    Interval X(a, a + w);
    double xs = testing::uniform(rng, X.lo(), X.hi());
    Jet3<double> jp;
    Jet3<Interval> ji;
    Interval vi;
    try {
      jp = jet_eval(f, xs);
      ji = jet_eval(f, X);
      vi = interval_eval(f, X);
    } catch (const DomainViolation&) {
      continue;
    }
    if (!std::isfinite(jp.v) || !std::isfinite(jp.d1) || !std::isfinite(jp.d2) || !std::isfinite(jp.d3)) continue;
    ++tested;
    INFO(format(f), " at ", xs, " in ", to_string(X));
    // The point jet is itself rounded; compare against an exact enclosure at xs.
    Interval px = interval_eval(f, Interval(xs));
    Jet3<Interval> pj = jet_eval(f, Interval(xs));
    REQUIRE(px.subset_of(vi));
    REQUIRE(pj.v.subset_of(ji.v));
    REQUIRE(pj.d1.subset_of(ji.d1));
    REQUIRE(pj.d2.subset_of(ji.d2));
    REQUIRE(pj.d3.subset_of(ji.d3));
    // and the double evaluation lands within rounding of the enclosure
    double slack = 1e-9 * (1 + std::fabs(jp.v));
    CHECK(jp.v >= px.lo() - slack);
    CHECK(jp.v <= px.hi() + slack);
  }
  CHECK(tested == 10000);
}

TEST_CASE("jets agree with finite differences") {
  const double h = 1e-5;
  std::mt19937_64 rng(5);
  for (const auto& s : testing::smooth_library()) {
    FunctionExpr f = parse(s.text);
    for (int k = 0; k < 100; ++k) {
      double x0 = testing::uniform(rng, s.lo + 2 * h, s.hi - 2 * h);
      Jet3<double> j = jet_eval(f, x0);
      Jet3<double> p = jet_eval(f, x0 + h);
      Jet3<double> m = jet_eval(f, x0 - h);
      INFO(std::string(s.text), " at ", x0);
      CHECK(std::fabs(j.d1 - (p.v - m.v) / (2 * h)) <= 1e-6 * (1 + std::fabs(j.d1)));
      CHECK(std::fabs(j.d2 - (p.d1 - m.d1) / (2 * h)) <= 1e-6 * (1 + std::fabs(j.d2)));
      CHECK(std::fabs(j.d3 - (p.d2 - m.d2) / (2 * h)) <= 1e-6 * (1 + std::fabs(j.d3)));
      CHECK(std::fabs(j.d2 - (p.v - 2 * j.v + m.v) / (h * h)) <= 1e-4 * (1 + std::fabs(j.d2) + std::fabs(j.v)));
    }
  }
}

TEST_CASE("single primitives do not widen on sub-intervals") {
  std::mt19937_64 rng(9);
  const char* prims[] = {"exp(x)", "log(x)", "sqrt(x)", "sin(x)", "cos(x)", "tanh(x)", "atan(x)", "erf(x)"};
  for (const char* p : prims) {
    FunctionExpr f = parse(p);
    for (int k = 0; k < 500; ++k) {
      double a = testing::uniform(rng, 0.01, 5), b = testing::uniform(rng, 0.01, 5);
      Interval X(std::min(a, b), std::max(a, b));
      double u = testing::uniform(rng, X.lo(), X.hi()), v = testing::uniform(rng, X.lo(), X.hi());
      Interval Xs(std::min(u, v), std::max(u, v));
      Interval r = interval_eval(f, X), rs = interval_eval(f, Xs);
      double ulp4 = 4 * (std::nextafter(r.mag(), INFINITY) - r.mag());
      INFO(p, " ", to_string(X), " ", to_string(Xs));
      CHECK(rs.width() <= r.width() + ulp4);
    }
  }
}

TEST_CASE("glue seams are reported") {
  ParseOptions po;
  po.allow_glue = true;
  FunctionExpr h = parse("glue(x, tanh(x))", po);
  SeamInfo s;
  jet_eval(h, Interval(-1, 1), {}, &s);
  CHECK(s.straddled);
  SeamInfo t;
  jet_eval(h, Interval(0, 1), {}, &t);
  CHECK(t.touched);
  CHECK_FALSE(t.straddled);
  SeamInfo u;
  jet_eval(h, Interval(0.5, 1), {}, &u);
  CHECK_FALSE(u.touched);
}

TEST_CASE("split examples") {
  auto [a, b] = split({Interval(0, 2), Interval(0, 1)});
  CHECK(a == Box2{Interval(0, 1), Interval(0, 1)});
  CHECK(b == Box2{Interval(1, 2), Interval(0, 1)});
  auto [c, d] = split({Interval(0, 1), Interval(0, 4)});
  CHECK(c.x == Interval(0, 1));
  CHECK(d.x == Interval(0, 1));
  CHECK(c.y == Interval(0, 2));
  CHECK(d.y == Interval(2, 4));
}

TEST_CASE("split property on random boxes") {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 10000; ++k) {
    double a = testing::uniform(rng, -10, 10), w = testing::uniform(rng, 1e-9, 5);
    double b = testing::uniform(rng, -10, 10), v = testing::uniform(rng, 1e-9, 5);
    Box2 box{Interval(a, a + w), Interval(b, b + v)};
    auto [l, r] = split(box);
    CHECK_FALSE(l.x.is_empty());
    CHECK_FALSE(r.y.is_empty());
    CHECK(l.x.width() <= box.x.width());
    CHECK(l.y.width() <= box.y.width());
    CHECK(r.x.width() <= box.x.width());
    CHECK(r.y.width() <= box.y.width());
    CHECK(hull(l.x, r.x) == box.x);
    CHECK(hull(l.y, r.y) == box.y);
    CHECK(box_less(l, r));
  }
}
