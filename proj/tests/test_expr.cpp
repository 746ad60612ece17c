#include <doctest.h>

#include <cmath>

#include "coexpand/analysis.hpp"
#include "coexpand/error.hpp"
#include "coexpand/eval.hpp"
#include "coexpand/parser.hpp"
#include "support.hpp"

using namespace coexpand;

namespace {

FunctionExpr x() { return FunctionExpr::variable(); }
FunctionExpr c(double v) { return FunctionExpr::constant(v); }

}  // namespace

TEST_CASE("parse builds the expected trees") {
  CHECK(parse("tanh(2*x)") == FunctionExpr::apply(Builtin::Tanh, c(2) * x()));
  CHECK(parse("tanh(4*x) + tanh(x/4)") ==
        FunctionExpr::apply(Builtin::Tanh, c(4) * x()) + FunctionExpr::apply(Builtin::Tanh, x() / c(4)));
  CHECK(parse("  x ^ 3 ") == FunctionExpr::pow(x(), 3));
  CHECK(parse("-2") == c(-2));
  CHECK(parse("-x") == -x());
  CHECK(parse("1e-3") == c(1e-3));
}

TEST_CASE("parse rejects text outside the grammar") {
  CHECK_THROWS_AS(parse("e^x"), ParseError);
  CHECK_THROWS_AS(parse("x^1.5"), ParseError);
  CHECK_THROWS_AS(parse("abs(x)"), ParseError);
  CHECK_THROWS_AS(parse("pi*x"), ParseError);
  CHECK_THROWS_AS(parse("sin("), ParseError);
  CHECK_THROWS_AS(parse("x x"), ParseError);
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("glue(x, tanh(x))"), ParseError);

  try {
    parse("2 * + x");
    FAIL("no exception");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 4);
    CHECK_FALSE(e.expected().empty());
  }
}

TEST_CASE("format prints the canonical text") {
  CHECK(format(x()) == "x");
  CHECK(format(c(2) * x()) == "2 * x");
  CHECK(format(parse("tanh(4*x)+tanh(x/4)")) == "tanh(4 * x) + tanh(x / 4)");
  CHECK(format(parse("x-(x-1)")) == "x - (x - 1)");
}

TEST_CASE("parse inverts format on random trees") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 1000; ++k) {
    FunctionExpr f = testing::random_tree(rng, 5);
    std::string text = format(f);
    FunctionExpr g = parse(text);
    INFO(text);
    REQUIRE(g == f);
    CHECK(format(g) == text);
  }
}

TEST_CASE("glued trees re-read with allow_glue") {
  FunctionExpr g1 = compose(glue(x(), parse("tanh(x)")), parse("x - 1")) + c(1);
  FunctionExpr h = glue(parse("tanh(x)"), g1);
  ParseOptions po;
  po.allow_glue = true;
  CHECK(parse(format(h), po) == h);
}

TEST_CASE("compose substitutes for x") {
  CHECK(compose(parse("x^2"), parse("x + 1")) == parse("(x + 1)^2"));
  FunctionExpr f = parse("exp(x) - 2");
  CHECK(compose(x(), f) == f);
  CHECK(eval(compose(parse("tanh(x)"), parse("2*x")), 0.3) == doctest::Approx(std::tanh(0.6)).epsilon(1e-15));
}

TEST_CASE("compose is associative up to evaluation") {
  const auto& lib = testing::smooth_library();
  std::mt19937_64 rng(11);
  for (int k = 0; k < 200; ++k) {
    FunctionExpr f = parse(lib[rng() % lib.size()].text);
    FunctionExpr g = parse("0.5*x + 0.1");
    FunctionExpr h = parse(lib[rng() % lib.size()].text);
    double t = testing::uniform(rng, -0.5, 0.5);
    double a, b;
    try {
      a = eval(compose(h, compose(g, f)), t);
      b = eval(compose(compose(h, g), f), t);
    } catch (const DomainViolation&) {
      continue;
    }
    CHECK(std::fabs(a - b) <= 1e-12 * (1 + std::fabs(a)));
  }
}

TEST_CASE("affine conjugation") {
  FunctionExpr f = parse("tanh(2*x)");
  CHECK(affine_conjugate(f, AffineMap::identity(), AffineMap::identity()) == f);
  CHECK_THROWS_AS(affine_conjugate(f, {0.0, 1.0}, AffineMap::identity()), DegenerateAffine);

  AffineMap A{-3.0, 0.5}, B{0.25, -1.0};
  FunctionExpr h = affine_conjugate(f, A, B);
  for (double u = -2; u <= 2; u += 0.25) {
    for (double v = -2; v < u; v += 0.25) {
      CHECK(chi(h, u, v) == doctest::Approx(chi(f, B(u), B(v))).epsilon(1e-10));
    }
  }

  // g_1(x) = (id ⋆ tanh)(x − 1) + 1
  FunctionExpr g1 = affine_conjugate(glue(x(), parse("tanh(x)")), {1.0, 1.0}, {1.0, -1.0});
  CHECK(eval(g1, 0.5) == 0.5);
  CHECK(eval(g1, -3.0) == -3.0);
  CHECK(eval(g1, 2.0) == doctest::Approx(1 + std::tanh(1.0)));
}

TEST_CASE("glue validates its pieces") {
  FunctionExpr h = glue(x(), parse("tanh(x)"));
  CHECK(eval(h, -2.0) == -2.0);
  CHECK(eval(h, 2.0) == doctest::Approx(std::tanh(2.0)));
  CHECK(contains_glue(h));

  // C¹ at the seam
  Jet3<double> l = jet_eval(h, 0.0, {GlueSide::Left});
  Jet3<double> r = jet_eval(h, 0.0, {GlueSide::Right});
  CHECK(l.v == 0.0);
  CHECK(r.v == 0.0);
  CHECK(l.d1 == 1.0);
  CHECK(r.d1 == 1.0);
  CHECK(l.d3 == 0.0);
  CHECK(r.d3 == doctest::Approx(-2.0));

  FunctionExpr elu = glue(parse("exp(x) - 1"), x());
  CHECK(eval(elu, -1.0) == doctest::Approx(std::exp(-1.0) - 1));
  CHECK(eval(elu, 3.0) == 3.0);

  try {
    glue(parse("2*x"), parse("tanh(x)"));
    FAIL("2x accepted");
  } catch (const NotGlueable& e) {
    CHECK(e.which() == GlueSide::Left);
  }
  try {
    glue(parse("tanh(x)"), parse("exp(x) - 1"));
    FAIL("exp(x) - 1 accepted on the right");
  } catch (const NotGlueable& e) {
    CHECK(e.which() == GlueSide::Right);
  }
  CHECK_THROWS_AS(glue(x(), parse("x + 1")), NotGlueable);
}

TEST_CASE("affine_form and is_identity fold constants") {
  auto a = affine_form(parse("3*(x - 1) + 2*x"));
  REQUIRE(a);
  CHECK(a->slope == 5.0);
  CHECK(a->intercept == -3.0);
  CHECK(is_identity(parse("(x + 1) - 1")));
  CHECK_FALSE(is_identity(parse("x^2")));
  CHECK_FALSE(affine_form(parse("tanh(x)")));
}
