#include "coexpand/zoo.hpp"

#include "coexpand/analysis.hpp"
#include "coexpand/parser.hpp"

namespace coexpand::zoo {

FunctionExpr counterexample() { return parse("tanh(4*x) + tanh(x/4)"); }

FunctionExpr composition_map(double s) {
  FunctionExpr x = FunctionExpr::variable();
  FunctionExpr f = counterexample();
  FunctionExpr inner = compose(f, x + FunctionExpr::constant(s)) - FunctionExpr::constant(2 * s);
  return FunctionExpr::constant(4.0) * compose(f, inner) + FunctionExpr::constant(s + 4.0);
}

FunctionExpr elu() { return glue(parse("exp(x) - 1"), FunctionExpr::variable()); }

FunctionExpr logistic(double r) {
  FunctionExpr x = FunctionExpr::variable();
  return FunctionExpr::constant(r) * x * (FunctionExpr::constant(1.0) - x);
}

}  // namespace coexpand::zoo
