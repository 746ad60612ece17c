#pragma once

#include "coexpand/expr.hpp"

namespace coexpand::zoo {

/// tanh(4x) + tanh(x/4): positive Schwarzian near x = 1.
FunctionExpr counterexample();

/// x ↦ 4 f(f(x + s) − 2s) + s + 4 with f the counterexample.
FunctionExpr composition_map(double s = 0.94);

/// exp(x) − 1 for x ≤ 0 glued to the identity.
FunctionExpr elu();

/// r x (1 − x).
FunctionExpr logistic(double r = 3.2);

}  // namespace coexpand::zoo
