#pragma once

#include <random>
#include <string>
#include <vector>

#include "coexpand/builtin.hpp"
#include "coexpand/expr.hpp"
#include "coexpand/parser.hpp"

namespace coexpand::testing {

/// Glue-free random tree.  Leaves are x or a decimal constant; the tree
/// may well be undefined at a given point.
inline FunctionExpr random_tree(std::mt19937_64& rng, int depth) {
  static const double constants[] = {0.5, 2, 3, -1, -2.5, 0.1, 1e-3, 7, 0.75, -0.25, 1e6, 12.5};
  std::uniform_int_distribution<int> pick(0, 9);
  int k = depth <= 0 ? pick(rng) % 2 : pick(rng);
  switch (k) {
    case 0: return FunctionExpr::variable();
    case 1: return FunctionExpr::constant(constants[std::uniform_int_distribution<int>(0, 11)(rng)]);
    case 2: return random_tree(rng, depth - 1) + random_tree(rng, depth - 1);
    case 3: return random_tree(rng, depth - 1) - random_tree(rng, depth - 1);
    case 4: return random_tree(rng, depth - 1) * random_tree(rng, depth - 1);
    case 5: return random_tree(rng, depth - 1) / random_tree(rng, depth - 1);
    case 6: return FunctionExpr::pow(random_tree(rng, depth - 1), std::uniform_int_distribution<int>(-2, 4)(rng));
    case 7: return -random_tree(rng, depth - 1);
    default: {
      Builtin b = kAllBuiltins[std::uniform_int_distribution<std::size_t>(0, kAllBuiltins.size() - 1)(rng)];
      return FunctionExpr::apply(b, random_tree(rng, depth - 1));
    }
  }
}

struct Sample {
  const char* text;
  double lo;
  double hi;
};

/// Smooth functions with f' bounded away from 0 on [lo, hi].
inline const std::vector<Sample>& smooth_library() {
  static const std::vector<Sample> lib = {
      {"tanh(x)", -1.5, 1.5},
      {"tanh(2*x)", -1, 1},
      {"exp(x) - 2", -2, 2},
      {"exp(x/2) - 1", -2, 2},
      {"atan(x)", -1.5, 1.5},
      {"sin(x) + 2*x", -3, 3},
      {"x + x^3/3", -2, 2},
      {"erf(x/2)", -2, 2},
      {"log(x + 3)", -2, 2},
      {"sqrt(x + 4)", -3, 3},
      {"tanh(4*x) + tanh(x/4)", -1, 1},
      {"3.2*x*(1 - x)", 0, 0.45},
      {"x^2", 0.5, 2},
      {"1/(2 - x)", -2, 1.5},
  };
  return lib;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace coexpand::testing
