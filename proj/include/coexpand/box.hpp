#pragma once

#include <utility>

#include "coexpand/interval.hpp"

namespace coexpand {

/// Axis-aligned box in the (x, y) plane.
struct Box2 {
  Interval x;
  Interval y;

  friend bool operator==(const Box2& a, const Box2& b) { return a.x == b.x && a.y == b.y; }
};

/// Bisects the wider side at its midpoint (x on ties).  The two children
/// share the cut line and their union is the parent.
std::pair<Box2, Box2> split(const Box2& b);

/// Lexicographic order on (x.lo, x.hi, y.lo, y.hi); used to canonicalise
/// box lists before output.
bool box_less(const Box2& a, const Box2& b);

}  // namespace coexpand
