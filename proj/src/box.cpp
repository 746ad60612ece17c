#include "coexpand/box.hpp"

#include <tuple>

namespace coexpand {

std::pair<Box2, Box2> split(const Box2& b) {
  if (b.x.width() >= b.y.width()) {
    double m = b.x.mid();
    return {{Interval(b.x.lo(), m), b.y}, {Interval(m, b.x.hi()), b.y}};
  }
  double m = b.y.mid();
  return {{b.x, Interval(b.y.lo(), m)}, {b.x, Interval(m, b.y.hi())}};
}

bool box_less(const Box2& a, const Box2& b) {
  return std::make_tuple(a.x.lo(), a.x.hi(), a.y.lo(), a.y.hi()) <
         std::make_tuple(b.x.lo(), b.x.hi(), b.y.lo(), b.y.hi());
}

}  // namespace coexpand
