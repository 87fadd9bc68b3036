#ifndef CERTIBOUND_BOX_HPP
#define CERTIBOUND_BOX_HPP

#include "certibound/interval.hpp"

namespace certibound {

// Axis-aligned rectangle, the integration / evaluation domain.
// Semi-infinite boxes are legal only for tail-bound operations.
struct Box2 {
  Interval x, y;

  Box2() = default;
  Box2(Interval x_, Interval y_) : x(x_), y(y_) {
    if (x.is_empty() || y.is_empty()) throw DomainError("Box2 from empty interval");
  }
  Box2(double x0, double x1, double y0, double y1) : Box2(Interval(x0, x1), Interval(y0, y1)) {}

  static Box2 point(double px, double py) { return Box2(Interval(px), Interval(py)); }

  bool is_bounded() const { return x.is_bounded() && y.is_bounded(); }
  bool contains_origin() const { return x.contains(0.0) && y.contains(0.0); }

  // enclosure of |(x, y)| over the box
  Interval radius() const {
    Interval ax = abs(x), ay = abs(y);
    return sqrt(sqr(ax) + sqr(ay));
  }

  // enclosure of the exact area (widths outward-rounded)
  Interval area() const {
    Interval wx = Interval(x.hi()) - Interval(x.lo());
    Interval wy = Interval(y.hi()) - Interval(y.lo());
    return wx * wy;
  }

  double width_x() const { return x.width(); }
  double width_y() const { return y.width(); }
};

}  // namespace certibound

#endif
