#include "levysearch/geometry.hpp"

#include <algorithm>
#include <string>

namespace levysearch {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw InvalidCoordinate(std::string("non-finite ") + what);
  }
}

void require_side(double side) {
  if (!(side > 2.0) || !std::isfinite(side)) {
    throw std::domain_error("torus side must be finite and > 2, got " + std::to_string(side));
  }
}

}  // namespace

double wrap_coordinate(double value, double side) {
  const double half = 0.5 * side;
  if (value >= -half && value < half) {
    return value;
  }
  double r = value - side * std::floor(value / side + 0.5);
  // floor() can land one period off when value/side sits on a rounding edge.
  if (r >= half) {
    r -= side;
  }
  if (r < -half) {
    r += side;
    if (r >= half) {
      r = -half;
    }
  }
  return r;
}

TorusPoint wrap(Vec2 raw, double side) {
  require_side(side);
  require_finite(raw.x, "x coordinate");
  require_finite(raw.y, "y coordinate");
  return {wrap_coordinate(raw.x, side), wrap_coordinate(raw.y, side), side};
}

Displacement torus_displacement(const TorusPoint& from, const TorusPoint& to) {
  if (from.side != to.side) {
    throw DomainMismatch("points live on tori of different side lengths");
  }
  return {minimal_image(to.x - from.x, from.side), minimal_image(to.y - from.y, from.side)};
}

double torus_distance(const TorusPoint& p, const TorusPoint& q) {
  return torus_displacement(p, q).length();
}

double point_segment_distance2(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const Vec2 ap = p - a;
  const double len2 = ab.norm2();
  if (len2 == 0.0) {
    return ap.norm2();
  }
  const double t = std::clamp(dot(ap, ab) / len2, 0.0, 1.0);
  const Vec2 foot = a + t * ab;
  return (p - foot).norm2();
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  for (double v : {p.x, p.y, a.x, a.y, b.x, b.y}) {
    require_finite(v, "segment query coordinate");
  }
  return std::sqrt(point_segment_distance2(p, a, b));
}

double point_segment_distance(const TorusPoint& p, Vec2 a, Vec2 b, double side) {
  if (p.side != side) {
    throw DomainMismatch("query point and segment live on different tori");
  }
  const Vec2 mid = 0.5 * (a + b);
  const Vec2 shift{minimal_image(mid.x - p.x, side) - (mid.x - p.x),
                   minimal_image(mid.y - p.y, side) - (mid.y - p.y)};
  return point_segment_distance(p.as_vec(), a + shift, b + shift);
}

}  // namespace levysearch
