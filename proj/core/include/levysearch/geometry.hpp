#ifndef LEVYSEARCH_GEOMETRY_HPP
#define LEVYSEARCH_GEOMETRY_HPP

#include <cmath>
#include <stdexcept>

namespace levysearch {

/// Raised for NaN or infinite coordinates.
class InvalidCoordinate : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when two points living on tori of different sizes are combined.
class DomainMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Vec2, Vec2) = default;

  [[nodiscard]] constexpr double norm2() const { return x * x + y * y; }
  [[nodiscard]] double norm() const { return std::hypot(x, y); }
};

[[nodiscard]] constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

/// Point of the unbounded plane.
using PlanePoint = Vec2;

/// A step or separation vector.
struct Displacement {
  double dx = 0.0;
  double dy = 0.0;

  [[nodiscard]] double length() const { return std::hypot(dx, dy); }
  [[nodiscard]] Vec2 as_vec() const { return {dx, dy}; }
};

/// Point of the square torus of side `side`, stored in the canonical
/// representative [-side/2, side/2)^2.
struct TorusPoint {
  double x = 0.0;
  double y = 0.0;
  double side = 0.0;

  [[nodiscard]] Vec2 as_vec() const { return {x, y}; }
  friend bool operator==(const TorusPoint&, const TorusPoint&) = default;
};

/// Shifts `value` by an integer multiple of `side` into [-side/2, side/2).
[[nodiscard]] double wrap_coordinate(double value, double side);

/// Canonicalizes raw coordinates onto the torus. Requires side > 2.
[[nodiscard]] TorusPoint wrap(Vec2 raw, double side);

/// Minimal-image representative of a separation along one axis.
[[nodiscard]] inline double minimal_image(double delta, double side) {
  return wrap_coordinate(delta, side);
}

/// Minimal-image displacement from `from` to `to`.
[[nodiscard]] Displacement torus_displacement(const TorusPoint& from, const TorusPoint& to);

[[nodiscard]] double torus_distance(const TorusPoint& p, const TorusPoint& q);

/// Distance from p to the closed segment [a, b]; a == b degenerates to a point.
[[nodiscard]] double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);

/// Squared variant, avoids the square root in hot loops.
[[nodiscard]] double point_segment_distance2(Vec2 p, Vec2 a, Vec2 b);

/// Segment distance on the torus: the segment is translated so that its
/// midpoint is the nearest image relative to p, then measured in the plane.
/// Exact while the segment length plus the query radius stays below side/2.
[[nodiscard]] double point_segment_distance(const TorusPoint& p, Vec2 a, Vec2 b, double side);

}  // namespace levysearch

#endif  // LEVYSEARCH_GEOMETRY_HPP
