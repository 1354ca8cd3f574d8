#ifndef LEVYSEARCH_TARGET_HPP
#define LEVYSEARCH_TARGET_HPP

#include <string>
#include <string_view>
#include <vector>

#include "levysearch/geometry.hpp"
#include "levysearch/rng.hpp"

namespace levysearch {

enum class ShapeKind { segment, segment_rotated, disc, square, lshape, polyline };

[[nodiscard]] std::string_view to_string(ShapeKind kind);
/// Inverse of to_string; throws std::invalid_argument on unknown names.
[[nodiscard]] ShapeKind shape_from_string(std::string_view name);

/// Shapes produced by make_ensemble, in ensemble order.
[[nodiscard]] const std::vector<ShapeKind>& ensemble_shapes();

/// A connected, closed target set on the torus. Geometry is stored in a
/// local frame around `center` (the center of an enclosing circle of radius
/// `bounding_radius`). Detection tests the minimal image of the query
/// relative to `center`, which is exact while bounding_radius + 1 <= side/2.
class Target {
 public:
  static Target disc(const TorusPoint& center, double radius);
  static Target segment(const TorusPoint& a, const TorusPoint& b);
  /// Segment of given length centred at `center`, direction `angle`.
  static Target segment(const TorusPoint& center, double length, double angle);
  /// Hollow square (perimeter only) with the given diagonal.
  static Target square_perimeter(const TorusPoint& center, double diagonal, double angle);
  /// Two perpendicular arms of length diagonal/sqrt(2) meeting at a corner,
  /// so the tips are `diagonal` apart.
  static Target lshape(const TorusPoint& center, double diagonal, double angle);
  /// Open (or closed) chain through `anchor + offsets[i]`.
  static Target polyline(const TorusPoint& anchor, std::vector<Vec2> offsets, bool closed = false);

  /// True iff the distance from p to the set is <= 1.
  [[nodiscard]] bool detects(const TorusPoint& p) const;

  /// Distance from p to the set (0 inside a disc).
  [[nodiscard]] double distance(const TorusPoint& p) const;

  [[nodiscard]] ShapeKind kind() const { return kind_; }
  [[nodiscard]] const TorusPoint& center() const { return center_; }
  [[nodiscard]] double diameter() const { return diameter_; }
  [[nodiscard]] double bounding_radius() const { return bounding_radius_; }
  [[nodiscard]] double side() const { return center_.side; }
  /// Disc radius (0 for chains).
  [[nodiscard]] double radius() const { return radius_; }
  /// Chain vertices relative to center(); closed chains repeat the first vertex.
  [[nodiscard]] const std::vector<Vec2>& vertices() const { return vertices_; }

  /// Diameter used in reports; sizes below the sensing radius share the D=1 bucket.
  [[nodiscard]] double report_diameter() const { return diameter_ < 1.0 ? 1.0 : diameter_; }

 private:
  Target() = default;
  static Target from_chain(ShapeKind kind, const TorusPoint& anchor, std::vector<Vec2> offsets);
  void validate() const;

  friend std::vector<Target> make_ensemble(double, double, Rng&, const std::vector<ShapeKind>&);

  ShapeKind kind_ = ShapeKind::polyline;
  TorusPoint center_{};
  double radius_ = 0.0;
  double diameter_ = 0.0;
  double bounding_radius_ = 0.0;
  double reject_radius2_ = 0.0;
  std::vector<Vec2> vertices_;
};

/// The standard shape ensemble at diameter D, each member at a uniformly
/// random center and orientation. Requires 1 <= D <= side/2.
[[nodiscard]] std::vector<Target> make_ensemble(double D, double side, Rng& rng);

/// Same as make_ensemble but restricted to `shapes` (ensemble order kept).
[[nodiscard]] std::vector<Target> make_ensemble(double D, double side, Rng& rng,
                                                const std::vector<ShapeKind>& shapes);

}  // namespace levysearch

#endif  // LEVYSEARCH_TARGET_HPP
