#include "levysearch/target.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

namespace levysearch {

namespace {

constexpr std::array<std::string_view, 6> kShapeNames = {
    "segment", "segment_rotated", "disc", "square", "lshape", "polyline"};

Vec2 rotate(Vec2 v, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

void require_center(const TorusPoint& p) {
  if (!(p.side > 2.0) || !std::isfinite(p.x) || !std::isfinite(p.y)) {
    throw std::domain_error("target center must be a finite point on a torus with side > 2");
  }
}

}  // namespace

std::string_view to_string(ShapeKind kind) { return kShapeNames[static_cast<std::size_t>(kind)]; }

ShapeKind shape_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kShapeNames.size(); ++i) {
    if (kShapeNames[i] == name) return static_cast<ShapeKind>(i);
  }
  throw std::invalid_argument(fmt::format("unknown shape '{}'", name));
}

const std::vector<ShapeKind>& ensemble_shapes() {
  static const std::vector<ShapeKind> shapes = {ShapeKind::segment, ShapeKind::segment_rotated,
                                                ShapeKind::disc, ShapeKind::square,
                                                ShapeKind::lshape};
  return shapes;
}

void Target::validate() const {
  const double half = 0.5 * side();
  const bool fits = bounding_radius_ + 1.0 <= half;
  // A disc whose sensing ball reaches every point of the torus is valid at any size.
  const bool covers_all = kind_ == ShapeKind::disc && radius_ + 1.0 >= half * std::numbers::sqrt2;
  if (!fits && !covers_all) {
    throw std::domain_error(fmt::format(
        "target of bounding radius {} does not fit the minimal-image window of a torus of side {}"
        " (need bounding_radius + 1 <= side/2)",
        bounding_radius_, side()));
  }
}

Target Target::disc(const TorusPoint& center, double radius) {
  require_center(center);
  if (!(radius >= 0.0) || !std::isfinite(radius)) {
    throw std::domain_error(fmt::format("disc radius must be finite and >= 0, got {}", radius));
  }
  Target t;
  t.kind_ = ShapeKind::disc;
  t.center_ = center;
  t.radius_ = radius;
  t.diameter_ = 2.0 * radius;
  t.bounding_radius_ = radius;
  t.reject_radius2_ = (radius + 1.0) * (radius + 1.0);
  t.validate();
  return t;
}

Target Target::from_chain(ShapeKind kind, const TorusPoint& anchor, std::vector<Vec2> offsets) {
  require_center(anchor);
  if (offsets.empty()) {
    throw std::domain_error("polyline needs at least one vertex");
  }
  for (const Vec2& v : offsets) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y)) {
      throw InvalidCoordinate("non-finite polyline vertex");
    }
  }
  double lo_x = std::numeric_limits<double>::infinity();
  double lo_y = lo_x;
  double hi_x = -lo_x;
  double hi_y = -lo_x;
  for (const Vec2& v : offsets) {
    lo_x = std::min(lo_x, v.x);
    hi_x = std::max(hi_x, v.x);
    lo_y = std::min(lo_y, v.y);
    hi_y = std::max(hi_y, v.y);
  }
  const Vec2 mid{0.5 * (lo_x + hi_x), 0.5 * (lo_y + hi_y)};

  Target t;
  t.kind_ = kind;
  t.center_ = wrap(anchor.as_vec() + mid, anchor.side);
  t.vertices_.reserve(offsets.size());
  for (const Vec2& v : offsets) {
    t.vertices_.push_back(v - mid);
  }
  for (const Vec2& v : t.vertices_) {
    t.bounding_radius_ = std::max(t.bounding_radius_, v.norm());
  }
  for (std::size_t i = 0; i < t.vertices_.size(); ++i) {
    for (std::size_t j = i + 1; j < t.vertices_.size(); ++j) {
      t.diameter_ = std::max(t.diameter_, (t.vertices_[i] - t.vertices_[j]).norm());
    }
  }
  t.reject_radius2_ = (t.bounding_radius_ + 1.0) * (t.bounding_radius_ + 1.0);
  t.validate();
  return t;
}

Target Target::polyline(const TorusPoint& anchor, std::vector<Vec2> offsets, bool closed) {
  if (closed && offsets.size() > 1) {
    offsets.push_back(offsets.front());
  }
  return from_chain(ShapeKind::polyline, anchor, std::move(offsets));
}

Target Target::segment(const TorusPoint& a, const TorusPoint& b) {
  const Displacement d = torus_displacement(a, b);
  return from_chain(ShapeKind::segment, a, {{0.0, 0.0}, d.as_vec()});
}

Target Target::segment(const TorusPoint& center, double length, double angle) {
  if (!(length >= 0.0)) throw std::domain_error("segment length must be >= 0");
  const Vec2 half = rotate({0.5 * length, 0.0}, angle);
  return from_chain(ShapeKind::segment, center, {Vec2{} - half, half});
}

Target Target::square_perimeter(const TorusPoint& center, double diagonal, double angle) {
  if (!(diagonal >= 0.0)) throw std::domain_error("square diagonal must be >= 0");
  const double h = 0.5 * diagonal / std::numbers::sqrt2;
  std::vector<Vec2> corners = {{-h, -h}, {h, -h}, {h, h}, {-h, h}, {-h, -h}};
  for (Vec2& c : corners) c = rotate(c, angle);
  return from_chain(ShapeKind::square, center, std::move(corners));
}

Target Target::lshape(const TorusPoint& center, double diagonal, double angle) {
  if (!(diagonal >= 0.0)) throw std::domain_error("lshape diagonal must be >= 0");
  const double arm = diagonal / std::numbers::sqrt2;
  std::vector<Vec2> chain = {{arm, 0.0}, {0.0, 0.0}, {0.0, arm}};
  for (Vec2& c : chain) c = rotate(c, angle);
  return from_chain(ShapeKind::lshape, center, std::move(chain));
}

bool Target::detects(const TorusPoint& p) const {
  const Vec2 d{minimal_image(p.x - center_.x, center_.side),
               minimal_image(p.y - center_.y, center_.side)};
  const double r2 = d.norm2();
  if (r2 > reject_radius2_) return false;
  if (kind_ == ShapeKind::disc) return true;
  if (vertices_.size() == 1) return (d - vertices_.front()).norm2() <= 1.0;
  for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) {
    if (point_segment_distance2(d, vertices_[i], vertices_[i + 1]) <= 1.0) return true;
  }
  return false;
}

double Target::distance(const TorusPoint& p) const {
  if (p.side != center_.side) {
    throw DomainMismatch("query point and target live on different tori");
  }
  const Vec2 d{minimal_image(p.x - center_.x, center_.side),
               minimal_image(p.y - center_.y, center_.side)};
  if (kind_ == ShapeKind::disc) return std::max(0.0, d.norm() - radius_);
  if (vertices_.size() == 1) return (d - vertices_.front()).norm();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) {
    best = std::min(best, point_segment_distance2(d, vertices_[i], vertices_[i + 1]));
  }
  return std::sqrt(best);
}

std::vector<Target> make_ensemble(double D, double side, Rng& rng) {
  return make_ensemble(D, side, rng, ensemble_shapes());
}

std::vector<Target> make_ensemble(double D, double side, Rng& rng,
                                  const std::vector<ShapeKind>& shapes) {
  if (!(side > 2.0)) {
    throw std::domain_error(fmt::format("torus side must exceed 2, got {}", side));
  }
  if (!(D >= 1.0 && D <= 0.5 * side)) {
    throw std::domain_error(
        fmt::format("ensemble diameter D={} outside [1, side/2] for side {}", D, side));
  }
  std::vector<Target> out;
  for (ShapeKind kind : ensemble_shapes()) {
    // Placement is drawn for every shape so filtering never shifts the stream.
    const double half = 0.5 * side;
    const TorusPoint center =
        wrap({side * rng.uniform_closed_open() - half, side * rng.uniform_closed_open() - half},
             side);
    const double angle = rng.angle();
    if (std::find(shapes.begin(), shapes.end(), kind) == shapes.end()) continue;
    switch (kind) {
      case ShapeKind::segment:
        out.push_back(Target::segment(center, D, 0.0));
        break;
      case ShapeKind::segment_rotated: {
        Target t = Target::segment(center, D, angle);
        t.kind_ = ShapeKind::segment_rotated;
        out.push_back(std::move(t));
        break;
      }
      case ShapeKind::disc:
        out.push_back(Target::disc(center, 0.5 * D));
        break;
      case ShapeKind::square:
        out.push_back(Target::square_perimeter(center, D, angle));
        break;
      case ShapeKind::lshape:
        out.push_back(Target::lshape(center, D, angle));
        break;
      case ShapeKind::polyline:
        break;
    }
  }
  return out;
}

}  // namespace levysearch
