#include <doctest.h>

#include <cmath>
#include <limits>

#include "levysearch/geometry.hpp"
#include "levysearch/rng.hpp"

using namespace levysearch;

namespace {

// Minimum plane distance over the 9 translates of q.
double brute_torus_distance(const TorusPoint& p, const TorusPoint& q) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = -1; i <= 1; ++i) {
    for (int j = -1; j <= 1; ++j) {
      best = std::min(best, std::hypot(q.x + i * p.side - p.x, q.y + j * p.side - p.y));
    }
  }
  return best;
}

TorusPoint random_point(Rng& rng, double side) {
  return wrap({side * rng.uniform_closed_open(), side * rng.uniform_closed_open()}, side);
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("wrap examples") {
  CHECK(wrap({0, 0}, 100) == TorusPoint{0, 0, 100});
  CHECK(wrap({51, 0}, 100) == TorusPoint{-49, 0, 100});
  const TorusPoint p = wrap({-150.5, 250}, 100);
  CHECK(p.x == doctest::Approx(49.5));
  CHECK(p.y == doctest::Approx(-50.0));
  // Canonical interval is half open.
  CHECK(wrap({50, -50}, 100) == TorusPoint{-50, -50, 100});
}

TEST_CASE("wrap agrees with the input modulo side") {
  Rng rng(7);
  for (int i = 0; i < 10000; ++i) {
    const double x = 1e4 * (rng.uniform() - 0.5);
    const double y = 1e4 * (rng.uniform() - 0.5);
    const TorusPoint p = wrap({x, y}, 37.5);
    CHECK(p.x >= -18.75);
    CHECK(p.x < 18.75);
    const double kx = (x - p.x) / 37.5;
    const double ky = (y - p.y) / 37.5;
    CHECK(std::abs(kx - std::round(kx)) < 1e-9);
    CHECK(std::abs(ky - std::round(ky)) < 1e-9);
  }
}

TEST_CASE("wrap is idempotent") {
  Rng rng(11);
  for (int i = 0; i < 10000; ++i) {
    const Vec2 raw{1e6 * (rng.uniform() - 0.5), 1e3 * (rng.uniform() - 0.5)};
    const TorusPoint once = wrap(raw, 100);
    CHECK(wrap(once.as_vec(), 100) == once);
  }
}

TEST_CASE("wrap rejects bad input") {
  CHECK_THROWS_AS((void)wrap({std::nan(""), 0}, 100), InvalidCoordinate);
  CHECK_THROWS_AS((void)wrap({std::numeric_limits<double>::infinity(), 0}, 100), InvalidCoordinate);
  CHECK_THROWS((void)wrap({0, 0}, 2.0));
}

TEST_CASE("torus distance examples") {
  CHECK(torus_distance({49.9, 0, 100}, {-49.9, 0, 100}) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(torus_distance({0, 0, 100}, {3, 4, 100}) == doctest::Approx(5.0));
  CHECK(torus_distance({-49, -49, 100}, {49, 49, 100}) == doctest::Approx(std::sqrt(8.0)));
  CHECK_THROWS_AS((void)torus_distance({0, 0, 100}, {0, 0, 50}), DomainMismatch);
}

TEST_CASE("torus distance matches the 9-translate oracle") {
  Rng rng(3);
  for (int i = 0; i < 10000; ++i) {
    const TorusPoint p = random_point(rng, 100);
    const TorusPoint q = random_point(rng, 100);
    const double d = torus_distance(p, q);
    CHECK(std::abs(d - brute_torus_distance(p, q)) <= 1e-9);
    CHECK(d <= 100 / std::sqrt(2.0) + 1e-9);
    CHECK(d == torus_distance(q, p));
  }
}

TEST_CASE("torus distance triangle inequality") {
  Rng rng(5);
  for (int i = 0; i < 10000; ++i) {
    const TorusPoint a = random_point(rng, 31);
    const TorusPoint b = random_point(rng, 31);
    const TorusPoint c = random_point(rng, 31);
    CHECK(torus_distance(a, c) <= torus_distance(a, b) + torus_distance(b, c) + 1e-9);
  }
}

TEST_CASE("point to segment distance") {
  CHECK(point_segment_distance(Vec2{0, 2}, {-1, 0}, {1, 0}) == doctest::Approx(2.0));
  CHECK(point_segment_distance(Vec2{3, 0}, {-1, 0}, {1, 0}) == doctest::Approx(2.0));
  CHECK(point_segment_distance(Vec2{1, 1}, {0, 0}, {2, 2}) == doctest::Approx(0.0));
  CHECK(point_segment_distance(Vec2{3, 4}, {0, 0}, {0, 0}) == doctest::Approx(5.0));
}

TEST_CASE("segment distance across the seam") {
  // Segment around x = 49 on a side-100 torus, query just across the seam.
  const double d = point_segment_distance(TorusPoint{-49.5, 0.5, 100}, {48, 0}, {50, 0}, 100);
  CHECK(d == doctest::Approx(std::sqrt(0.5)));
}

}  // TEST_SUITE
