#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "levysearch/stats.hpp"
#include "levysearch/walk.hpp"

using namespace levysearch;

TEST_SUITE("walk") {

TEST_CASE("single steps") {
  PlaneWalkState plane;
  apply_step(plane, 1.0, 0.0);
  CHECK(plane.position.x == doctest::Approx(1.0));
  CHECK(plane.position.y == doctest::Approx(0.0));
  CHECK(plane.elapsed == 1.0);
  CHECK(plane.step_index == 1);

  TorusWalkState torus{wrap({0, 48}, 100), 0, 0.0};
  apply_step(torus, 5.0, std::numbers::pi / 2);
  CHECK(torus.position.x == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(torus.position.y == doctest::Approx(-47.0));
  CHECK(torus.elapsed == 5.0);
}

TEST_CASE("elapsed equals the replayed step lengths") {
  const WalkSpec cauchy = WalkSpec::levy(2, 50);
  const StepSampler sampler(cauchy);
  Rng rng = Rng::stream(42, 0);
  PlaneWalkState state;
  std::vector<double> lengths;
  for (int i = 0; i < 3; ++i) lengths.push_back(step(state, sampler, rng));

  Rng replay = Rng::stream(42, 0);
  double total = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double l = sampler(replay);
    (void)replay.angle();
    CHECK(l == lengths[static_cast<std::size_t>(i)]);
    total += l;
  }
  CHECK(state.elapsed == total);
}

TEST_CASE("elapsed bookkeeping over long walks") {
  const StepSampler sampler(WalkSpec::levy(1.6, 1e4));
  Rng rng(9);
  PlaneWalkState state;
  std::vector<double> lengths;
  for (int i = 0; i < 100000; ++i) lengths.push_back(step(state, sampler, rng));
  CHECK(std::abs(state.elapsed - pairwise_sum(lengths)) <= 1e-9 * state.elapsed);
}

TEST_CASE("run_plane") {
  Rng rng(1);
  const auto empty = run_plane(WalkSpec::levy(2, 50), 0, rng);
  REQUIRE(empty.size() == 1);
  CHECK(empty[0] == Vec2{0, 0});
  const auto path = run_plane(WalkSpec::fixed(1), 10, rng);
  REQUIRE(path.size() == 11);
  for (std::size_t i = 1; i < path.size(); ++i) CHECK((path[i] - path[i - 1]).norm() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS((void)run_plane(WalkSpec::fixed(1), -1, rng), std::domain_error);
}

TEST_CASE("a positive fraction of walks lands beyond m") {
  const StepSampler sampler(WalkSpec::levy(2, 1e4));
  int far = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    Rng rng = Rng::stream(5, static_cast<std::uint64_t>(i));
    PlaneWalkState s;
    for (int k = 0; k < 32; ++k) step(s, sampler, rng);
    far += s.position.norm() >= 32.0;
  }
  CHECK(far / double(n) >= 0.05);
}

TEST_CASE("plane and torus walks agree after wrapping") {
  const StepSampler sampler(WalkSpec::torus_levy(2, 1e4));
  Rng a = Rng::stream(3, 7);
  Rng b = Rng::stream(3, 7);
  PlaneWalkState plane;
  TorusWalkState torus{wrap({0, 0}, 100), 0, 0.0};
  for (int i = 0; i < 10000; ++i) {
    step(plane, sampler, a);
    step(torus, sampler, b);
    const TorusPoint projected = wrap(plane.position, 100);
    REQUIRE(torus_distance(projected, torus.position) <= 1e-9);
  }
  CHECK(plane.elapsed == torus.elapsed);
}

TEST_CASE("angles are isotropic") {
  Rng rng(13);
  double cx = 0.0;
  double cy = 0.0;
  const int n = 1000000;
  for (int i = 0; i < n; ++i) {
    const double t = rng.angle();
    cx += std::cos(t);
    cy += std::sin(t);
  }
  CHECK(std::abs(cx / n) < 3.0 / std::sqrt(double(n)));
  CHECK(std::abs(cy / n) < 3.0 / std::sqrt(double(n)));
}

TEST_CASE("run_until") {
  const StepSampler sampler(WalkSpec::torus_levy(2, 1e4));
  const TorusPoint start = wrap({0, 0}, 100);
  Rng rng(1);

  const TrialRecord hit = run_until(sampler, [](const TorusPoint&) { return true; }, start, Caps{}, rng);
  CHECK(hit.steps == 0);
  CHECK(hit.path_time == 0.0);
  CHECK_FALSE(hit.censored);

  const TrialRecord capped = run_until(sampler, [](const TorusPoint&) { return false; }, start, Caps{100}, rng);
  CHECK(capped.censored);
  CHECK(capped.cap == CapHit::steps);
  CHECK(capped.steps == 100);

  const TrialRecord timed = run_until(sampler, [](const TorusPoint&) { return false; }, start,
                                      Caps{1000000, 50.0}, rng);
  CHECK(timed.cap == CapHit::time);
  CHECK(timed.path_time >= 50.0);
}

TEST_CASE("trials replay bit for bit") {
  const StepSampler sampler(WalkSpec::torus_levy(1.8, 1e4));
  const auto near = [](const TorusPoint& p) { return p.as_vec().norm() <= 3.0; };
  Rng a = Rng::stream(99, 4);
  Rng b = Rng::stream(99, 4);
  const TrialRecord x = run_until(sampler, near, wrap({20, 30}, 100), Caps{}, a);
  const TrialRecord y = run_until(sampler, near, wrap({20, 30}, 100), Caps{}, b);
  CHECK(x.steps == y.steps);
  CHECK(x.path_time == y.path_time);
  CHECK(x.censored == y.censored);
}

}  // TEST_SUITE
