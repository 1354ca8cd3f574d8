#ifndef LEVYSEARCH_WALK_HPP
#define LEVYSEARCH_WALK_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "levysearch/geometry.hpp"
#include "levysearch/rng.hpp"
#include "levysearch/steplaw.hpp"

namespace levysearch {

/// Walk on the unbounded plane. `elapsed` is the path time T(m), the sum of
/// step lengths (unit speed).
struct PlaneWalkState {
  PlanePoint position{};
  std::int64_t step_index = 0;
  double elapsed = 0.0;
};

/// Walk on the torus; positions are kept canonical after every step.
struct TorusWalkState {
  TorusPoint position{};
  std::int64_t step_index = 0;
  double elapsed = 0.0;
};

/// Moves by a step of the given length and direction.
void apply_step(PlaneWalkState& state, double length, double angle);
void apply_step(TorusWalkState& state, double length, double angle);

/// Draws a length, then a uniform direction, from `rng` and applies it.
/// Returns the length drawn.
double step(PlaneWalkState& state, const StepSampler& sampler, Rng& rng);
double step(TorusWalkState& state, const StepSampler& sampler, Rng& rng);

/// Z(0..m) starting at the origin, no wrapping.
[[nodiscard]] std::vector<PlanePoint> run_plane(const WalkSpec& spec, std::int64_t m, Rng& rng);

struct Caps {
  std::int64_t max_steps = std::numeric_limits<std::int64_t>::max();
  double max_time = std::numeric_limits<double>::infinity();
};

enum class CapHit { none, steps, time };

/// Outcome of one simulated search.
struct TrialRecord {
  std::int64_t steps = 0;     ///< m_detect, or the step count at the cap
  double path_time = 0.0;     ///< T(steps)
  bool censored = false;
  CapHit cap = CapHit::none;
  std::uint64_t seed_index = 0;
};

/// Runs the walk from `start`, checking the detector at the initial position
/// and after every step, until detection or a cap.
template <class Detector>
TrialRecord run_until(const StepSampler& sampler, Detector&& detects, const TorusPoint& start,
                      const Caps& caps, Rng& rng) {
  TorusWalkState state{start, 0, 0.0};
  TrialRecord record;
  while (!detects(state.position)) {
    if (state.step_index >= caps.max_steps) {
      record.censored = true;
      record.cap = CapHit::steps;
      break;
    }
    if (state.elapsed >= caps.max_time) {
      record.censored = true;
      record.cap = CapHit::time;
      break;
    }
    step(state, sampler, rng);
  }
  record.steps = state.step_index;
  record.path_time = state.elapsed;
  return record;
}

}  // namespace levysearch

#endif  // LEVYSEARCH_WALK_HPP
