#include "levysearch/walk.hpp"

#include <stdexcept>
#include <string>

namespace levysearch {

void apply_step(PlaneWalkState& state, double length, double angle) {
  state.position.x += length * std::cos(angle);
  state.position.y += length * std::sin(angle);
  state.elapsed += length;
  ++state.step_index;
}

void apply_step(TorusWalkState& state, double length, double angle) {
  const double side = state.position.side;
  state.position.x = wrap_coordinate(state.position.x + length * std::cos(angle), side);
  state.position.y = wrap_coordinate(state.position.y + length * std::sin(angle), side);
  state.elapsed += length;
  ++state.step_index;
}

double step(PlaneWalkState& state, const StepSampler& sampler, Rng& rng) {
  const double length = sampler(rng);
  apply_step(state, length, rng.angle());
  return length;
}

double step(TorusWalkState& state, const StepSampler& sampler, Rng& rng) {
  const double length = sampler(rng);
  apply_step(state, length, rng.angle());
  return length;
}

std::vector<PlanePoint> run_plane(const WalkSpec& spec, std::int64_t m, Rng& rng) {
  if (m < 0) {
    throw std::domain_error("step count must be >= 0, got " + std::to_string(m));
  }
  const StepSampler sampler(spec);
  std::vector<PlanePoint> path;
  path.reserve(static_cast<std::size_t>(m) + 1);
  PlaneWalkState state;
  path.push_back(state.position);
  for (std::int64_t i = 0; i < m; ++i) {
    step(state, sampler, rng);
    path.push_back(state.position);
  }
  return path;
}

}  // namespace levysearch
