#ifndef LEVYSEARCH_ESTIMATOR_HPP
#define LEVYSEARCH_ESTIMATOR_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "levysearch/parallel.hpp"
#include "levysearch/rng.hpp"
#include "levysearch/stats.hpp"
#include "levysearch/steplaw.hpp"
#include "levysearch/target.hpp"
#include "levysearch/walk.hpp"

namespace levysearch {

struct TrialOptions {
  std::size_t n_trials = 500;
  Caps caps{};
  std::uint64_t master_seed = 1;
  unsigned workers = 1;
  /// Mixed into every trial stream; lets callers decorrelate experiments.
  std::uint64_t salt = 0;
  /// Factor passed to default_caps when `caps` is left unbounded.
  double cap_factor = 200.0;
};

/// Time cap of factor * (n/D) * ln(n)^3 path-time units, no step cap.
[[nodiscard]] Caps default_caps(double n, double D, double factor = 200.0);

/// Runs opts.n_trials independent searches from uniform random starts.
/// Trial i always uses stream i of the master seed, so the records are
/// identical for any worker count.
template <class Detector>
std::vector<TrialRecord> simulate_trials(const WalkSpec& spec, double side, const Detector& detects,
                                         const TrialOptions& opts) {
  const StepSampler sampler(spec);
  std::vector<TrialRecord> records(opts.n_trials);
  parallel_for(opts.n_trials, opts.workers, [&](std::size_t i) {
    Rng rng = Rng::stream(opts.master_seed, i, opts.salt);
    const double half = 0.5 * side;
    const TorusPoint start = wrap(
        {side * rng.uniform_closed_open() - half, side * rng.uniform_closed_open() - half}, side);
    TrialRecord rec = run_until(sampler, detects, start, opts.caps, rng);
    rec.seed_index = i;
    records[i] = rec;
  });
  return records;
}

/// Time and step-count summaries of one target, plus the Wald cross-check
/// E[T] = tau * E[m].
struct DetectionResult {
  Estimate time;
  Estimate steps;
  double tau = 0.0;
  double wald_gap = 0.0;             ///< mean(T) - tau * mean(m)
  double wald_paired_stderr = 0.0;   ///< stderr of the per-trial T - tau*m
  double wald_combined_stderr = 0.0; ///< sqrt(se_T^2 + tau^2 se_m^2)

  /// |gap| <= k * paired stderr.
  [[nodiscard]] bool wald_consistent(double k = 3.0) const {
    return std::abs(wald_gap) <= k * wald_paired_stderr;
  }
};

[[nodiscard]] DetectionResult summarize_trials(const std::vector<TrialRecord>& records, double tau);

[[nodiscard]] DetectionResult detection_time(const WalkSpec& spec, const Target& target,
                                             const TrialOptions& opts);

struct ShapeResult {
  ShapeKind shape;
  double diameter = 0.0;
  DetectionResult result;
};

/// Per-shape estimates at one diameter; the worst case is the largest mean.
struct EnsembleResult {
  double D = 0.0;
  std::vector<ShapeResult> per_shape;
  std::size_t worst = 0;     ///< index of the largest mean time
  std::size_t reported = 0;  ///< worst, or a segment statistically tied with it
  bool tie = false;          ///< another shape within 2 combined stderr of the worst

  [[nodiscard]] const Estimate& worst_time() const { return per_shape[worst].result.time; }
};

[[nodiscard]] EnsembleResult worst_over_ensemble(const WalkSpec& spec, double n, double D,
                                                 const TrialOptions& opts,
                                                 const std::vector<ShapeKind>& shapes = ensemble_shapes());

/// (D/n) * t, i.e. t relative to the reference n/D.
[[nodiscard]] inline double ratio_to_opt(double mean_time, double D, double n) {
  return mean_time * D / n;
}

struct SensitivityRow {
  double D = 0.0;
  EnsembleResult ensemble;
  double ratio = 0.0;
};

struct SensitivityReport {
  double n = 0.0;
  std::vector<double> D_grid;
  std::vector<SensitivityRow> per_D;
  double phi = 0.0;
  std::size_t argmax = 0;
  unsigned workers = 1;
};

/// Geometric grid 1, 2, 4, ... capped with sqrt(n)/2.
[[nodiscard]] std::vector<double> default_D_grid(double n);

/// phi(n) = max over the grid of (D/n) * worst-over-ensemble detection time.
/// Caps are taken from default_caps(n, D, opts.cap_factor) unless opts.caps
/// is bounded.
[[nodiscard]] SensitivityReport scale_sensitivity(const WalkSpec& spec, double n,
                                                  const std::vector<double>& D_grid,
                                                  const TrialOptions& opts,
                                                  const std::vector<ShapeKind>& shapes = ensemble_shapes());

}  // namespace levysearch

#endif  // LEVYSEARCH_ESTIMATOR_HPP
