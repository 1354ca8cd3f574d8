#include "levysearch/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

namespace levysearch {

namespace {

bool is_segment(ShapeKind k) { return k == ShapeKind::segment || k == ShapeKind::segment_rotated; }

void require_area(double n) {
  if (!(n > 4.0) || !std::isfinite(n)) {
    throw std::domain_error(fmt::format("torus area n must be finite and > 4, got {}", n));
  }
}

}  // namespace

Caps default_caps(double n, double D, double factor) {
  const double log_n = std::log(n);
  Caps caps;
  caps.max_time = factor * (n / std::max(D, 1.0)) * log_n * log_n * log_n;
  return caps;
}

DetectionResult summarize_trials(const std::vector<TrialRecord>& records, double tau) {
  std::vector<double> times(records.size());
  std::vector<double> steps(records.size());
  std::vector<double> gaps(records.size());
  std::size_t censored = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    times[i] = records[i].path_time;
    steps[i] = static_cast<double>(records[i].steps);
    gaps[i] = times[i] - tau * steps[i];
    censored += records[i].censored ? 1 : 0;
  }
  DetectionResult r;
  r.tau = tau;
  r.time = summarize(times, censored);
  r.steps = summarize(steps, censored);
  const Estimate gap = summarize(gaps, censored);
  r.wald_gap = gap.mean;
  r.wald_paired_stderr = gap.std_error;
  r.wald_combined_stderr = std::hypot(r.time.std_error, tau * r.steps.std_error);
  return r;
}

DetectionResult detection_time(const WalkSpec& spec, const Target& target,
                               const TrialOptions& opts) {
  if (opts.n_trials < 1) {
    throw std::domain_error("detection_time needs at least one trial");
  }
  const auto detector = [&target](const TorusPoint& p) { return target.detects(p); };
  const auto records = simulate_trials(spec, target.side(), detector, opts);
  return summarize_trials(records, analytics(spec).tau);
}

EnsembleResult worst_over_ensemble(const WalkSpec& spec, double n, double D,
                                   const TrialOptions& opts, const std::vector<ShapeKind>& shapes) {
  require_area(n);
  const double side = std::sqrt(n);
  Rng placement = Rng::stream(opts.master_seed, 0, 0x7a7267657473ULL ^ opts.salt);
  const std::vector<Target> targets = make_ensemble(D, side, placement, shapes);
  if (targets.empty()) {
    throw std::invalid_argument("shape filter selects no ensemble member");
  }

  EnsembleResult out;
  out.D = D;
  for (const Target& t : targets) {
    out.per_shape.push_back({t.kind(), t.diameter(), detection_time(spec, t, opts)});
  }
  for (std::size_t i = 1; i < out.per_shape.size(); ++i) {
    if (out.per_shape[i].result.time.mean > out.per_shape[out.worst].result.time.mean) {
      out.worst = i;
    }
  }
  out.reported = out.worst;
  const Estimate& top = out.worst_time();
  for (std::size_t i = 0; i < out.per_shape.size(); ++i) {
    if (i == out.worst) continue;
    const Estimate& other = out.per_shape[i].result.time;
    const double band = 2.0 * std::hypot(top.std_error, other.std_error);
    if (top.mean - other.mean <= band) {
      out.tie = true;
      if (is_segment(out.per_shape[i].shape) && !is_segment(out.per_shape[out.reported].shape)) {
        out.reported = i;
      }
    }
  }
  return out;
}

std::vector<double> default_D_grid(double n) {
  require_area(n);
  const double top = 0.5 * std::sqrt(n);
  std::vector<double> grid;
  for (double d = 1.0; d < top; d *= 2.0) grid.push_back(d);
  grid.push_back(std::max(1.0, top));
  return grid;
}

SensitivityReport scale_sensitivity(const WalkSpec& spec, double n,
                                    const std::vector<double>& D_grid, const TrialOptions& opts,
                                    const std::vector<ShapeKind>& shapes) {
  require_area(n);
  if (D_grid.empty()) throw std::domain_error("D grid is empty");
  const double top = 0.5 * std::sqrt(n);
  SensitivityReport report;
  report.n = n;
  report.D_grid = D_grid;
  report.workers = opts.workers;
  for (double D : D_grid) {
    if (!(D >= 1.0 && D <= top)) {
      throw std::domain_error(fmt::format("D={} outside [1, sqrt(n)/2={}]", D, top));
    }
    TrialOptions cell = opts;
    if (std::isinf(cell.caps.max_time) &&
        cell.caps.max_steps == std::numeric_limits<std::int64_t>::max()) {
      cell.caps = default_caps(n, D, cell.cap_factor);
    }
    SensitivityRow row;
    row.D = D;
    row.ensemble = worst_over_ensemble(spec, n, D, cell, shapes);
    row.ratio = ratio_to_opt(row.ensemble.worst_time().mean, D, n);
    report.per_D.push_back(std::move(row));
  }
  for (std::size_t i = 1; i < report.per_D.size(); ++i) {
    if (report.per_D[i].ratio > report.per_D[report.argmax].ratio) report.argmax = i;
  }
  report.phi = report.per_D[report.argmax].ratio;
  return report;
}

}  // namespace levysearch
