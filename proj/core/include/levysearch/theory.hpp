#ifndef LEVYSEARCH_THEORY_HPP
#define LEVYSEARCH_THEORY_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "levysearch/calibration.hpp"
#include "levysearch/estimator.hpp"
#include "levysearch/stats.hpp"
#include "levysearch/steplaw.hpp"

namespace levysearch {

/// Sample-generation settings shared by the plane checks.
struct SampleOptions {
  std::uint64_t n_samples = 1'000'000;
  std::uint64_t master_seed = 1;
  unsigned workers = 1;
  std::uint64_t chunk = 1 << 14;
};

/// Histogram of |Z(m)| over equal-width annuli starting at 0.
struct RadialHistogram {
  std::int64_t m = 0;
  double bin_width = 0.0;
  std::vector<std::uint64_t> counts;
  std::uint64_t overflow = 0;
  std::uint64_t n_samples = 0;
  std::vector<double> density;         ///< count / (n_samples * annulus area)
  std::vector<double> density_stderr;  ///< Poisson: sqrt(count) / (n_samples * area)

  [[nodiscard]] double inner(std::size_t i) const { return bin_width * static_cast<double>(i); }
  [[nodiscard]] double outer(std::size_t i) const { return bin_width * static_cast<double>(i + 1); }
};

/// One probe of a bound check: a statistic at a grid point against a threshold.
struct Probe {
  std::string label;
  double x = 0.0;
  double statistic = 0.0;
  double std_error = 0.0;
  double threshold = 0.0;
  bool passed = true;
};

/// Result of an empirical check of an analytic claim. Every check is a pure
/// function of (spec, probe grid, seed).
struct BoundCheck {
  std::string name;
  std::string criterion;
  std::vector<Probe> probes;
  std::map<std::string, double> calibration;
  std::map<std::string, double> summary;
  std::vector<std::string> notes;
  bool passed = false;
};

/// Histograms of |Z(m)| for every m in `m_values`, all taken from the same
/// walks. Rejects laws whose step density is not non-increasing.
[[nodiscard]] std::vector<RadialHistogram> radial_pdf(const WalkSpec& spec,
                                                      const std::vector<std::int64_t>& m_values,
                                                      const std::vector<double>& bin_widths,
                                                      std::size_t n_bins, const SampleOptions& opts);

[[nodiscard]] RadialHistogram radial_pdf(const WalkSpec& spec, std::int64_t m, double bin_width,
                                         std::size_t n_bins, const SampleOptions& opts);

/// Adjacent-bin increases beyond kSigma noise, against the expected count of
/// false alarms for a one-sided kSigma test.
[[nodiscard]] BoundCheck check_radial_monotone(const RadialHistogram& hist);

/// Annulus densities with inner radius >= 1 stay below 1/(pi r_inner^2)
/// up to kSigma standard errors.
[[nodiscard]] BoundCheck check_pdf_ceiling(const RadialHistogram& hist);

/// P(|Z(m)| in [m, 20 m]) >= floor on the grid, plus the m = 1 closed form.
[[nodiscard]] BoundCheck check_lemma_lb(const std::vector<std::int64_t>& m_grid,
                                        const SampleOptions& opts,
                                        double ell_max = calibration::kLemmaEllMax);

/// s(m) = P(|Z(m)| <= rho)/rho^2 * m^2 / ln^2 m has no increasing trend and
/// stays below the frozen ceiling. rho starts at 1 and doubles while fewer
/// than kUbMinHits samples fall inside.
[[nodiscard]] BoundCheck check_lemma_ub(const std::vector<std::int64_t>& m_grid,
                                        const SampleOptions& opts,
                                        double ell_max = calibration::kLemmaEllMax);

/// The lower-bound annulus density never exceeds the upper-bound ceiling.
[[nodiscard]] BoundCheck check_lemma_consistency(const BoundCheck& lb, const BoundCheck& ub);

/// Escape probabilities P(max_{s<=m} |Z(s)| >= d) and confinement
/// P(|Z(s)| <= c m).
[[nodiscard]] BoundCheck check_distance_claims(const WalkSpec& spec, const std::vector<double>& d_grid,
                                               std::int64_t m, const std::vector<std::int64_t>& m_grid,
                                               const SampleOptions& opts);

/// Tail exponent of the first coordinate of a single step, its variance
/// growth between two cutoffs, and sign symmetry.
[[nodiscard]] BoundCheck check_projection(double mu, double ell_max, const SampleOptions& opts,
                                          double ell_max_small = 0.0);

/// Builds the walk used at torus area n.
using SpecFamily = std::function<WalkSpec(double n)>;

struct ScalingOptions {
  std::vector<double> n_grid = {1e3, 1e4, 1e5};
  TrialOptions trials{};
  std::vector<ShapeKind> shapes = ensemble_shapes();
};

/// Fits the slope of ln phi(n) against ln n. `at_least` selects the
/// direction of the pass criterion against `threshold`.
[[nodiscard]] BoundCheck check_lower_bound_scaling(const std::string& name, const SpecFamily& family,
                                                   double threshold, bool at_least,
                                                   const ScalingOptions& opts);

/// Named families: "cauchy", "levy:<mu>", "fixed_quarter" (ell = n^{1/4}),
/// "two_scales_tuned" (L = n^{3/8}, q = L^{-2/3}).
[[nodiscard]] SpecFamily scaling_family(const std::string& name);

/// Mean path time until a step ends at distance >= d from the origin of the
/// plane (secondary statistic, no reference value).
[[nodiscard]] Estimate estimate_time_to_distance(const WalkSpec& spec, double d,
                                                 const SampleOptions& opts);

}  // namespace levysearch

#endif  // LEVYSEARCH_THEORY_HPP
