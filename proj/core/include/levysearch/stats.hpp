#ifndef LEVYSEARCH_STATS_HPP
#define LEVYSEARCH_STATS_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace levysearch {

/// Pairwise (tree) summation in index order; deterministic for a given input.
[[nodiscard]] double pairwise_sum(std::span<const double> values);

/// Monte Carlo summary of one quantity.
struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n_samples = 0;
  std::size_t n_censored = 0;
  double p50 = 0.0;
  double p90 = 0.0;

  /// More than 1% of trials hit a cap: the mean is only a lower bound.
  [[nodiscard]] bool lower_bound_only() const {
    return n_samples == 0 || static_cast<double>(n_censored) >= 0.01 * static_cast<double>(n_samples);
  }
};

/// Mean, standard error of the mean (sample sd / sqrt(n)) and quantiles.
[[nodiscard]] Estimate summarize(std::span<const double> values, std::size_t n_censored = 0);

/// Linear-interpolated quantile of already sorted data, q in [0,1].
[[nodiscard]] double sorted_quantile(std::span<const double> sorted, double q);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::size_t points = 0;
};

/// Ordinary least squares y = intercept + slope * x.
[[nodiscard]] LinearFit least_squares(std::span<const double> x, std::span<const double> y);

/// least_squares on (ln x, ln y).
[[nodiscard]] LinearFit log_log_fit(std::span<const double> x, std::span<const double> y);

}  // namespace levysearch

#endif  // LEVYSEARCH_STATS_HPP
