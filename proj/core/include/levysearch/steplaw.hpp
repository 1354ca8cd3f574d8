#ifndef LEVYSEARCH_STEPLAW_HPP
#define LEVYSEARCH_STEPLAW_HPP

#include <stdexcept>
#include <string>
#include <variant>

#include "levysearch/rng.hpp"

namespace levysearch {

class InvalidSpec : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class UnsupportedKind : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class WalkKind { levy, two_scales, fixed };

[[nodiscard]] const char* to_string(WalkKind kind);

/// Power-law step lengths: density a on [0,1], a*l^-mu on (1, ell_max).
struct LevyLaw {
  double mu = 2.0;
  double ell_max = 50.0;
};

/// Step of length L with probability q, else 1.
struct TwoScalesLaw {
  double L = 2.0;
  double q = 0.5;
};

/// Every step has length ell.
struct FixedLaw {
  double ell = 1.0;
};

/// Which step-length law a walk uses. Construct through the factories,
/// which validate parameters and snap mu onto 2 or 3 when within 1e-9.
class WalkSpec {
 public:
  static WalkSpec levy(double mu, double ell_max);
  static WalkSpec two_scales(double L, double q);
  static WalkSpec fixed(double ell);

  /// Levy walk on a torus of area n; the cutoff is forced to sqrt(n)/2.
  static WalkSpec torus_levy(double mu, double n);

  [[nodiscard]] WalkKind kind() const;
  [[nodiscard]] const LevyLaw& levy_law() const;
  [[nodiscard]] const TwoScalesLaw& two_scales_law() const;
  [[nodiscard]] const FixedLaw& fixed_law() const;

  /// Largest step length in the support.
  [[nodiscard]] double max_length() const;

  /// Step density is non-increasing in the length (false for two_scales).
  [[nodiscard]] bool has_monotone_density() const;

  [[nodiscard]] std::string describe() const;

 private:
  using Law = std::variant<LevyLaw, TwoScalesLaw, FixedLaw>;
  explicit WalkSpec(Law law) : law_(law) {}
  Law law_;
};

struct StepLawAnalytics {
  double a = 1.0;              ///< normalization (1 for non-Levy laws)
  double tau = 0.0;            ///< mean step length
  double second_moment = 0.0;  ///< E[l^2]
  double variance = 0.0;       ///< second_moment - tau^2
};

/// a = (1 + int_1^ell_max l^-mu dl)^-1. Levy laws only.
[[nodiscard]] double normalization(const WalkSpec& spec);

/// P(step length <= ell). Throws std::domain_error for ell < 0.
[[nodiscard]] double cdf(const WalkSpec& spec, double ell);

/// Inverse of cdf for u in (0, 1]; always lands in (0, max_length()].
[[nodiscard]] double quantile(const WalkSpec& spec, double u);

/// One step length drawn by inversion from a single uniform.
[[nodiscard]] double sample_length(const WalkSpec& spec, Rng& rng);

/// Closed-form moments. Infinite where the cutoff is infinite and the
/// moment diverges.
[[nodiscard]] StepLawAnalytics analytics(const WalkSpec& spec);

/// Precomputed inversion sampler for hot loops. Produces exactly the same
/// values as quantile() for the same uniform.
class StepSampler {
 public:
  explicit StepSampler(const WalkSpec& spec);

  [[nodiscard]] double from_uniform(double u) const;
  double operator()(Rng& rng) const { return from_uniform(rng.uniform()); }

  [[nodiscard]] const WalkSpec& spec() const { return spec_; }

 private:
  WalkSpec spec_;
  WalkKind kind_;
  double a_ = 1.0;
  double inv_a_ = 1.0;
  double mu_minus_one_ = 1.0;
  double inv_exponent_ = -1.0;  // 1 / (1 - mu)
  double ell_max_ = 0.0;
  double long_length_ = 1.0;
  double long_probability_ = 0.0;
  bool cauchy_ = false;
};

}  // namespace levysearch

#endif  // LEVYSEARCH_STEPLAW_HPP
