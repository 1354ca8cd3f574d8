#include "levysearch/steplaw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace levysearch {

namespace {

constexpr double kSnap = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

double snap_mu(double mu) {
  if (std::abs(mu - 2.0) < kSnap) return 2.0;
  if (std::abs(mu - 3.0) < kSnap) return 3.0;
  return mu;
}

// (x^s - 1) / s, continuous through s = 0 where it equals ln x.
double power_difference(double x, double s) {
  const double lx = std::log(x);
  if (s == 0.0) return lx;
  return std::expm1(s * lx) / s;
}

// int_1^ell_max l^-mu dl
double tail_mass(const LevyLaw& law) {
  if (std::isinf(law.ell_max)) return 1.0 / (law.mu - 1.0);
  return power_difference(law.ell_max, 1.0 - law.mu);
}

// int_1^ell_max l^(k - mu) dl for k = 1, 2
double tail_moment(const LevyLaw& law, int k) {
  const double s = static_cast<double>(k + 1) - law.mu;
  if (std::isinf(law.ell_max)) {
    return s < 0.0 ? -1.0 / s : kInf;
  }
  return power_difference(law.ell_max, s);
}

}  // namespace

const char* to_string(WalkKind kind) {
  switch (kind) {
    case WalkKind::levy: return "levy";
    case WalkKind::two_scales: return "two_scales";
    case WalkKind::fixed: return "fixed";
  }
  return "unknown";
}

WalkSpec WalkSpec::levy(double mu, double ell_max) {
  mu = snap_mu(mu);
  if (!(mu > 1.0 && mu <= 3.0)) {
    throw InvalidSpec(fmt::format("mu must lie in (1,3], got {}", mu));
  }
  if (!(ell_max > 1.0)) {
    throw InvalidSpec(fmt::format("ell_max must exceed 1, got {}", ell_max));
  }
  return WalkSpec(LevyLaw{mu, ell_max});
}

WalkSpec WalkSpec::two_scales(double L, double q) {
  if (!(L > 1.0) || !std::isfinite(L)) {
    throw InvalidSpec(fmt::format("L must be finite and exceed 1, got {}", L));
  }
  if (!(q > 0.0 && q < 1.0)) {
    throw InvalidSpec(fmt::format("q must lie in (0,1), got {}", q));
  }
  return WalkSpec(TwoScalesLaw{L, q});
}

WalkSpec WalkSpec::fixed(double ell) {
  if (!(ell >= 1.0) || !std::isfinite(ell)) {
    throw InvalidSpec(fmt::format("fixed step length must be finite and >= 1, got {}", ell));
  }
  return WalkSpec(FixedLaw{ell});
}

WalkSpec WalkSpec::torus_levy(double mu, double n) {
  if (!(n > 4.0)) {
    throw InvalidSpec(fmt::format("torus area n must exceed 4, got {}", n));
  }
  return levy(mu, 0.5 * std::sqrt(n));
}

WalkKind WalkSpec::kind() const { return static_cast<WalkKind>(law_.index()); }

const LevyLaw& WalkSpec::levy_law() const {
  if (const auto* p = std::get_if<LevyLaw>(&law_)) return *p;
  throw UnsupportedKind(fmt::format("expected a levy law, got {}", to_string(kind())));
}

const TwoScalesLaw& WalkSpec::two_scales_law() const {
  if (const auto* p = std::get_if<TwoScalesLaw>(&law_)) return *p;
  throw UnsupportedKind(fmt::format("expected a two_scales law, got {}", to_string(kind())));
}

const FixedLaw& WalkSpec::fixed_law() const {
  if (const auto* p = std::get_if<FixedLaw>(&law_)) return *p;
  throw UnsupportedKind(fmt::format("expected a fixed law, got {}", to_string(kind())));
}

double WalkSpec::max_length() const {
  switch (kind()) {
    case WalkKind::levy: return levy_law().ell_max;
    case WalkKind::two_scales: return two_scales_law().L;
    case WalkKind::fixed: return fixed_law().ell;
  }
  return 0.0;
}

bool WalkSpec::has_monotone_density() const { return kind() != WalkKind::two_scales; }

std::string WalkSpec::describe() const {
  switch (kind()) {
    case WalkKind::levy:
      return fmt::format("levy(mu={}, ell_max={})", levy_law().mu, levy_law().ell_max);
    case WalkKind::two_scales:
      return fmt::format("two_scales(L={}, q={})", two_scales_law().L, two_scales_law().q);
    case WalkKind::fixed:
      return fmt::format("fixed(ell={})", fixed_law().ell);
  }
  return "unknown";
}

double normalization(const WalkSpec& spec) {
  const LevyLaw& law = spec.levy_law();
  return 1.0 / (1.0 + tail_mass(law));
}

double cdf(const WalkSpec& spec, double ell) {
  if (!(ell >= 0.0)) {
    throw std::domain_error(fmt::format("cdf argument must be >= 0, got {}", ell));
  }
  switch (spec.kind()) {
    case WalkKind::levy: {
      const LevyLaw& law = spec.levy_law();
      const double a = normalization(spec);
      if (ell >= law.ell_max) return 1.0;
      if (ell <= 1.0) return a * ell;
      return a * (1.0 + power_difference(ell, 1.0 - law.mu));
    }
    case WalkKind::two_scales: {
      const TwoScalesLaw& law = spec.two_scales_law();
      if (ell < 1.0) return 0.0;
      if (ell < law.L) return 1.0 - law.q;
      return 1.0;
    }
    case WalkKind::fixed:
      return ell < spec.fixed_law().ell ? 0.0 : 1.0;
  }
  return 0.0;
}

double quantile(const WalkSpec& spec, double u) { return StepSampler(spec).from_uniform(u); }

double sample_length(const WalkSpec& spec, Rng& rng) { return StepSampler(spec)(rng); }

StepLawAnalytics analytics(const WalkSpec& spec) {
  StepLawAnalytics out;
  switch (spec.kind()) {
    case WalkKind::levy: {
      const LevyLaw& law = spec.levy_law();
      out.a = normalization(spec);
      out.tau = out.a / 2.0 + out.a * tail_moment(law, 1);
      out.second_moment = out.a / 3.0 + out.a * tail_moment(law, 2);
      break;
    }
    case WalkKind::two_scales: {
      const TwoScalesLaw& law = spec.two_scales_law();
      out.tau = 1.0 - law.q + law.q * law.L;
      out.second_moment = 1.0 - law.q + law.q * law.L * law.L;
      break;
    }
    case WalkKind::fixed: {
      const double ell = spec.fixed_law().ell;
      out.tau = ell;
      out.second_moment = ell * ell;
      break;
    }
  }
  out.variance = std::isfinite(out.second_moment)
                     ? std::max(0.0, out.second_moment - out.tau * out.tau)
                     : kInf;
  return out;
}

StepSampler::StepSampler(const WalkSpec& spec) : spec_(spec), kind_(spec.kind()) {
  switch (kind_) {
    case WalkKind::levy: {
      const LevyLaw& law = spec.levy_law();
      a_ = normalization(spec);
      inv_a_ = 1.0 / a_;
      mu_minus_one_ = law.mu - 1.0;
      inv_exponent_ = 1.0 / (1.0 - law.mu);
      ell_max_ = law.ell_max;
      cauchy_ = law.mu == 2.0;
      break;
    }
    case WalkKind::two_scales:
      long_length_ = spec.two_scales_law().L;
      long_probability_ = spec.two_scales_law().q;
      break;
    case WalkKind::fixed:
      long_length_ = spec.fixed_law().ell;
      break;
  }
}

double StepSampler::from_uniform(double u) const {
  switch (kind_) {
    case WalkKind::levy: {
      if (u <= a_) return u * inv_a_;
      const double excess = u * inv_a_ - 1.0;
      const double base = cauchy_ ? 1.0 - excess : 1.0 - mu_minus_one_ * excess;
      if (base <= 0.0) return ell_max_;
      const double ell = cauchy_ ? 1.0 / base : std::pow(base, inv_exponent_);
      return std::min(ell, ell_max_);
    }
    case WalkKind::two_scales:
      // P(u > 1 - q) = q.
      return u > 1.0 - long_probability_ ? long_length_ : 1.0;
    case WalkKind::fixed:
      return long_length_;
  }
  return 0.0;
}

}  // namespace levysearch
