#ifndef LEVYSEARCH_CALIBRATION_HPP
#define LEVYSEARCH_CALIBRATION_HPP

// Frozen constants for the statistical bound checks. The lemmas only assert
// that such constants exist; these values were calibrated once on small
// runs (1e5 samples, seed 1) and are asserted unchanged at full scale.

namespace levysearch::calibration {

/// Plane cutoff used by the lemma checks.
inline constexpr double kLemmaEllMax = 1.0e4;
/// Probe steps m must satisfy m <= alpha * ell_max.
inline constexpr double kAlpha = 1.0;

/// Lower-bound proxy: annulus [m, kLbOuter * m] ...
inline constexpr double kLbOuter = 20.0;
/// ... holds at least this much mass for every probed m.
inline constexpr double kLbFloor = 0.05;

/// Upper-bound proxy: s(m) = P(|Z(m)| <= rho) / rho^2 * m^2 / ln^2 m.
inline constexpr double kUbMaxSlope = 0.1;
inline constexpr double kUbCeiling = 0.5;
/// Smallest hit count accepted before the probe radius is widened.
inline constexpr double kUbMinHits = 100.0;
/// Widened radius never exceeds m / kUbRadiusFraction.
inline constexpr double kUbRadiusFraction = 8.0;
/// Relative slack for the off-origin comparison.
inline constexpr double kUbOffsetTolerance = 0.05;

/// d = kFarCoefficient * m / ln m reaches w.p. >= 1 - kFarDeficit / m^2.
inline constexpr double kFarCoefficient = 0.1;
inline constexpr double kFarDeficit = 10.0;

/// P(|Z(s)| <= kNearFactor * m) >= kNearDelta for all s <= m.
inline constexpr double kNearFactor = 20.0;
inline constexpr double kNearDelta = 0.95;

/// Projected tail exponent must match mu within this.
inline constexpr double kProjectionTolerance = 0.15;
inline constexpr double kProjectionFitLow = 10.0;

/// Noise budget, in standard errors, for per-bin density comparisons.
inline constexpr double kSigma = 3.0;

}  // namespace levysearch::calibration

#endif  // LEVYSEARCH_CALIBRATION_HPP
