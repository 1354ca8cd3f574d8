#ifndef LEVYSEARCH_RNG_HPP
#define LEVYSEARCH_RNG_HPP

#include <cstdint>
#include <numbers>
#include <random>

namespace levysearch {

/// SplitMix64 finalizer; used only to derive independent stream seeds.
[[nodiscard]] std::uint64_t mix64(std::uint64_t z);

/// Deterministic random stream. Every trial or sample chunk owns one,
/// derived from (master seed, stream index), so results never depend on
/// how work is spread across threads.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Stream `index` of the family rooted at `master`.
  static Rng stream(std::uint64_t master, std::uint64_t index, std::uint64_t salt = 0);

  std::uint64_t next() { return engine_(); }

  /// Uniform on the open interval (0, 1), 53 bits.
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform on [0, 1), 53 bits.
  double uniform_closed_open() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform angle on [0, 2*pi).
  double angle() { return 2.0 * std::numbers::pi * uniform_closed_open(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace levysearch

#endif  // LEVYSEARCH_RNG_HPP
