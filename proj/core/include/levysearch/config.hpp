#ifndef LEVYSEARCH_CONFIG_HPP
#define LEVYSEARCH_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "levysearch/estimator.hpp"
#include "levysearch/steplaw.hpp"
#include "levysearch/target.hpp"

namespace levysearch {

enum class Command { simulate, sweep, sensitivity, verify, fig2 };

[[nodiscard]] std::string_view to_string(Command c);
[[nodiscard]] Command command_from_string(std::string_view name);

/// Invalid configuration. `key()` names the offending setting.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key + ": " + message), key_(std::move(key)) {}
  [[nodiscard]] const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct ExperimentConfig {
  Command command = Command::simulate;
  double n = 10000.0;
  WalkKind walk = WalkKind::levy;
  double mu = 2.0;
  double L = 0.0;
  double q = 0.0;
  double ell = 0.0;
  std::optional<double> D;
  std::vector<double> D_grid;
  std::vector<double> mu_grid;
  std::vector<ShapeKind> shapes = ensemble_shapes();
  std::size_t n_trials = 500;
  std::optional<std::int64_t> max_steps;
  std::optional<double> max_time;
  double cap_factor = 200.0;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::string output = "out";
  std::uint64_t samples = 1'000'000;
  std::vector<std::string> checks;

  /// Torus walk for this config; Levy walks use `mu_override` when given.
  [[nodiscard]] WalkSpec walk_spec(std::optional<double> mu_override = std::nullopt) const;
  /// Trial options at diameter D, with caps from max_steps/max_time or the
  /// default policy.
  [[nodiscard]] TrialOptions trial_options(double D) const;
  /// Effective settings as key/value text, in a fixed order.
  [[nodiscard]] std::vector<std::pair<std::string, std::string>> entries() const;
};

/// Checks accepted by `checks=`.
[[nodiscard]] const std::vector<std::string>& known_checks();

/// Applies one key=value setting; throws ConfigError naming the key.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);

/// Cross-field invariants (area, walk parameters, D range).
void validate(const ExperimentConfig& config);

/// Parses "key=value" lines ('#' starts a comment), then applies each
/// override of the same form, then validates.
[[nodiscard]] ExperimentConfig parse_config(std::string_view text,
                                            const std::vector<std::string>& overrides = {});

/// Renders entries() back into the text format accepted by parse_config.
[[nodiscard]] std::string serialize_config(const ExperimentConfig& config);

}  // namespace levysearch

#endif  // LEVYSEARCH_CONFIG_HPP
