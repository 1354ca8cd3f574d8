#ifndef LEVYSEARCH_CLI_HPP
#define LEVYSEARCH_CLI_HPP

#include <iosfwd>
#include <vector>

#include "levysearch/config.hpp"

namespace levysearch {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRuntime = 3;

/// Default grids of the fig2 command.
[[nodiscard]] const std::vector<double>& fig2_mu_grid();
[[nodiscard]] const std::vector<double>& fig2_D_grid();

/// Runs one experiment and writes its artifacts under config.output.
/// Progress and results go to `out`, errors to `err`. Returns an exit code;
/// files written by a failed run are removed.
int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

}  // namespace levysearch

#endif  // LEVYSEARCH_CLI_HPP
