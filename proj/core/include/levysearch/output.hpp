#ifndef LEVYSEARCH_OUTPUT_HPP
#define LEVYSEARCH_OUTPUT_HPP

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "levysearch/config.hpp"
#include "levysearch/estimator.hpp"
#include "levysearch/theory.hpp"

namespace levysearch {

/// 17 significant digits; round-trips every double.
[[nodiscard]] std::string format_real(double v);

/// RFC 4180 field quoting: fields containing a comma, quote, CR or LF are
/// wrapped in quotes with inner quotes doubled.
[[nodiscard]] std::string csv_field(std::string_view s);

/// Minimal CSV table; rows are joined with CRLF per RFC 4180.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  void add_row(std::vector<std::string> row);
  [[nodiscard]] std::size_t rows() const { return rows_.size(); }
  [[nodiscard]] std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// One row of detection.csv.
struct DetectionRow {
  std::string run_id;
  double n = 0.0;
  WalkSpec spec = WalkSpec::fixed(1.0);
  double D = 0.0;
  ShapeKind shape = ShapeKind::segment;
  std::size_t n_trials = 0;
  DetectionResult result;
};

[[nodiscard]] const std::vector<std::string>& detection_columns();
void add_detection_row(CsvTable& table, const DetectionRow& row);

/// heatmap.csv: mu, D, ratio_to_opt.
[[nodiscard]] const std::vector<std::string>& heatmap_columns();

/// sensitivity.csv: one row per D of a scale-sensitivity report.
[[nodiscard]] CsvTable sensitivity_table(const SensitivityReport& report, const std::string& run_id);

/// mu_sensitivity.csv: mu, phi, phi_stderr, argmax_D, worst_shape, n_censored.
[[nodiscard]] const std::vector<std::string>& mu_sensitivity_columns();

/// checks.csv: one summary row per check.
[[nodiscard]] CsvTable checks_table(const std::vector<BoundCheck>& checks, const std::string& run_id);

/// JSON document for one check.
[[nodiscard]] std::string check_json(const BoundCheck& check, const std::string& run_id);

/// Run header: version, full config, seed, workers, plus extra numeric facts
/// (tau, phi, ...).
[[nodiscard]] std::string run_header_json(const ExperimentConfig& config, const std::string& run_id,
                                          const std::vector<std::pair<std::string, double>>& facts);

/// Stable identifier of a configuration (FNV-1a of its serialized form).
[[nodiscard]] std::string run_id(const ExperimentConfig& config);

/// Library version string.
[[nodiscard]] std::string_view version();

}  // namespace levysearch

#endif  // LEVYSEARCH_OUTPUT_HPP
