#include "levysearch/output.hpp"

#include <cmath>

#include <fmt/format.h>
#include <json.hpp>

namespace levysearch {

namespace {

using nlohmann::ordered_json;

std::string integer(std::size_t v) { return std::to_string(v); }

// Fields that do not apply to a walk kind are left empty.
std::string opt_real(bool present, double v) { return present ? format_real(v) : std::string(); }

ordered_json probe_json(const Probe& p) {
  ordered_json j;
  j["label"] = p.label;
  j["x"] = p.x;
  j["statistic"] = p.statistic;
  j["std_error"] = p.std_error;
  j["threshold"] = p.threshold;
  j["passed"] = p.passed;
  return j;
}

}  // namespace

std::string_view version() { return LEVYSEARCH_VERSION; }

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", v);
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != header_.size()) {
    throw std::logic_error(fmt::format("CSV row has {} fields, header has {}", row.size(), header_.size()));
  }
  rows_.push_back(std::move(row));
}

std::string CsvTable::str() const {
  std::string out;
  auto emit = [&out](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out += ',';
      out += csv_field(fields[i]);
    }
    out += "\r\n";
  };
  emit(header_);
  for (const auto& r : rows_) emit(r);
  return out;
}

const std::vector<std::string>& detection_columns() {
  static const std::vector<std::string> cols = {
      "run_id",     "n",         "walk_kind",   "mu",           "L",           "q",        "ell",
      "D",          "shape",     "n_trials",    "n_censored",   "mean_time",   "stderr_time",
      "mean_steps", "stderr_steps", "p50_time", "p90_time",     "tau_analytic", "ratio_to_opt"};
  return cols;
}

void add_detection_row(CsvTable& table, const DetectionRow& row) {
  const WalkKind kind = row.spec.kind();
  const bool levy = kind == WalkKind::levy;
  const bool two = kind == WalkKind::two_scales;
  const bool fixed = kind == WalkKind::fixed;
  const Estimate& t = row.result.time;
  const Estimate& m = row.result.steps;
  table.add_row({row.run_id,
                 format_real(row.n),
                 to_string(kind),
                 opt_real(levy, levy ? row.spec.levy_law().mu : 0.0),
                 opt_real(two, two ? row.spec.two_scales_law().L : 0.0),
                 opt_real(two, two ? row.spec.two_scales_law().q : 0.0),
                 opt_real(fixed, fixed ? row.spec.fixed_law().ell : 0.0),
                 format_real(row.D),
                 std::string(to_string(row.shape)),
                 integer(row.n_trials),
                 integer(t.n_censored),
                 format_real(t.mean),
                 format_real(t.std_error),
                 format_real(m.mean),
                 format_real(m.std_error),
                 format_real(t.p50),
                 format_real(t.p90),
                 format_real(row.result.tau),
                 format_real(ratio_to_opt(t.mean, row.D, row.n))});
}

const std::vector<std::string>& heatmap_columns() {
  static const std::vector<std::string> cols = {"mu", "D", "ratio_to_opt"};
  return cols;
}

const std::vector<std::string>& mu_sensitivity_columns() {
  static const std::vector<std::string> cols = {"mu",          "phi",         "phi_stderr",
                                                "argmax_D",    "worst_shape", "n_censored"};
  return cols;
}

CsvTable sensitivity_table(const SensitivityReport& report, const std::string& run_id) {
  CsvTable table({"run_id", "n", "D", "worst_shape", "reported_shape", "tie", "mean_time", "stderr_time",
                  "n_censored", "ratio_to_opt", "ratio_stderr"});
  for (const SensitivityRow& row : report.per_D) {
    const EnsembleResult& e = row.ensemble;
    const Estimate& t = e.worst_time();
    std::size_t censored = 0;
    for (const auto& s : e.per_shape) censored += s.result.time.n_censored;
    table.add_row({run_id, format_real(report.n), format_real(row.D),
                   std::string(to_string(e.per_shape[e.worst].shape)),
                   std::string(to_string(e.per_shape[e.reported].shape)), e.tie ? "1" : "0",
                   format_real(t.mean), format_real(t.std_error), integer(censored), format_real(row.ratio),
                   format_real(ratio_to_opt(t.std_error, row.D, report.n))});
  }
  return table;
}

CsvTable checks_table(const std::vector<BoundCheck>& checks, const std::string& run_id) {
  CsvTable table({"run_id", "check", "passed", "n_probes", "n_failed_probes", "notes", "criterion"});
  for (const BoundCheck& c : checks) {
    std::size_t failed = 0;
    for (const Probe& p : c.probes) failed += p.passed ? 0 : 1;
    std::string notes;
    for (std::size_t i = 0; i < c.notes.size(); ++i) notes += (i ? "; " : "") + c.notes[i];
    table.add_row({run_id, c.name, c.passed ? "1" : "0", integer(c.probes.size()), integer(failed), notes,
                   c.criterion});
  }
  return table;
}

std::string check_json(const BoundCheck& check, const std::string& run_id) {
  ordered_json j;
  j["run_id"] = run_id;
  j["name"] = check.name;
  j["criterion"] = check.criterion;
  j["passed"] = check.passed;
  j["calibration"] = ordered_json::object();
  for (const auto& [k, v] : check.calibration) j["calibration"][k] = v;
  j["summary"] = ordered_json::object();
  for (const auto& [k, v] : check.summary) j["summary"][k] = v;
  j["probes"] = ordered_json::array();
  for (const Probe& p : check.probes) j["probes"].push_back(probe_json(p));
  j["notes"] = check.notes;
  return j.dump(2) + "\n";
}

std::string run_header_json(const ExperimentConfig& config, const std::string& run_id,
                            const std::vector<std::pair<std::string, double>>& facts) {
  ordered_json j;
  j["version"] = std::string(version());
  j["run_id"] = run_id;
  j["command"] = std::string(to_string(config.command));
  j["master_seed"] = config.seed;
  j["workers"] = config.workers;
  ordered_json cfg = ordered_json::object();
  for (const auto& [k, v] : config.entries()) cfg[k] = v;
  j["config"] = cfg;
  ordered_json f = ordered_json::object();
  for (const auto& [k, v] : facts) f[k] = v;
  j["results"] = f;
  return j.dump(2) + "\n";
}

std::string run_id(const ExperimentConfig& config) {
  // Output location and worker count do not change results.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& [k, v] : config.entries()) {
    if (k == "output" || k == "workers") continue;
    for (char c : k + "=" + v + "\n") {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ULL;
    }
  }
  return fmt::format("{:016x}", h);
}

}  // namespace levysearch
