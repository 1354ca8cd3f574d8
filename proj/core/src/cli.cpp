#include "levysearch/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "levysearch/output.hpp"
#include "levysearch/theory.hpp"

namespace levysearch {

namespace fs = std::filesystem;

namespace {

// Tracks every file a run creates so a failed run can be rolled back.
class Artifacts {
 public:
  explicit Artifacts(fs::path dir) : dir_(std::move(dir)) {}

  void write(const std::string& name, const std::string& content) {
    if (!fs::exists(dir_)) {
      fs::create_directories(dir_);
      created_dir_ = true;
    }
    const fs::path p = dir_ / name;
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error(fmt::format("cannot open {} for writing", p.string()));
    written_.push_back(p);
    f << content;
    if (!f.flush()) throw std::runtime_error(fmt::format("write to {} failed", p.string()));
  }

  void roll_back() noexcept {
    std::error_code ec;
    for (const fs::path& p : written_) fs::remove(p, ec);
    if (created_dir_ && fs::is_empty(dir_, ec)) fs::remove(dir_, ec);
    written_.clear();
  }

 private:
  fs::path dir_;
  std::vector<fs::path> written_;
  bool created_dir_ = false;
};

using Facts = std::vector<std::pair<std::string, double>>;

std::vector<double> mu_values(const ExperimentConfig& c) {
  if (c.walk != WalkKind::levy) return {c.mu};
  return c.mu_grid.empty() ? std::vector<double>{c.mu} : c.mu_grid;
}

std::vector<double> sweep_D_values(const ExperimentConfig& c) {
  if (!c.D_grid.empty()) return c.D_grid;
  if (c.D) return {*c.D};
  return default_D_grid(c.n);
}

// Diameters below 1 are run and reported in the D = 1 bucket.
double bucket(double D) { return std::max(D, 1.0); }

EnsembleResult run_ensemble(const ExperimentConfig& c, const WalkSpec& spec, double D) {
  return worst_over_ensemble(spec, c.n, bucket(D), c.trial_options(bucket(D)), c.shapes);
}

void add_rows(CsvTable& table, const ExperimentConfig& c, const std::string& id, const WalkSpec& spec,
              const EnsembleResult& e) {
  for (const ShapeResult& s : e.per_shape) {
    add_detection_row(table, {id, c.n, spec, e.D, s.shape, c.n_trials, s.result});
  }
}

void print_ensemble(std::ostream& out, const EnsembleResult& e) {
  for (const ShapeResult& s : e.per_shape) {
    const Estimate& t = s.result.time;
    fmt::print(out, "  {:<16} mean_time={:.6g} +- {:.3g}  steps={:.6g}  censored={}\n", to_string(s.shape),
               t.mean, t.std_error, s.result.steps.mean, t.n_censored);
  }
}

Facts simulate(const ExperimentConfig& c, const std::string& id, Artifacts& art, std::ostream& out) {
  if (!c.D) throw ConfigError("D", "simulate needs a diameter");
  const WalkSpec spec = c.walk_spec();
  const EnsembleResult e = run_ensemble(c, spec, *c.D);
  CsvTable table(detection_columns());
  add_rows(table, c, id, spec, e);
  art.write("detection.csv", table.str());

  const Estimate& worst = e.worst_time();
  fmt::print(out, "{} on n={} D={}\n", spec.describe(), c.n, e.D);
  print_ensemble(out, e);
  fmt::print(out, "worst: {} mean_time={:.6g} +- {:.3g} ratio_to_opt={:.6g}\n",
             to_string(e.per_shape[e.worst].shape), worst.mean, worst.std_error,
             ratio_to_opt(worst.mean, e.D, c.n));
  return {{"tau", analytics(spec).tau},
          {"mean_time", worst.mean},
          {"stderr_time", worst.std_error},
          {"ratio_to_opt", ratio_to_opt(worst.mean, e.D, c.n)}};
}

Facts sweep(const ExperimentConfig& c, const std::string& id, Artifacts& art, std::ostream& out) {
  CsvTable table(detection_columns());
  for (double mu : mu_values(c)) {
    const WalkSpec spec = c.walk_spec(mu);
    for (double D : sweep_D_values(c)) {
      const EnsembleResult e = run_ensemble(c, spec, D);
      add_rows(table, c, id, spec, e);
      fmt::print(out, "{} D={}: worst {} ratio_to_opt={:.6g}\n", spec.describe(), e.D,
                 to_string(e.per_shape[e.worst].shape), ratio_to_opt(e.worst_time().mean, e.D, c.n));
    }
  }
  art.write("detection.csv", table.str());
  return {{"rows", static_cast<double>(table.rows())}};
}

TrialOptions sensitivity_options(const ExperimentConfig& c) {
  TrialOptions o = c.trial_options(1.0);
  if (!c.max_steps && !c.max_time) o.caps = Caps{};  // per-D defaults inside scale_sensitivity
  return o;
}

Facts sensitivity(const ExperimentConfig& c, const std::string& id, Artifacts& art, std::ostream& out) {
  const WalkSpec spec = c.walk_spec();
  std::vector<double> grid = c.D_grid.empty() ? default_D_grid(c.n) : c.D_grid;
  for (double& D : grid) D = bucket(D);
  const SensitivityReport rep = scale_sensitivity(spec, c.n, grid, sensitivity_options(c), c.shapes);
  art.write("sensitivity.csv", sensitivity_table(rep, id).str());
  const SensitivityRow& top = rep.per_D[rep.argmax];
  fmt::print(out, "{} on n={}: phi={:.6g} at D={} ({})\n", spec.describe(), c.n, rep.phi, top.D,
             to_string(top.ensemble.per_shape[top.ensemble.worst].shape));
  return {{"tau", analytics(spec).tau}, {"phi", rep.phi}, {"argmax_D", top.D}};
}

WalkSpec plane_spec(const ExperimentConfig& c) {
  switch (c.walk) {
    case WalkKind::levy: return WalkSpec::levy(c.mu, calibration::kLemmaEllMax);
    case WalkKind::fixed: return WalkSpec::fixed(c.ell);
    case WalkKind::two_scales: return WalkSpec::two_scales(c.L, c.q);
  }
  throw ConfigError("walk", "unknown walk");
}

BoundCheck scaling_check(const ExperimentConfig& c) {
  ScalingOptions so;
  so.trials = sensitivity_options(c);
  so.shapes = c.shapes;
  switch (c.walk) {
    case WalkKind::levy:
      if (std::abs(c.mu - 2.0) < 1e-9) return check_lower_bound_scaling("cauchy", scaling_family("cauchy"), 0.1, false, so);
      return check_lower_bound_scaling(fmt::format("levy_mu{}", c.mu), scaling_family(fmt::format("levy:{}", c.mu)),
                                       std::abs(c.mu - 2.0) / 2.0 - 0.1, true, so);
    case WalkKind::fixed:
      return check_lower_bound_scaling("fixed_quarter", scaling_family("fixed_quarter"), 0.15, true, so);
    case WalkKind::two_scales:
      return check_lower_bound_scaling("two_scales_tuned", scaling_family("two_scales_tuned"), 0.05, true, so);
  }
  throw ConfigError("walk", "unknown walk");
}

Facts verify(const ExperimentConfig& c, const std::string& id, Artifacts& art, std::ostream& out) {
  std::vector<std::string> wanted = c.checks;
  if (wanted.empty()) wanted = {"radial", "lemma_lb", "lemma_ub", "lemma_consistency", "distance", "projection"};
  auto wants = [&](const char* name) { return std::find(wanted.begin(), wanted.end(), name) != wanted.end(); };
  const bool cauchy = c.walk == WalkKind::levy && std::abs(c.mu - 2.0) < 1e-9;
  if ((wants("lemma_lb") || wants("lemma_ub") || wants("lemma_consistency")) && !cauchy) {
    throw ConfigError("checks", "lemma checks are defined for walk=levy with mu=2");
  }
  if (wants("radial") && c.walk == WalkKind::two_scales) {
    throw ConfigError("checks", "radial needs a non-increasing step density; walk=two_scales has none");
  }
  if (wants("projection") && c.walk != WalkKind::levy) {
    throw ConfigError("checks", "projection is defined for walk=levy");
  }

  SampleOptions so;
  so.n_samples = c.samples;
  so.master_seed = c.seed;
  so.workers = c.workers;

  std::vector<BoundCheck> results;
  if (wants("radial")) {
    const auto hists = radial_pdf(plane_spec(c), std::vector<std::int64_t>{1, 8, 32},
                                  std::vector<double>{0.25, 1.0, 4.0}, 200, so);
    for (const auto& h : hists) {
      results.push_back(check_radial_monotone(h));
      results.push_back(check_pdf_ceiling(h));
    }
  }
  std::optional<BoundCheck> lb;
  std::optional<BoundCheck> ub;
  if (wants("lemma_lb") || wants("lemma_consistency")) lb = check_lemma_lb({8, 32, 128}, so);
  if (wants("lemma_ub") || wants("lemma_consistency")) ub = check_lemma_ub({8, 16, 32, 64, 128, 256, 512}, so);
  if (wants("lemma_lb")) results.push_back(*lb);
  if (wants("lemma_ub")) results.push_back(*ub);
  if (wants("lemma_consistency")) results.push_back(check_lemma_consistency(*lb, *ub));
  if (wants("distance")) {
    results.push_back(check_distance_claims(plane_spec(c), {1, 2, 4, 8, 16}, 128, {8, 32, 128}, so));
  }
  if (wants("projection")) results.push_back(check_projection(c.mu, calibration::kLemmaEllMax, so));
  if (wants("scaling")) results.push_back(scaling_check(c));

  std::size_t passed = 0;
  for (const BoundCheck& r : results) {
    passed += r.passed ? 1 : 0;
    fmt::print(out, "{:<28} {}\n", r.name, r.passed ? "pass" : "FAIL");
    art.write(fmt::format("check_{}.json", r.name), check_json(r, id));
  }
  art.write("checks.csv", checks_table(results, id).str());
  return {{"checks", static_cast<double>(results.size())}, {"passed", static_cast<double>(passed)}};
}

Facts fig2(const ExperimentConfig& c, const std::string& id, Artifacts& art, std::ostream& out) {
  (void)id;
  if (c.walk != WalkKind::levy) throw ConfigError("walk", "fig2 sweeps Levy exponents; set walk=levy");
  if (std::find(c.shapes.begin(), c.shapes.end(), ShapeKind::square) == c.shapes.end()) {
    throw ConfigError("shapes", "fig2 needs the square for the heat map");
  }
  const std::vector<double> mus = c.mu_grid.empty() ? fig2_mu_grid() : c.mu_grid;
  const std::vector<double> Ds = c.D_grid.empty() ? fig2_D_grid() : c.D_grid;

  CsvTable heat(heatmap_columns());
  CsvTable curve(mu_sensitivity_columns());
  double best_phi = std::numeric_limits<double>::infinity();
  double best_mu = 0.0;
  for (double mu : mus) {
    const WalkSpec spec = c.walk_spec(mu);
    double phi = -1.0;
    double phi_se = 0.0;
    double arg_D = 0.0;
    ShapeKind arg_shape = ShapeKind::segment;
    std::size_t censored = 0;
    for (double D : Ds) {
      const EnsembleResult e = run_ensemble(c, spec, D);
      for (const ShapeResult& s : e.per_shape) {
        censored += s.result.time.n_censored;
        if (s.shape == ShapeKind::square) {
          heat.add_row({format_real(mu), format_real(e.D), format_real(ratio_to_opt(s.result.time.mean, e.D, c.n))});
        }
      }
      const double ratio = ratio_to_opt(e.worst_time().mean, e.D, c.n);
      if (ratio > phi) {
        phi = ratio;
        phi_se = ratio_to_opt(e.worst_time().std_error, e.D, c.n);
        arg_D = e.D;
        arg_shape = e.per_shape[e.worst].shape;
      }
    }
    curve.add_row({format_real(mu), format_real(phi), format_real(phi_se), format_real(arg_D),
                   std::string(to_string(arg_shape)), std::to_string(censored)});
    fmt::print(out, "mu={:<4} phi={:.6g} +- {:.3g} (D={}, {})\n", mu, phi, phi_se, arg_D, to_string(arg_shape));
    if (phi < best_phi) {
      best_phi = phi;
      best_mu = mu;
    }
  }
  art.write("mu_sensitivity.csv", curve.str());
  art.write("heatmap.csv", heat.str());
  fmt::print(out, "argmin mu={} phi={:.6g}\n", best_mu, best_phi);
  return {{"argmin_mu", best_mu}, {"min_phi", best_phi}};
}

}  // namespace

const std::vector<double>& fig2_mu_grid() {
  static const std::vector<double> grid = {1.2, 1.4, 1.6, 1.8, 2.0, 2.2, 2.4, 2.6, 2.8, 3.0};
  return grid;
}

const std::vector<double>& fig2_D_grid() {
  static const std::vector<double> grid = {1, 2, 3, 5, 8, 12, 18, 25, 35, 50};
  return grid;
}

int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  Artifacts art(config.output);
  try {
    validate(config);
    const std::string id = run_id(config);
    Facts facts;
    switch (config.command) {
      case Command::simulate: facts = simulate(config, id, art, out); break;
      case Command::sweep: facts = sweep(config, id, art, out); break;
      case Command::sensitivity: facts = sensitivity(config, id, art, out); break;
      case Command::verify: facts = verify(config, id, art, out); break;
      case Command::fig2: facts = fig2(config, id, art, out); break;
    }
    if (config.command != Command::simulate) {
      facts.insert(facts.begin(), {"tau", analytics(config.walk_spec()).tau});
    }
    art.write("run.json", run_header_json(config, id, facts));
    return kExitOk;
  } catch (const ConfigError& e) {
    art.roll_back();
    fmt::print(err, "config error: {}\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    art.roll_back();
    fmt::print(err, "error: {}\n", e.what());
    return kExitRuntime;
  }
}

}  // namespace levysearch
