#include "levysearch/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace levysearch {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = s.find(',');
    const auto item = trim(s.substr(0, comma));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

double parse_real(std::string_view key, std::string_view text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ConfigError(std::string(key), fmt::format("expected a finite number, got '{}'", text));
  }
  return v;
}

template <class Int>
Int parse_integer(std::string_view key, std::string_view text) {
  Int v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError(std::string(key), fmt::format("expected an integer, got '{}'", text));
  }
  return v;
}

std::vector<double> parse_reals(std::string_view key, std::string_view text) {
  std::vector<double> out;
  for (auto item : split_list(text)) out.push_back(parse_real(key, item));
  if (out.empty()) throw ConfigError(std::string(key), "list is empty");
  return out;
}

std::string real(double v) { return fmt::format("{:.17g}", v); }

std::string join_reals(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + real(v[i]);
  return out;
}

std::string_view to_string(const std::string& s) { return s; }

template <class Seq>
std::string join_names(const Seq& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out += i ? "," : "";
    out += to_string(v[i]);
  }
  return out;
}

WalkKind walk_from_string(std::string_view s) {
  if (s == "levy") return WalkKind::levy;
  if (s == "two_scales") return WalkKind::two_scales;
  if (s == "fixed") return WalkKind::fixed;
  throw ConfigError("walk", fmt::format("unknown walk '{}' (expected levy, two_scales or fixed)", s));
}

void check_mu(std::string_view key, double mu) {
  if (!(mu > 1.0 && mu <= 3.0)) {
    throw ConfigError(std::string(key), fmt::format("must lie in (1,3], got {}", mu));
  }
}

}  // namespace

std::string_view to_string(Command c) {
  switch (c) {
    case Command::simulate: return "simulate";
    case Command::sweep: return "sweep";
    case Command::sensitivity: return "sensitivity";
    case Command::verify: return "verify";
    case Command::fig2: return "fig2";
  }
  return "?";
}

Command command_from_string(std::string_view name) {
  for (Command c : {Command::simulate, Command::sweep, Command::sensitivity, Command::verify, Command::fig2}) {
    if (to_string(c) == name) return c;
  }
  throw ConfigError("command", fmt::format("unknown command '{}'", name));
}

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names = {"radial",   "lemma_lb",   "lemma_ub", "lemma_consistency",
                                                 "distance", "projection", "scaling"};
  return names;
}

void apply_setting(ExperimentConfig& c, std::string_view key, std::string_view value) {
  const std::string k(key);
  value = trim(value);
  if (key == "command") {
    c.command = command_from_string(value);
  } else if (key == "n") {
    c.n = parse_real(key, value);
  } else if (key == "walk") {
    c.walk = walk_from_string(value);
  } else if (key == "mu") {
    c.mu = parse_real(key, value);
    check_mu(key, c.mu);
  } else if (key == "L") {
    c.L = parse_real(key, value);
  } else if (key == "q") {
    c.q = parse_real(key, value);
  } else if (key == "ell") {
    c.ell = parse_real(key, value);
  } else if (key == "ell_max") {
    throw ConfigError(k, "the cutoff is forced to sqrt(n)/2 on the torus and cannot be overridden");
  } else if (key == "D") {
    c.D = parse_real(key, value);
  } else if (key == "D_grid") {
    c.D_grid = parse_reals(key, value);
  } else if (key == "mu_grid") {
    c.mu_grid = parse_reals(key, value);
    for (double mu : c.mu_grid) check_mu(key, mu);
  } else if (key == "shapes") {
    c.shapes.clear();
    for (auto name : split_list(value)) {
      try {
        c.shapes.push_back(shape_from_string(name));
      } catch (const std::invalid_argument&) {
        throw ConfigError(k, fmt::format("unknown shape '{}'", name));
      }
    }
    if (c.shapes.empty()) throw ConfigError(k, "list is empty");
  } else if (key == "n_trials") {
    c.n_trials = parse_integer<std::size_t>(key, value);
  } else if (key == "max_steps") {
    c.max_steps = parse_integer<std::int64_t>(key, value);
  } else if (key == "max_time") {
    c.max_time = parse_real(key, value);
  } else if (key == "cap_factor") {
    c.cap_factor = parse_real(key, value);
  } else if (key == "seed") {
    c.seed = parse_integer<std::uint64_t>(key, value);
  } else if (key == "workers") {
    c.workers = parse_integer<unsigned>(key, value);
  } else if (key == "output") {
    if (value.empty()) throw ConfigError(k, "path is empty");
    c.output = std::string(value);
  } else if (key == "samples") {
    c.samples = parse_integer<std::uint64_t>(key, value);
  } else if (key == "checks") {
    c.checks.clear();
    for (auto name : split_list(value)) {
      const auto& known = known_checks();
      if (std::find(known.begin(), known.end(), name) == known.end()) {
        throw ConfigError(k, fmt::format("unknown check '{}'", name));
      }
      c.checks.emplace_back(name);
    }
  } else {
    throw ConfigError(k, "unknown key");
  }
}

void validate(const ExperimentConfig& c) {
  if (!(c.n > 4.0)) throw ConfigError("n", fmt::format("torus area must exceed 4, got {}", c.n));
  try {
    (void)c.walk_spec();
    for (double mu : c.mu_grid) (void)c.walk_spec(mu);
  } catch (const InvalidSpec& e) {
    const char* key = c.walk == WalkKind::levy ? "mu" : c.walk == WalkKind::fixed ? "ell" : "L";
    if (c.walk == WalkKind::two_scales && !(c.q > 0.0 && c.q < 1.0)) key = "q";
    throw ConfigError(key, e.what());
  }
  const double top = 0.5 * std::sqrt(c.n);
  auto check_D = [&](const char* key, double D) {
    if (!(D > 0.0 && D <= top)) {
      throw ConfigError(key, fmt::format("diameter must lie in (0, sqrt(n)/2={}], got {}", top, D));
    }
  };
  if (c.D) check_D("D", *c.D);
  for (double D : c.D_grid) check_D("D_grid", D);
  if (c.n_trials < 1) throw ConfigError("n_trials", "need at least one trial");
  if (c.max_steps && *c.max_steps < 1) throw ConfigError("max_steps", "must be positive");
  if (c.max_time && !(*c.max_time > 0.0)) throw ConfigError("max_time", "must be positive");
  if (!(c.cap_factor > 0.0)) throw ConfigError("cap_factor", "must be positive");
  if (c.samples < 1) throw ConfigError("samples", "must be positive");
}

WalkSpec ExperimentConfig::walk_spec(std::optional<double> mu_override) const {
  switch (walk) {
    case WalkKind::levy: return WalkSpec::torus_levy(mu_override.value_or(mu), n);
    case WalkKind::two_scales: return WalkSpec::two_scales(L, q);
    case WalkKind::fixed: return WalkSpec::fixed(ell);
  }
  throw ConfigError("walk", "unknown walk");
}

TrialOptions ExperimentConfig::trial_options(double D) const {
  TrialOptions o;
  o.n_trials = n_trials;
  o.master_seed = seed;
  o.workers = workers;
  o.cap_factor = cap_factor;
  if (max_steps || max_time) {
    if (max_steps) o.caps.max_steps = *max_steps;
    if (max_time) o.caps.max_time = *max_time;
  } else {
    o.caps = default_caps(n, D, cap_factor);
  }
  return o;
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::entries() const {
  std::vector<std::pair<std::string, std::string>> e;
  e.emplace_back("command", std::string(to_string(command)));
  e.emplace_back("n", real(n));
  e.emplace_back("walk", to_string(walk));
  switch (walk) {
    case WalkKind::levy: e.emplace_back("mu", real(mu)); break;
    case WalkKind::two_scales:
      e.emplace_back("L", real(L));
      e.emplace_back("q", real(q));
      break;
    case WalkKind::fixed: e.emplace_back("ell", real(ell)); break;
  }
  if (D) e.emplace_back("D", real(*D));
  if (!D_grid.empty()) e.emplace_back("D_grid", join_reals(D_grid));
  if (!mu_grid.empty()) e.emplace_back("mu_grid", join_reals(mu_grid));
  e.emplace_back("shapes", join_names(shapes));
  e.emplace_back("n_trials", std::to_string(n_trials));
  if (max_steps) e.emplace_back("max_steps", std::to_string(*max_steps));
  if (max_time) e.emplace_back("max_time", real(*max_time));
  e.emplace_back("cap_factor", real(cap_factor));
  e.emplace_back("seed", std::to_string(seed));
  e.emplace_back("workers", std::to_string(workers));
  e.emplace_back("output", output);
  e.emplace_back("samples", std::to_string(samples));
  if (!checks.empty()) e.emplace_back("checks", join_names(checks));
  return e;
}

ExperimentConfig parse_config(std::string_view text, const std::vector<std::string>& overrides) {
  ExperimentConfig c;
  auto apply_line = [&](std::string_view line, std::size_t line_no) {
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) return;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(std::string(line), fmt::format("line {}: expected key=value", line_no));
    }
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("", fmt::format("line {}: empty key", line_no));
    apply_setting(c, key, line.substr(eq + 1));
  };
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    apply_line(text.substr(0, nl), line_no);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  for (const std::string& o : overrides) apply_line(o, 0);
  validate(c);
  return c;
}

std::string serialize_config(const ExperimentConfig& config) {
  std::string out;
  for (const auto& [k, v] : config.entries()) out += k + "=" + v + "\n";
  return out;
}

}  // namespace levysearch
