#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "levysearch/cli.hpp"
#include "levysearch/output.hpp"

using namespace levysearch;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("levysearch_unit_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t data_rows(const std::string& csv) {
  std::size_t lines = 0;
  for (std::size_t i = 0; i + 1 < csv.size(); ++i) lines += csv[i] == '\r' && csv[i + 1] == '\n';
  return lines - 1;
}

int run_quiet(const std::string& text, const std::vector<std::string>& overrides = {}) {
  std::ostringstream out;
  std::ostringstream err;
  return run(parse_config(text, overrides), out, err);
}

}  // namespace

TEST_SUITE("output") {

TEST_CASE("csv quoting") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_field("two\nlines") == "\"two\nlines\"");
  CsvTable t({"x", "y"});
  t.add_row({"1", "a,b"});
  CHECK(t.str() == "x,y\r\n1,\"a,b\"\r\n");
  CHECK_THROWS((void)t.add_row({"1"}));
}

TEST_CASE("reals use 17 significant digits") {
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(format_real(50.0 / 99.0) == "0.50505050505050508");
  CHECK(std::stod(format_real(2.2282944471859323)) == 2.2282944471859323);
  CHECK(format_real(100) == "100");
}

TEST_CASE("detection rows") {
  CsvTable t(detection_columns());
  DetectionRow row{"id", 1e4, WalkSpec::torus_levy(2, 1e4), 10, ShapeKind::disc, 5, {}};
  row.result.time.mean = 2000;
  add_detection_row(t, row);
  const std::string s = t.str();
  CHECK(s.rfind("run_id,n,walk_kind,mu,L,q,ell,D,shape,n_trials,n_censored,mean_time,stderr_time,mean_steps,"
                "stderr_steps,p50_time,p90_time,tau_analytic,ratio_to_opt\r\n", 0) == 0);
  CHECK(s.find("id,10000,levy,2,,,,10,disc,5,0,2000,") != std::string::npos);
  CHECK(s.find(",2\r\n") != std::string::npos);  // ratio_to_opt = 2000 * 10 / 1e4
}

TEST_CASE("run header records the configuration") {
  const ExperimentConfig c = parse_config("walk=two_scales\nL=100\nq=0.1\nseed=12\nworkers=3");
  const std::string j = run_header_json(c, run_id(c), {{"tau", 10.9}});
  CHECK(j.find("\"version\": \"0.1.0\"") != std::string::npos);
  CHECK(j.find("\"master_seed\": 12") != std::string::npos);
  CHECK(j.find("\"workers\": 3") != std::string::npos);
  CHECK(j.find("\"tau\": 10.9") != std::string::npos);
  CHECK(j.find("\"L\": \"100\"") != std::string::npos);
  ExperimentConfig moved = c;
  moved.output = "elsewhere";
  moved.workers = 1;
  CHECK(run_id(moved) == run_id(c));
  moved.seed = 13;
  CHECK(run_id(moved) != run_id(c));
}

TEST_CASE("simulate writes detection.csv and run.json") {
  const fs::path dir = scratch("simulate");
  CHECK(run_quiet("command=simulate\nD=5\nn_trials=30", {"output=" + dir.string()}) == kExitOk);
  CHECK(data_rows(slurp(dir / "detection.csv")) == 5);
  CHECK(fs::exists(dir / "run.json"));
  fs::remove_all(dir);
}

TEST_CASE("two-scales header reports tau") {
  const fs::path dir = scratch("tau");
  CHECK(run_quiet("command=sensitivity\nwalk=two_scales\nL=100\nq=0.1\nn_trials=5\nD_grid=1",
                  {"output=" + dir.string()}) == kExitOk);
  CHECK(slurp(dir / "run.json").find("\"tau\": 10.9") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("sensitivity on a single D equals its ratio") {
  const fs::path dir = scratch("sens");
  REQUIRE(run_quiet("command=sensitivity\nD_grid=1\nn_trials=50", {"output=" + dir.string()}) == kExitOk);
  const std::string csv = slurp(dir / "sensitivity.csv");
  CHECK(data_rows(csv) == 1);
  fs::remove_all(dir);
}

TEST_CASE("fig2 is a full cartesian grid and replays byte for byte") {
  const fs::path a = scratch("fig2a");
  const fs::path b = scratch("fig2b");
  const std::string cfg = "command=fig2\nn_trials=4\nseed=5";
  REQUIRE(run_quiet(cfg, {"output=" + a.string()}) == kExitOk);
  REQUIRE(run_quiet(cfg, {"output=" + b.string()}) == kExitOk);
  const std::string heat = slurp(a / "heatmap.csv");
  CHECK(data_rows(heat) == fig2_mu_grid().size() * fig2_D_grid().size());
  CHECK(heat.rfind("mu,D,ratio_to_opt\r\n", 0) == 0);
  CHECK(data_rows(slurp(a / "mu_sensitivity.csv")) == fig2_mu_grid().size());
  CHECK(heat == slurp(b / "heatmap.csv"));
  CHECK(slurp(a / "mu_sensitivity.csv") == slurp(b / "mu_sensitivity.csv"));
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(a)) files += e.is_regular_file();
  CHECK(files == 3);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("failed runs leave nothing behind") {
  const fs::path dir = scratch("rollback");
  fs::create_directories(dir / "run.json");  // blocks the final write
  CHECK(run_quiet("command=simulate\nD=2\nn_trials=5", {"output=" + dir.string()}) == kExitRuntime);
  CHECK_FALSE(fs::exists(dir / "detection.csv"));
  fs::remove_all(dir);

  CHECK(run_quiet("command=simulate") == kExitConfig);

  const fs::path fresh = scratch("rollback_fresh");
  CHECK(run_quiet("command=verify\nmu=1.5\nchecks=lemma_lb", {"output=" + fresh.string()}) == kExitConfig);
  CHECK_FALSE(fs::exists(fresh));
}

TEST_CASE("verify writes checks.csv and one JSON per check") {
  const fs::path dir = scratch("verify");
  REQUIRE(run_quiet("command=verify\nchecks=lemma_lb,distance\nsamples=20000", {"output=" + dir.string()}) ==
          kExitOk);
  CHECK(data_rows(slurp(dir / "checks.csv")) == 2);
  CHECK(fs::exists(dir / "check_lemma_lb.json"));
  CHECK(fs::exists(dir / "check_distance_claims.json"));
  fs::remove_all(dir);
}

}  // TEST_SUITE
