#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "duelli/config.hpp"
#include "duelli/experiment.hpp"
#include "duelli/validate.hpp"

using namespace duelli;
namespace fs = std::filesystem;

namespace {

std::string write_temp(const std::string& name, const std::string& body) {
  const fs::path dir = fs::temp_directory_path() / "duelli_tests";
  fs::create_directories(dir);
  const fs::path path = dir / name;
  std::ofstream out(path);
  out << body;
  return path.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

constexpr const char* kMinimalConfig =
    "environment = cone_peak:d=1\n"
    "transfer = linear\n"
    "learner = logduelli\n"
    "T = 4096\n"
    "seeds = 1\n";

}  // namespace

TEST_CASE("config parsing: valid, invalid, unknown keys") {
  const ExperimentConfig cfg =
      load_experiment_config(write_temp("minimal.cfg", kMinimalConfig));
  CHECK(cfg.horizon == 4096);
  CHECK(cfg.seeds == std::vector<std::uint64_t>{1});
  CHECK(effective_delta(cfg, cfg.horizon) == doctest::Approx(1.0 / 4096));
  CHECK(effective_zooming_dim(cfg) == 1);

  CHECK_THROWS_WITH_AS(
      load_experiment_config(write_temp(
          "bad_T.cfg", "environment = cone_peak:d=1\ntransfer = linear\n"
                       "learner = logduelli\nT = 1\nseeds = 1\n")),
      doctest::Contains("T"), std::runtime_error);

  CHECK_THROWS_WITH_AS(
      load_experiment_config(write_temp(
          "bad_learner.cfg", "environment = cone_peak:d=1\ntransfer = linear\n"
                             "learner = foo\nT = 100\nseeds = 1\n")),
      doctest::Contains("logduelli, uniform, grid_etc"), std::invalid_argument);

  CHECK_THROWS_WITH_AS(
      load_experiment_config(write_temp(
          "unknown_key.cfg", std::string(kMinimalConfig) + "bogus = 1\n")),
      doctest::Contains("bogus"), std::runtime_error);

  CHECK_THROWS_AS(load_experiment_config(write_temp(
                      "dup_seeds.cfg",
                      "environment = cone_peak:d=1\ntransfer = linear\n"
                      "learner = logduelli\nT = 100\nseeds = 3, 3\n")),
                  std::runtime_error);
  CHECK_THROWS_AS(load_experiment_config("/nonexistent/path.cfg"),
                  std::runtime_error);
}

TEST_CASE("preset id parsing") {
  CHECK(parse_environment("cone_peak:d=2,opt=0.3").optimum() == Point{0.3, 0.3});
  CHECK(parse_environment("ridge:d=2,k=1,opt=0.1/0.9").optimum() ==
        Point{0.1, 0.9});
  CHECK_THROWS_AS(parse_environment("sphere"), std::invalid_argument);
  CHECK_THROWS_AS(parse_environment("cone_peak:d=9"), std::invalid_argument);
  CHECK_THROWS_AS(parse_environment("cone_peak:zzz=1"), std::invalid_argument);

  CHECK(parse_transfer("probit:sigma=2").gamma() ==
        doctest::Approx(0.5 / std::sqrt(2.0 * 3.14159265358979323846)));
  CHECK(parse_transfer("poly:c=0.5,p=1").gamma() == 0.5);
  CHECK_THROWS_AS(parse_transfer("poly:c=0.5,p=0.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_transfer("step"), std::invalid_argument);

  CHECK(parse_learner("grid_etc:K=4,phi=0.25").grid.grid_per_axis == 4);
  CHECK_THROWS_AS(parse_learner("grid_etc:K=1,phi=0.25"), std::invalid_argument);
}

TEST_CASE("sweep config validation") {
  const std::string base =
      "environment = cone_peak:d=1\ntransfer = linear\nlearner = uniform\n"
      "T = 4096\nseeds = 1,2\nreps = 2\n";
  const SweepConfig sweep = load_sweep_config(write_temp(
      "sweep.cfg", base + "horizons = 1024, 2048, 4096, 8192\n"));
  CHECK(sweep.horizons.size() == 4);
  CHECK(sweep.replications == 2);

  CHECK_THROWS_WITH_AS(
      load_sweep_config(write_temp("sweep_short.cfg",
                                   base + "horizons = 1024, 2048, 4096\n")),
      doctest::Contains("horizons"), std::runtime_error);
  CHECK_THROWS_AS(load_sweep_config(write_temp(
                      "sweep_order.cfg",
                      base + "horizons = 1024, 4096, 2048, 8192\n")),
                  std::runtime_error);
}

TEST_CASE("run_experiment writes per-seed traces and a consistent aggregate") {
  const fs::path out = fs::temp_directory_path() / "duelli_tests" / "exp_out";
  fs::remove_all(out);

  ExperimentConfig cfg = load_experiment_config(write_temp(
      "exp.cfg", "environment = cone_peak:d=1\ntransfer = linear\n"
                 "learner = logduelli\nT = 4096\nseeds = 1, 2\nout = " +
                     out.string() + "\n"));
  const ExperimentSummary summary = run_experiment(cfg);

  CHECK(summary.trace_files.size() == 2);
  for (const std::string& f : summary.trace_files) CHECK(fs::exists(f));
  CHECK(fs::exists(summary.aggregate_file));

  CHECK(summary.mean_final_regret ==
        doctest::Approx((summary.final_regrets[0] + summary.final_regrets[1]) / 2)
            .epsilon(1e-9));

  // aggregate mean at t = T equals the arithmetic mean of the per-seed finals
  std::ifstream agg(summary.aggregate_file);
  std::string header, line, last;
  std::getline(agg, header);
  CHECK(header == "t,mean_cum_regret,std_cum_regret");
  while (std::getline(agg, line))
    if (!line.empty()) last = line;
  std::stringstream ss(last);
  std::string t_str, mean_str;
  std::getline(ss, t_str, ',');
  std::getline(ss, mean_str, ',');
  CHECK(std::stoll(t_str) == 4096);
  CHECK(std::stod(mean_str) ==
        doctest::Approx(summary.mean_final_regret).epsilon(1e-9));

  // trace schema: header plus at most T rows
  std::ifstream trace(summary.trace_files[0]);
  std::getline(trace, header);
  CHECK(header == "t,round,depth,cube_id,r_t,cum_regret");
  long long rows = 0;
  while (std::getline(trace, line))
    if (!line.empty()) ++rows;
  CHECK(rows <= 4096);

  // re-running with an identical config is byte-identical
  const std::string before = slurp(summary.trace_files[0]);
  const std::string agg_before = slurp(summary.aggregate_file);
  run_experiment(cfg);
  CHECK(slurp(summary.trace_files[0]) == before);
  CHECK(slurp(summary.aggregate_file) == agg_before);
}

TEST_CASE("checkpoint extraction and sweep seeds") {
  ExperimentConfig cfg;
  cfg.environment_id = "cone_peak:d=1";
  cfg.transfer_id = "linear";
  cfg.learner_id = "uniform";
  cfg.horizon = 1024;
  cfg.seeds = {5};
  const RegretTrace trace = run_replication(cfg, cfg.horizon, 5);
  const auto cps = checkpoint_values(trace, cfg.horizon);
  REQUIRE(cps.size() == 16);
  CHECK(cps.front().first == 64);
  CHECK(cps.back().first == 1024);
  CHECK(cps.back().second == doctest::Approx(trace.cum_regret));

  CHECK(sweep_seed({10, 20}, 0) == 10);
  CHECK(sweep_seed({10, 20}, 1) == 20);
  CHECK(sweep_seed({10, 20}, 3) == 22);
}

TEST_CASE("validate rejects unknown suite ids") {
  CHECK_THROWS_WITH_AS(validate_suite("foo"), doctest::Contains("transfer"),
                       std::invalid_argument);
}

TEST_CASE("fast validation suites pass") {
  for (const char* suite : {"transfer", "sti"}) {
    const auto results = validate_suite(suite);
    CHECK(all_passed(results));
  }
}
