#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "duelli/config.hpp"
#include "duelli/experiment.hpp"
#include "duelli/validate.hpp"

namespace {

void apply_out_dir(duelli::ExperimentConfig& cfg, const std::string& out_flag) {
  if (!out_flag.empty()) {
    cfg.out_dir = out_flag;
  } else if (const char* env = std::getenv("DUELLI_OUT"); env && *env) {
    cfg.out_dir = env;
  }
}

int cmd_run(const std::string& config_path, std::uint64_t seed_offset,
            bool full_trace, const std::string& out_flag) {
  duelli::ExperimentConfig cfg = duelli::load_experiment_config(config_path);
  apply_out_dir(cfg, out_flag);
  const duelli::ExperimentSummary summary =
      duelli::run_experiment(cfg, seed_offset, full_trace);
  std::printf("learner=%s env=%s transfer=%s T=%lld seeds=%zu\n",
              cfg.learner_id.c_str(), cfg.environment_id.c_str(),
              cfg.transfer_id.c_str(), cfg.horizon, summary.seeds.size());
  std::printf("final mean regret: %.6f\n", summary.mean_final_regret);
  std::printf("max stack depth:   %d\n", summary.max_stack_depth);
  for (const std::string& f : summary.trace_files)
    std::printf("trace: %s\n", f.c_str());
  std::printf("aggregate: %s\n", summary.aggregate_file.c_str());
  return 0;
}

int cmd_sweep(const std::string& config_path, std::uint64_t seed_offset,
              const std::string& out_flag) {
  duelli::SweepConfig cfg = duelli::load_sweep_config(config_path);
  apply_out_dir(cfg.base, out_flag);
  const duelli::SweepResult result = duelli::run_sweep(cfg, seed_offset);
  for (const duelli::SweepRow& row : result.rows)
    std::printf("T=%lld mean_final_regret=%.3f std=%.3f\n", row.horizon,
                row.mean_final_regret, row.std_final_regret);
  std::printf("fitted regret exponent: %.4f\n", result.exponent);
  std::printf("sweep csv: %s\n", result.csv_file.c_str());
  return 0;
}

int cmd_validate(const std::string& suite) {
  const auto results = duelli::validate_suite(suite);
  for (const duelli::CheckResult& r : results)
    std::printf("%-32s %12.6g %2s %12.6g  %s\n", r.name.c_str(), r.statistic,
                r.relation.c_str(), r.threshold, r.pass ? "PASS" : "FAIL");
  return duelli::all_passed(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lipschitz dueling-bandit simulation harness"};
  app.require_subcommand(1);

  std::string config_path, suite, out_flag;
  std::uint64_t seed_offset = 0;
  bool full_trace = false;

  CLI::App* run = app.add_subcommand("run", "run one experiment config");
  run->add_option("config", config_path, "experiment config file")->required();
  run->add_option("--seed-offset", seed_offset, "added to every seed");
  run->add_flag("--full-trace", full_trace, "per-duel trace rows");
  run->add_option("--out", out_flag, "output directory");

  CLI::App* sweep = app.add_subcommand("sweep", "horizon sweep + exponent fit");
  sweep->add_option("config", config_path, "sweep config file")->required();
  sweep->add_option("--seed-offset", seed_offset, "added to every seed");
  sweep->add_option("--out", out_flag, "output directory");

  CLI::App* validate =
      app.add_subcommand("validate", "empirical lemma validation suites");
  validate
      ->add_option("suite", suite,
                   "transfer|sti|concentration|no_elim|shrink|memory|all")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path, seed_offset, full_trace, out_flag);
    if (sweep->parsed()) return cmd_sweep(config_path, seed_offset, out_flag);
    return cmd_validate(suite);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
