#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "duelli/config.hpp"
#include "duelli/learner.hpp"

namespace duelli {

// One seeded replication of the configured learner at horizon T.
RegretTrace run_replication(const ExperimentConfig& cfg, long long T,
                            std::uint64_t seed, bool full_trace = false,
                            const LearnerHooks& hooks = {});

struct ExperimentSummary {
  std::vector<std::uint64_t> seeds;
  std::vector<double> final_regrets;
  double mean_final_regret = 0.0;
  int max_stack_depth = 0;
  std::vector<std::string> trace_files;
  std::string aggregate_file;
};

// Runs all seeds, writes one trace CSV per seed plus an aggregate CSV with
// mean/std of cumulative regret at the 16 checkpoints.
ExperimentSummary run_experiment(const ExperimentConfig& cfg,
                                 std::uint64_t seed_offset = 0,
                                 bool full_trace = false,
                                 bool write_csv = true);

struct SweepRow {
  long long horizon = 0;
  double mean_final_regret = 0.0;
  double std_final_regret = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  double exponent = 0.0;  // least-squares slope of log2 R(T) vs log2 T
  std::string csv_file;
};

SweepResult run_sweep(const SweepConfig& cfg, std::uint64_t seed_offset = 0,
                      bool write_csv = true);

// Cumulative regret at the checkpoint times k*T/16, extracted from a trace.
std::vector<std::pair<long long, double>> checkpoint_values(
    const RegretTrace& trace, long long T);

// Seed used for replication j of a sweep: the config's j-th listed seed when
// available, otherwise consecutive values past the last listed seed.
std::uint64_t sweep_seed(const std::vector<std::uint64_t>& seeds, int j);

}  // namespace duelli
