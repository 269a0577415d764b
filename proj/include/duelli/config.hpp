#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "duelli/env.hpp"

namespace duelli {

struct GridEtcParams {
  int grid_per_axis = 0;       // K
  double explore_fraction = 0; // phi
};

enum class LearnerKind { kLogDuelLi, kUniform, kGridEtc };

struct LearnerSpec {
  LearnerKind kind = LearnerKind::kLogDuelLi;
  GridEtcParams grid;  // kGridEtc only
};

struct ExperimentConfig {
  std::string environment_id;
  std::string transfer_id;
  std::string learner_id;
  long long horizon = 0;       // T
  double delta = 0.0;          // 0 means default 1/T
  int zooming_dim = -1;        // -1 means default d
  std::vector<std::uint64_t> seeds;
  std::string out_dir = "out";
};

struct SweepConfig {
  ExperimentConfig base;
  std::vector<long long> horizons;  // strictly increasing, length >= 4
  int replications = 0;             // per horizon
};

// Registered preset ids:
//   environment  cone_peak[:d=..,opt=..]   ridge:d=..,k=..[,opt=..]
//                (opt is one coordinate for all axes, or axis values
//                 joined with '/')
//   transfer     logistic | linear | probit:sigma=.. | poly:c=..,p=..
//   learner      logduelli | uniform | grid_etc:K=..,phi=..
RewardFunction parse_environment(const std::string& id);
TransferFunction parse_transfer(const std::string& id);
LearnerSpec parse_learner(const std::string& id);

// Flat "key = value" text, '#' comments. Unknown keys are rejected by name.
ExperimentConfig load_experiment_config(const std::string& path);
SweepConfig load_sweep_config(const std::string& path);

double effective_delta(const ExperimentConfig& cfg, long long T);
int effective_zooming_dim(const ExperimentConfig& cfg);

}  // namespace duelli
