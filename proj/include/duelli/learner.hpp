#pragma once

#include <functional>
#include <string>
#include <vector>

#include "duelli/env.hpp"
#include "duelli/geometry.hpp"
#include "duelli/rng.hpp"

namespace duelli {

// Round/sample schedule: B = ceil(log2(T)/(d_z+2)) + 1 rounds and
// n_h = ceil(16 ln(T/delta) / r_h^2) duels per cube at depth h.
struct Schedule {
  long long horizon = 0;  // T
  double delta = 0.0;
  int rounds = 0;  // B
  int zooming_dim_input = 0;
  std::vector<long long> samples;  // samples[h] = n_h for h = 1..rounds
};

Schedule make_schedule(long long T, double delta, int zooming_dim_input);

struct FrameStats {
  int max_stack_depth = 0;
  long long frames_allocated = 0;
  long long live_frame_bytes_proxy = 0;
};

struct TraceRecord {
  long long t = 0;
  int round = 0;
  int depth = 0;
  std::string cube_id;
  double inst_regret = 0.0;
  double cum_regret = 0.0;
};

struct RegretTrace {
  // Per-duel rows when full tracing is on; otherwise only the 16 checkpoint
  // rows at t = k*T/16.
  std::vector<TraceRecord> records;
  long long duels = 0;
  double cum_regret = 0.0;
  Point final_arm;
  FrameStats frames;
};

enum class CubeStatus { kCandidate, kRecursed, kEliminated };

// Observation hooks for the validation harness; sampled points are collected
// only when on_cube is set.
struct LearnerHooks {
  std::function<void(int round, int depth, const Cube&, double gap_estimate,
                     const std::vector<Point>& samples, CubeStatus)>
      on_cube;
};

struct RunOptions {
  bool full_trace = false;
  LearnerHooks hooks;
};

struct GapEstimate {
  double value = 0.0;  // mean duel outcome minus 1/2, in [-1/2, 1/2]
  Point witness;       // first sampled point of the batch
};

// Samples n points uniformly from the cube and duels each against ref.
// Consumes exactly n duels. When samples_out is non-null the sampled points
// are appended to it.
GapEstimate empirical_gap(const Cube& cube, const Point& ref, long long n,
                          DuelOracle& oracle, Rng& rng,
                          std::vector<Point>* samples_out = nullptr);

// Elimination rule: discard the cube when the previous round's best estimate
// exceeds the cube's estimate by more than 2 r_h (1 + gamma).
bool should_eliminate(double ref_gap_est, double cube_gap_est, int depth,
                      double gamma);

// Full Log-DuelLi run: B rounds of recursive cube exploration over the 2^d
// root cubes, then cleanup duels (X^B, X^B) until exactly T duels are spent.
RegretTrace run_logduelli(const Schedule& schedule, DuelOracle& oracle,
                          Rng& rng, const RunOptions& options = {});

FrameStats memory_stats(const RegretTrace& trace);

}  // namespace duelli
