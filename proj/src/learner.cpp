#include "duelli/learner.hpp"

#include <cmath>
#include <stdexcept>

namespace duelli {

namespace {

// Nominal size of one recursion frame (cube id, depth, round, estimate) for
// the bytes proxy reported in FrameStats.
constexpr long long kFrameBytes = 96;

}  // namespace

Schedule make_schedule(long long T, double delta, int zooming_dim_input) {
  if (T < 2) throw std::invalid_argument("make_schedule: T must be >= 2");
  if (delta <= 0.0 || delta >= 1.0)
    throw std::invalid_argument("make_schedule: delta must be in (0,1)");
  if (zooming_dim_input < 0)
    throw std::invalid_argument("make_schedule: zooming dimension must be >= 0");

  Schedule s;
  s.horizon = T;
  s.delta = delta;
  s.zooming_dim_input = zooming_dim_input;
  s.rounds = static_cast<int>(std::ceil(std::log2(static_cast<double>(T)) /
                                        (zooming_dim_input + 2))) +
             1;
  s.samples.assign(s.rounds + 1, 0);
  const double log_term = 16.0 * std::log(static_cast<double>(T) / delta);
  for (int h = 1; h <= s.rounds; ++h) {
    const double r = radius(h);
    s.samples[h] = static_cast<long long>(std::ceil(log_term / (r * r)));
  }
  return s;
}

GapEstimate empirical_gap(const Cube& cube, const Point& ref, long long n,
                          DuelOracle& oracle, Rng& rng,
                          std::vector<Point>* samples_out) {
  if (n < 1) throw std::invalid_argument("empirical_gap: n must be >= 1");
  GapEstimate est;
  long long wins = 0;
  for (long long i = 0; i < n; ++i) {
    Point x = cube.sample_uniform(rng);
    wins += oracle.duel(x, ref);
    if (i == 0) est.witness = x;
    if (samples_out) samples_out->push_back(std::move(x));
  }
  est.value = static_cast<double>(wins) / static_cast<double>(n) - 0.5;
  return est;
}

bool should_eliminate(double ref_gap_est, double cube_gap_est, int depth,
                      double gamma) {
  if (depth < 1) throw std::invalid_argument("should_eliminate: depth must be >= 1");
  return ref_gap_est - cube_gap_est > 2.0 * radius(depth) * (1.0 + gamma);
}

namespace {

struct Runner {
  const Schedule& schedule;
  DuelOracle& oracle;
  Rng& rng;
  const RunOptions& options;

  RegretTrace trace;
  Point ref_arm;          // X^{m-1}
  double ref_gap_est = 0.0;   // previous-round best estimate
  Point best_arm;         // X^m
  double best_gap_est = 0.0;  // current-round best estimate
  long long t = 0;

  int round = 0;
  int live_frames = 0;
  std::vector<long long> checkpoints;
  std::size_t next_checkpoint = 0;

  void record_duel(int depth, const std::string& cube_id, double inst_regret) {
    ++t;
    trace.cum_regret += inst_regret;
    const bool at_checkpoint = next_checkpoint < checkpoints.size() &&
                               t == checkpoints[next_checkpoint];
    if (at_checkpoint) ++next_checkpoint;
    if (options.full_trace || at_checkpoint)
      trace.records.push_back(
          {t, round, depth, cube_id, inst_regret, trace.cum_regret});
  }

  // One batch of n duels (cube sample vs ref); regret per Eq-1 style
  // accounting: Delta(x*, x_t) + Delta(x*, y_t).
  GapEstimate sample_cube(const Cube& cube, long long n, int depth,
                          std::vector<Point>* samples_out) {
    const std::string cid = cube.id();
    const double ref_regret = oracle.optimal_gap(ref_arm);
    GapEstimate est;
    long long wins = 0;
    for (long long i = 0; i < n; ++i) {
      Point x = cube.sample_uniform(rng);
      wins += oracle.duel(x, ref_arm);
      record_duel(depth, cid, oracle.optimal_gap(x) + ref_regret);
      if (i == 0) est.witness = x;
      if (samples_out) samples_out->push_back(std::move(x));
    }
    est.value = static_cast<double>(wins) / static_cast<double>(n) - 0.5;
    return est;
  }

  void round_func(int h, const Cube& cube) {
    ++trace.frames.frames_allocated;
    ++live_frames;
    trace.frames.max_stack_depth =
        std::max(trace.frames.max_stack_depth, live_frames);

    const long long n_h = schedule.samples[h];
    if (t + n_h > schedule.horizon) {
      --live_frames;
      return;
    }

    std::vector<Point> samples;
    std::vector<Point>* samples_out = options.hooks.on_cube ? &samples : nullptr;
    const GapEstimate est = sample_cube(cube, n_h, h, samples_out);

    if (h == round) {
      if (est.value > best_gap_est) {
        best_gap_est = est.value;
        best_arm = est.witness;
      }
      if (options.hooks.on_cube)
        options.hooks.on_cube(round, h, cube, est.value, samples,
                              CubeStatus::kCandidate);
    } else if (should_eliminate(ref_gap_est, est.value, h,
                                oracle.transfer().gamma())) {
      if (options.hooks.on_cube)
        options.hooks.on_cube(round, h, cube, est.value, samples,
                              CubeStatus::kEliminated);
    } else {
      if (options.hooks.on_cube)
        options.hooks.on_cube(round, h, cube, est.value, samples,
                              CubeStatus::kRecursed);
      for (const Cube& child : cube.children()) round_func(h + 1, child);
    }
    --live_frames;
  }

  RegretTrace run() {
    const int d = oracle.reward().dim();
    const long long T = schedule.horizon;

    checkpoints.reserve(16);
    for (int k = 1; k <= 16; ++k) {
      const long long ck = (T * k) / 16;
      if (ck >= 1 && (checkpoints.empty() || ck != checkpoints.back()))
        checkpoints.push_back(ck);
    }

    // X^0 uniform on [0,1]^d, gap estimate 0.
    ref_arm.resize(d);
    for (int i = 0; i < d; ++i) ref_arm[i] = rng.uniform01();
    ref_gap_est = 0.0;

    const std::vector<Cube> roots = root_cubes(d);
    for (round = 1; round <= schedule.rounds; ++round) {
      best_gap_est = ref_gap_est;
      best_arm = ref_arm;
      for (const Cube& c : roots) round_func(1, c);
      ref_gap_est = best_gap_est;
      ref_arm = best_arm;
    }

    // Cleanup: duel X^B against itself for the remaining budget.
    round = schedule.rounds;
    const double cleanup_regret = 2.0 * oracle.optimal_gap(ref_arm);
    while (t < T) {
      oracle.duel(ref_arm, ref_arm);
      record_duel(0, "-", cleanup_regret);
    }

    trace.duels = t;
    trace.final_arm = ref_arm;
    trace.frames.live_frame_bytes_proxy =
        static_cast<long long>(trace.frames.max_stack_depth) * kFrameBytes;
    return std::move(trace);
  }
};

}  // namespace

RegretTrace run_logduelli(const Schedule& schedule, DuelOracle& oracle,
                          Rng& rng, const RunOptions& options) {
  Runner runner{schedule, oracle, rng, options};
  return runner.run();
}

FrameStats memory_stats(const RegretTrace& trace) { return trace.frames; }

}  // namespace duelli
