#include <cmath>
#include <stdexcept>
#include <set>

#include <doctest.h>

#include "duelli/learner.hpp"

using namespace duelli;

namespace {

DuelOracle cone_linear_oracle(double opt, std::uint64_t seed) {
  return DuelOracle(RewardFunction::cone_peak({opt}),
                    TransferFunction::linear(), Rng(seed).split(1));
}

}  // namespace

TEST_CASE("schedule: rounds and sample sizes") {
  const Schedule s = make_schedule(1 << 20, 0.01, 0);
  CHECK(s.rounds == 11);  // ceil(20/2) + 1

  const long long T16 = 1 << 16;
  const Schedule s16 = make_schedule(T16, 1.0 / static_cast<double>(T16), 1);
  CHECK(s16.samples[1] == 1420);  // ceil(16 ln(2^32) / 0.25)

  for (int h = 1; h + 1 <= s16.rounds; ++h) {
    CHECK(s16.samples[h + 1] > s16.samples[h]);
    // n quadruples as r halves, up to rounding
    CHECK(std::llabs(s16.samples[h + 1] - 4 * s16.samples[h]) <= 3);
  }

  CHECK_THROWS_AS(make_schedule(1, 0.1, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_schedule(100, 0.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_schedule(100, 1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_schedule(100, 0.1, -1), std::invalid_argument);
}

TEST_CASE("empirical gap estimator") {
  // Always-win setup: every point of cube [0,0.5] beats ref 0.9 with
  // probability 1 under a steep polynomial transfer.
  {
    DuelOracle oracle(RewardFunction::cone_peak({0.25}),
                      TransferFunction::polynomial(20.0, 1.0), Rng(1).split(1));
    Rng sampler(2);
    const GapEstimate est =
        empirical_gap(Cube{1, {0}}, {0.9}, 200, oracle, sampler);
    CHECK(est.value == 0.5);
    CHECK(Cube{1, {0}}.contains(est.witness));
  }

  // Dueling the reference's own cube: bias bounded by Gamma * r_h.
  {
    DuelOracle oracle = cone_linear_oracle(0.25, 3);
    Rng sampler(4);
    const GapEstimate est =
        empirical_gap(Cube{1, {0}}, {0.25}, 10000, oracle, sampler);
    CHECK(std::fabs(est.value) <= 0.5 * radius(1) + 0.02);
  }

  // Determinism of (value, witness) under a fixed seed.
  {
    DuelOracle o1 = cone_linear_oracle(0.7, 5);
    DuelOracle o2 = cone_linear_oracle(0.7, 5);
    Rng s1 = Rng(6).split(2), s2 = Rng(6).split(2);
    const GapEstimate a = empirical_gap(Cube{1, {1}}, {0.2}, 500, o1, s1);
    const GapEstimate b = empirical_gap(Cube{1, {1}}, {0.2}, 500, o2, s2);
    CHECK(a.value == b.value);
    CHECK(a.witness == b.witness);
  }
}

TEST_CASE("elimination rule") {
  CHECK_FALSE(should_eliminate(0.3, 0.1, 2, 0.25));  // 0.2 <= 0.625
  CHECK(should_eliminate(0.9, 0.1, 4, 0.25));        // 0.8 > 0.15625
  CHECK_FALSE(should_eliminate(0.2, 0.2, 3, 0.5));   // zero deficit never eliminates
  CHECK_THROWS_AS(should_eliminate(0.1, 0.0, 0, 0.25), std::invalid_argument);
}

TEST_CASE("run consumes exactly T duels and respects the depth bound") {
  const long long T = 1 << 13;
  const Schedule schedule = make_schedule(T, 0.05, 0);
  DuelOracle oracle = cone_linear_oracle(0.7, 21);
  Rng learner_rng = Rng(21).split(2);
  RunOptions options;
  options.full_trace = true;
  const RegretTrace trace = run_logduelli(schedule, oracle, learner_rng, options);

  CHECK(trace.duels == T);
  CHECK(oracle.duel_count() == static_cast<std::uint64_t>(T));
  CHECK(trace.records.size() == static_cast<std::size_t>(T));
  CHECK(trace.frames.max_stack_depth <= schedule.rounds);
  CHECK(trace.frames.frames_allocated >= trace.frames.max_stack_depth);

  // cumulative regret nondecreasing, each r_t >= 0
  double prev = 0.0;
  for (const TraceRecord& r : trace.records) {
    CHECK(r.inst_regret >= 0.0);
    CHECK(r.cum_regret >= prev);
    prev = r.cum_regret;
  }

  // cleanup duels pay 2 * Delta(x*, X^B) each
  const TraceRecord& last = trace.records.back();
  CHECK(last.depth == 0);
  CHECK(last.cube_id == "-");
  CHECK(last.inst_regret ==
        doctest::Approx(2.0 * oracle.optimal_gap(trace.final_arm)).epsilon(1e-12));
}

TEST_CASE("round one updates the candidate at depth one in every root cube") {
  const Schedule schedule = make_schedule(1 << 12, 0.05, 0);
  DuelOracle oracle = cone_linear_oracle(0.7, 31);
  Rng learner_rng = Rng(31).split(2);

  int round1_cubes = 0;
  double best_seen = 0.0;
  RunOptions options;
  options.hooks.on_cube = [&](int m, int h, const Cube&, double est,
                              const std::vector<Point>&, CubeStatus status) {
    if (m != 1) return;
    CHECK(h == 1);  // no recursion below depth 1 in round 1
    CHECK(status == CubeStatus::kCandidate);
    ++round1_cubes;
    best_seen = std::max(best_seen, est);
  };
  run_logduelli(schedule, oracle, learner_rng, options);
  CHECK(round1_cubes == 2);
}

TEST_CASE("children of an eliminated cube are never sampled") {
  // Shallow eliminations are unreachable (the depth-h threshold 2 r_h (1+Gamma)
  // exceeds any achievable estimate deficit for h <= 2), so the scenario needs
  // a horizon whose budget reaches depth 3 in round 4.
  const Schedule schedule = make_schedule(1 << 18, 0.05, 0);
  DuelOracle oracle = cone_linear_oracle(0.95, 41);
  Rng learner_rng = Rng(41).split(2);

  std::set<std::string> eliminated;
  bool sampled_under_eliminated = false;
  int eliminations = 0;
  RunOptions options;
  options.hooks.on_cube = [&](int, int, const Cube& cube, double,
                              const std::vector<Point>&, CubeStatus status) {
    Cube walk = cube;
    // any ancestor eliminated?
    while (walk.depth > 1) {
      Cube parent;
      parent.depth = walk.depth - 1;
      for (std::uint32_t ix : walk.index) parent.index.push_back(ix / 2);
      if (eliminated.count(parent.id())) sampled_under_eliminated = true;
      walk = parent;
    }
    if (status == CubeStatus::kEliminated) {
      eliminated.insert(cube.id());
      ++eliminations;
    }
  };
  run_logduelli(schedule, oracle, learner_rng, options);
  CHECK(eliminations > 0);
  CHECK_FALSE(sampled_under_eliminated);
}

TEST_CASE("candidate updates happen only at depth m, eliminations below") {
  const Schedule schedule = make_schedule(1 << 13, 0.05, 0);
  DuelOracle oracle = cone_linear_oracle(0.7, 51);
  Rng learner_rng = Rng(51).split(2);

  RunOptions options;
  options.hooks.on_cube = [&](int m, int h, const Cube& cube, double,
                              const std::vector<Point>&, CubeStatus status) {
    CHECK(h >= 1);
    CHECK(h <= m);
    CHECK(cube.depth == h);
    if (status == CubeStatus::kCandidate)
      CHECK(h == m);
    else
      CHECK(h < m);
  };
  run_logduelli(schedule, oracle, learner_rng, options);
}

TEST_CASE("final arm lands near the optimum across seeds") {
  // 20 seeds, T = 2^16, default zooming-dimension input d = 1, so
  // B = ceil(16/3) + 1 = 7 and the target radius is 4 r_{B-1} (1+Gamma)/Gamma.
  const long long T = 1 << 16;
  const Schedule schedule = make_schedule(T, 1.0 / static_cast<double>(T), 1);
  CHECK(schedule.rounds == 7);
  const double bound =
      4.0 * radius(schedule.rounds - 1) * (1.0 + 0.5) / 0.5;  // 0.1875

  int hits = 0;
  for (int seed = 0; seed < 20; ++seed) {
    DuelOracle oracle = cone_linear_oracle(0.7, 6000 + seed);
    Rng learner_rng = Rng(6000 + seed).split(2);
    const RegretTrace trace = run_logduelli(schedule, oracle, learner_rng);
    if (linf_distance(trace.final_arm, {0.7}) <= bound) ++hits;
  }
  CHECK(hits >= 18);
}

TEST_CASE("memory stats") {
  // single-round schedule: depth never exceeds one frame
  Schedule single;
  single.horizon = 4096;
  single.delta = 0.05;
  single.rounds = 1;
  single.zooming_dim_input = 0;
  single.samples = {0, 100};
  DuelOracle oracle = cone_linear_oracle(0.7, 61);
  Rng learner_rng = Rng(61).split(2);
  const RegretTrace trace = run_logduelli(single, oracle, learner_rng);
  const FrameStats frames = memory_stats(trace);
  CHECK(frames.max_stack_depth == 1);
  CHECK(frames.frames_allocated >= frames.max_stack_depth);
  CHECK(frames.live_frame_bytes_proxy > 0);

  // depth grows by at most B(2^20) - B(2^12) = 4 frames across the range
  int depth_small = 0, depth_large = 0;
  for (long long T : {1ll << 12, 1ll << 20}) {
    const Schedule s = make_schedule(T, 1.0 / static_cast<double>(T), 0);
    DuelOracle o = cone_linear_oracle(0.7, 62);
    Rng r = Rng(62).split(2);
    const int depth = run_logduelli(s, o, r).frames.max_stack_depth;
    (T == (1ll << 12) ? depth_small : depth_large) = depth;
  }
  CHECK(depth_large - depth_small <= 4);
}

TEST_CASE("identical seed gives an identical trace") {
  const Schedule schedule = make_schedule(1 << 12, 0.05, 0);
  RegretTrace traces[2];
  for (int i = 0; i < 2; ++i) {
    DuelOracle oracle = cone_linear_oracle(0.7, 71);
    Rng learner_rng = Rng(71).split(2);
    RunOptions options;
    options.full_trace = true;
    traces[i] = run_logduelli(schedule, oracle, learner_rng, options);
  }
  CHECK(traces[0].cum_regret == traces[1].cum_regret);
  CHECK(traces[0].final_arm == traces[1].final_arm);
  REQUIRE(traces[0].records.size() == traces[1].records.size());
  for (std::size_t i = 0; i < traces[0].records.size(); ++i) {
    CHECK(traces[0].records[i].cube_id == traces[1].records[i].cube_id);
    CHECK(traces[0].records[i].inst_regret == traces[1].records[i].inst_regret);
  }
}
