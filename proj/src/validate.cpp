#include "duelli/validate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "duelli/env.hpp"
#include "duelli/learner.hpp"

namespace duelli {

namespace {

CheckResult check_le(std::string name, double statistic, double threshold) {
  return {std::move(name), statistic, threshold, "<=", statistic <= threshold};
}

CheckResult check_ge(std::string name, double statistic, double threshold) {
  return {std::move(name), statistic, threshold, ">=", statistic >= threshold};
}

struct NamedTransfer {
  const char* name;
  TransferFunction fn;
};

std::vector<NamedTransfer> standard_transfers() {
  return {{"logistic", TransferFunction::logistic()},
          {"probit_sigma1", TransferFunction::probit(1.0)},
          {"linear", TransferFunction::linear()}};
}

// --- transfer: Lipschitz constants over a 1e5-pair grid + symmetry ---------

std::vector<CheckResult> suite_transfer() {
  std::vector<CheckResult> results;
  constexpr int kPairs = 100000;
  const double step = 2.0 / kPairs;
  for (const auto& [name, fn] : standard_transfers()) {
    double est = 0.0;
    double prev = fn(-1.0);
    for (int i = 1; i <= kPairs; ++i) {
      const double cur = fn(-1.0 + i * step);
      est = std::max(est, std::fabs(cur - prev) / step);
      prev = cur;
    }
    results.push_back(check_le(std::string("lipschitz_") + name, est,
                               fn.gamma() + 1e-9));
  }

  double sym = 0.0;
  auto transfers = standard_transfers();
  transfers.push_back({"poly", TransferFunction::polynomial(0.5, 2.0)});
  for (const auto& [name, fn] : transfers)
    for (int i = 0; i <= 1000; ++i) {
      const double z = -1.0 + 2.0 * i / 1000.0;
      sym = std::max(sym, std::fabs(fn(-z) - (1.0 - fn(z))));
    }
  results.push_back(check_le("symmetry", sym, 1e-12));
  return results;
}

// --- sti: stochastic triangle inequality ------------------------------------

// Holds for triples ordered by latent reward; z is the middle arm.
std::vector<CheckResult> suite_sti() {
  std::vector<CheckResult> results;
  const RewardFunction reward = RewardFunction::cone_peak({0.7, 0.4});
  for (const auto& [name, fn] : standard_transfers()) {
    DuelOracle oracle(reward, fn);
    Rng rng(20240000ull + results.size());
    long long violations = 0;
    for (int i = 0; i < 10000; ++i) {
      std::array<Point, 3> triple;
      for (auto& p : triple) p = {rng.uniform01(), rng.uniform01()};
      std::sort(triple.begin(), triple.end(),
                [&](const Point& a, const Point& b) { return reward(a) > reward(b); });
      if (oracle.gap(triple[0], triple[2]) >
          oracle.gap(triple[0], triple[1]) + oracle.gap(triple[1], triple[2]) + 1e-12)
        ++violations;
    }
    results.push_back(check_le(std::string("sti_") + name,
                               static_cast<double>(violations), 0.0));
  }
  return results;
}

// --- concentration: |est - Delta(x, ref)| <= r_h (1 + Gamma) ----------------

std::vector<CheckResult> suite_concentration() {
  constexpr long long kHorizon = 1 << 14;
  constexpr double kDelta = 0.05;
  constexpr int kReps = 500;

  const Schedule schedule = make_schedule(kHorizon, kDelta, 0);
  const RewardFunction reward = RewardFunction::cone_peak({0.7});
  const TransferFunction transfer = TransferFunction::linear();
  const Point ref = {0.3};

  struct Config {
    const char* name;
    Cube cube;
  };
  const std::vector<Config> configs = {
      {"h1", Cube{1, {1}}},  // [0.5, 1]
      {"h2", Cube{2, {2}}},  // [0.5, 0.75]
  };

  std::vector<CheckResult> results;
  for (const auto& cfg : configs) {
    const int h = cfg.cube.depth;
    const double width = radius(h) * (1.0 + transfer.gamma());
    int successes = 0;
    for (int rep = 0; rep < kReps; ++rep) {
      const Rng root(900000ull + rep);
      DuelOracle oracle(reward, transfer, root.split(1));
      Rng sampler = root.split(2);
      std::vector<Point> samples;
      const GapEstimate est = empirical_gap(cfg.cube, ref, schedule.samples[h],
                                            oracle, sampler, &samples);
      bool ok = true;
      for (const Point& x : samples)
        if (std::fabs(est.value - oracle.gap(x, ref)) > width) {
          ok = false;
          break;
        }
      if (ok) ++successes;
    }
    results.push_back(check_ge(std::string("concentration_") + cfg.name,
                               static_cast<double>(successes), 490.0));
  }
  return results;
}

// --- no_elim + shrink: shared 200-seed Log-DuelLi runs ----------------------

struct LemmaRunStats {
  int runs = 0;
  int runs_optimum_survived = 0;
  long long surviving_arms = 0;
  long long shrink_violations = 0;
};

LemmaRunStats lemma_runs() {
  constexpr long long kHorizon = 1 << 14;
  constexpr double kDelta = 0.05;
  constexpr int kSeeds = 200;

  const Schedule schedule = make_schedule(kHorizon, kDelta, 0);
  const RewardFunction reward = RewardFunction::cone_peak({0.7});
  const TransferFunction transfer = TransferFunction::linear();
  const Point optimum = reward.optimum();
  const double gamma = transfer.gamma();

  LemmaRunStats stats;
  for (int seed = 0; seed < kSeeds; ++seed) {
    const Rng root(777000ull + seed);
    DuelOracle oracle(reward, transfer, root.split(1));
    Rng learner_rng = root.split(2);

    bool optimum_eliminated = false;
    RunOptions options;
    options.hooks.on_cube = [&](int, int h, const Cube& cube, double,
                                const std::vector<Point>& samples,
                                CubeStatus status) {
      if (status == CubeStatus::kEliminated) {
        if (cube.owns(optimum)) optimum_eliminated = true;
        return;
      }
      const double bound = 4.0 * radius(h - 1) * (1.0 + gamma);
      for (const Point& x : samples) {
        ++stats.surviving_arms;
        if (oracle.optimal_gap(x) > bound) ++stats.shrink_violations;
      }
    };
    run_logduelli(schedule, oracle, learner_rng, options);
    ++stats.runs;
    if (!optimum_eliminated) ++stats.runs_optimum_survived;
  }
  return stats;
}

std::vector<CheckResult> suite_no_elim(const LemmaRunStats& stats) {
  return {check_ge("no_elim_optimum_survives",
                   static_cast<double>(stats.runs_optimum_survived), 190.0)};
}

std::vector<CheckResult> suite_shrink(const LemmaRunStats& stats) {
  const double fraction =
      stats.surviving_arms == 0
          ? 0.0
          : static_cast<double>(stats.shrink_violations) /
                static_cast<double>(stats.surviving_arms);
  return {check_le("shrink_violation_fraction", fraction, 0.10)};
}

// --- memory: recursion depth bounded by B -----------------------------------

std::vector<CheckResult> suite_memory() {
  const RewardFunction reward = RewardFunction::cone_peak({0.7});
  const TransferFunction transfer = TransferFunction::linear();

  std::vector<CheckResult> results;
  std::vector<int> depths, rounds;
  for (long long T : {1ll << 12, 1ll << 16, 1ll << 20}) {
    const Schedule schedule = make_schedule(T, 1.0 / static_cast<double>(T), 0);
    const Rng root(4242);
    DuelOracle oracle(reward, transfer, root.split(1));
    Rng learner_rng = root.split(2);
    const RegretTrace trace = run_logduelli(schedule, oracle, learner_rng);
    const FrameStats frames = memory_stats(trace);
    depths.push_back(frames.max_stack_depth);
    rounds.push_back(schedule.rounds);
    results.push_back(check_le("memory_depth_T2e" +
                                   std::to_string(std::llround(std::log2(
                                       static_cast<double>(T)))),
                               frames.max_stack_depth, schedule.rounds));
  }
  results.push_back(check_le("memory_depth_growth",
                             depths.back() - depths.front(),
                             rounds.back() - rounds.front()));
  return results;
}

void append(std::vector<CheckResult>& to, std::vector<CheckResult> from) {
  for (auto& r : from) to.push_back(std::move(r));
}

}  // namespace

std::vector<CheckResult> validate_suite(const std::string& suite_id) {
  if (suite_id == "transfer") return suite_transfer();
  if (suite_id == "sti") return suite_sti();
  if (suite_id == "concentration") return suite_concentration();
  if (suite_id == "no_elim") return suite_no_elim(lemma_runs());
  if (suite_id == "shrink") return suite_shrink(lemma_runs());
  if (suite_id == "memory") return suite_memory();
  if (suite_id == "all") {
    std::vector<CheckResult> results;
    append(results, suite_transfer());
    append(results, suite_sti());
    append(results, suite_concentration());
    const LemmaRunStats stats = lemma_runs();
    append(results, suite_no_elim(stats));
    append(results, suite_shrink(stats));
    append(results, suite_memory());
    return results;
  }
  throw std::invalid_argument(
      "unknown validation suite '" + suite_id +
      "'; valid: transfer, sti, concentration, no_elim, shrink, memory, all");
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const CheckResult& r : results)
    if (!r.pass) return false;
  return true;
}

}  // namespace duelli
