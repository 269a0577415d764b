#include "duelli/baselines.hpp"

#include <cmath>
#include <stdexcept>

namespace duelli {

namespace {

struct TraceWriter {
  const RunOptions& options;
  RegretTrace trace;
  long long t = 0;
  std::vector<long long> checkpoints;
  std::size_t next_checkpoint = 0;

  explicit TraceWriter(long long T, const RunOptions& opts) : options(opts) {
    for (int k = 1; k <= 16; ++k) {
      const long long ck = (T * k) / 16;
      if (ck >= 1 && (checkpoints.empty() || ck != checkpoints.back()))
        checkpoints.push_back(ck);
    }
  }

  void record(const std::string& cube_id, double inst_regret) {
    ++t;
    trace.cum_regret += inst_regret;
    const bool at_checkpoint = next_checkpoint < checkpoints.size() &&
                               t == checkpoints[next_checkpoint];
    if (at_checkpoint) ++next_checkpoint;
    if (options.full_trace || at_checkpoint)
      trace.records.push_back({t, 0, 0, cube_id, inst_regret, trace.cum_regret});
  }
};

}  // namespace

RegretTrace run_uniform(long long T, DuelOracle& oracle, Rng& rng,
                        const RunOptions& options) {
  if (T < 1) throw std::invalid_argument("run_uniform: T must be >= 1");
  const int d = oracle.reward().dim();
  TraceWriter w(T, options);
  Point x(d), y(d);
  while (w.t < T) {
    for (int i = 0; i < d; ++i) x[i] = rng.uniform01();
    for (int i = 0; i < d; ++i) y[i] = rng.uniform01();
    oracle.duel(x, y);
    w.record("-", oracle.optimal_gap(x) + oracle.optimal_gap(y));
  }
  w.trace.duels = w.t;
  w.trace.frames.max_stack_depth = 1;
  w.trace.frames.frames_allocated = 1;
  return std::move(w.trace);
}

RegretTrace run_grid_etc(long long T, int grid_per_axis, double explore_fraction,
                         DuelOracle& oracle, Rng& rng,
                         const RunOptions& options) {
  if (T < 1) throw std::invalid_argument("run_grid_etc: T must be >= 1");
  if (grid_per_axis < 2)
    throw std::invalid_argument("run_grid_etc: K must be >= 2");
  if (explore_fraction <= 0.0 || explore_fraction >= 1.0)
    throw std::invalid_argument("run_grid_etc: phi must be in (0,1)");

  const int d = oracle.reward().dim();
  long long arm_count = 1;
  for (int i = 0; i < d; ++i) arm_count *= grid_per_axis;

  const long long per_arm = static_cast<long long>(
      std::floor(explore_fraction * static_cast<double>(T) /
                 static_cast<double>(arm_count)));
  if (per_arm < 1)
    throw std::invalid_argument(
        "run_grid_etc: exploration budget below one duel per grid arm");

  // Grid arms at cube centers, lexicographic order.
  std::vector<Point> arms;
  arms.reserve(arm_count);
  std::vector<int> idx(d, 0);
  for (;;) {
    Point p(d);
    for (int i = 0; i < d; ++i) p[i] = (idx[i] + 0.5) / grid_per_axis;
    arms.push_back(std::move(p));
    int axis = d - 1;
    while (axis >= 0 && ++idx[axis] == grid_per_axis) idx[axis--] = 0;
    if (axis < 0) break;
  }

  TraceWriter w(T, options);
  const Point& ref = arms[0];
  const double ref_regret = oracle.optimal_gap(ref);

  std::size_t best = 0;
  double best_rate = -1.0;
  for (std::size_t a = 0; a < arms.size(); ++a) {
    long long wins = 0;
    const double arm_regret = oracle.optimal_gap(arms[a]);
    for (long long i = 0; i < per_arm; ++i) {
      wins += oracle.duel(arms[a], ref);
      w.record("-", arm_regret + ref_regret);
    }
    const double rate = static_cast<double>(wins) / static_cast<double>(per_arm);
    if (rate > best_rate) {
      best_rate = rate;
      best = a;
    }
  }

  const double commit_regret = 2.0 * oracle.optimal_gap(arms[best]);
  while (w.t < T) {
    oracle.duel(arms[best], arms[best]);
    w.record("-", commit_regret);
  }

  w.trace.duels = w.t;
  w.trace.final_arm = arms[best];
  w.trace.frames.max_stack_depth = 1;
  w.trace.frames.frames_allocated = 1;
  return std::move(w.trace);
}

}  // namespace duelli
