#include "duelli/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "duelli/baselines.hpp"

namespace duelli {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_trace_csv(const std::string& path, const RegretTrace& trace) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write trace file: " + path);
  out << "t,round,depth,cube_id,r_t,cum_regret\n";
  for (const TraceRecord& r : trace.records)
    out << r.t << ',' << r.round << ',' << r.depth << ',' << r.cube_id << ','
        << fmt_double(r.inst_regret) << ',' << fmt_double(r.cum_regret) << '\n';
}

}  // namespace

std::vector<std::pair<long long, double>> checkpoint_values(
    const RegretTrace& trace, long long T) {
  std::vector<long long> times;
  for (int k = 1; k <= 16; ++k) {
    const long long ck = (T * k) / 16;
    if (ck >= 1 && (times.empty() || ck != times.back())) times.push_back(ck);
  }
  std::vector<std::pair<long long, double>> out;
  std::size_t next = 0;
  for (const TraceRecord& r : trace.records) {
    while (next < times.size() && times[next] < r.t) ++next;
    if (next < times.size() && r.t == times[next]) {
      out.emplace_back(r.t, r.cum_regret);
      ++next;
    }
  }
  return out;
}

std::uint64_t sweep_seed(const std::vector<std::uint64_t>& seeds, int j) {
  if (j < static_cast<int>(seeds.size())) return seeds[j];
  return seeds.back() + static_cast<std::uint64_t>(j - seeds.size() + 1);
}

RegretTrace run_replication(const ExperimentConfig& cfg, long long T,
                            std::uint64_t seed, bool full_trace,
                            const LearnerHooks& hooks) {
  const Rng root(seed);
  DuelOracle oracle(parse_environment(cfg.environment_id),
                    parse_transfer(cfg.transfer_id), root.split(1));
  Rng learner_rng = root.split(2);

  RunOptions options;
  options.full_trace = full_trace;
  options.hooks = hooks;

  const LearnerSpec learner = parse_learner(cfg.learner_id);
  switch (learner.kind) {
    case LearnerKind::kLogDuelLi: {
      const Schedule schedule = make_schedule(T, effective_delta(cfg, T),
                                              effective_zooming_dim(cfg));
      return run_logduelli(schedule, oracle, learner_rng, options);
    }
    case LearnerKind::kUniform:
      return run_uniform(T, oracle, learner_rng, options);
    case LearnerKind::kGridEtc:
      return run_grid_etc(T, learner.grid.grid_per_axis,
                          learner.grid.explore_fraction, oracle, learner_rng,
                          options);
  }
  throw std::logic_error("unreachable");
}

ExperimentSummary run_experiment(const ExperimentConfig& cfg,
                                 std::uint64_t seed_offset, bool full_trace,
                                 bool write_csv) {
  ExperimentSummary summary;
  std::vector<std::vector<std::pair<long long, double>>> per_seed_checkpoints;

  if (write_csv) std::filesystem::create_directories(cfg.out_dir);

  for (std::uint64_t base_seed : cfg.seeds) {
    const std::uint64_t seed = base_seed + seed_offset;
    const RegretTrace trace = run_replication(cfg, cfg.horizon, seed, full_trace);
    summary.seeds.push_back(seed);
    summary.final_regrets.push_back(trace.cum_regret);
    summary.max_stack_depth =
        std::max(summary.max_stack_depth, trace.frames.max_stack_depth);
    per_seed_checkpoints.push_back(checkpoint_values(trace, cfg.horizon));
    if (write_csv) {
      const std::string path =
          cfg.out_dir + "/trace_seed" + std::to_string(seed) + ".csv";
      write_trace_csv(path, trace);
      summary.trace_files.push_back(path);
    }
  }

  double sum = 0.0;
  for (double r : summary.final_regrets) sum += r;
  summary.mean_final_regret = sum / static_cast<double>(cfg.seeds.size());

  if (write_csv) {
    const std::string path = cfg.out_dir + "/aggregate.csv";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write aggregate file: " + path);
    out << "t,mean_cum_regret,std_cum_regret\n";
    const std::size_t n_cp = per_seed_checkpoints.front().size();
    const double n = static_cast<double>(cfg.seeds.size());
    for (std::size_t i = 0; i < n_cp; ++i) {
      double mean = 0.0;
      for (const auto& cps : per_seed_checkpoints) mean += cps[i].second;
      mean /= n;
      double var = 0.0;
      for (const auto& cps : per_seed_checkpoints) {
        const double d = cps[i].second - mean;
        var += d * d;
      }
      const double sd = n > 1 ? std::sqrt(var / (n - 1.0)) : 0.0;
      out << per_seed_checkpoints.front()[i].first << ',' << fmt_double(mean)
          << ',' << fmt_double(sd) << '\n';
    }
    summary.aggregate_file = path;
  }
  return summary;
}

SweepResult run_sweep(const SweepConfig& cfg, std::uint64_t seed_offset,
                      bool write_csv) {
  SweepResult result;
  for (long long T : cfg.horizons) {
    std::vector<double> finals;
    for (int j = 0; j < cfg.replications; ++j) {
      const std::uint64_t seed = sweep_seed(cfg.base.seeds, j) + seed_offset;
      const RegretTrace trace = run_replication(cfg.base, T, seed);
      finals.push_back(trace.cum_regret);
    }
    double mean = 0.0;
    for (double f : finals) mean += f;
    mean /= static_cast<double>(finals.size());
    double var = 0.0;
    for (double f : finals) var += (f - mean) * (f - mean);
    const double sd = finals.size() > 1
                          ? std::sqrt(var / (finals.size() - 1.0))
                          : 0.0;
    result.rows.push_back({T, mean, sd});
  }

  // Least-squares slope of log2(mean R) vs log2 T.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(result.rows.size());
  for (const SweepRow& row : result.rows) {
    const double x = std::log2(static_cast<double>(row.horizon));
    const double y = std::log2(row.mean_final_regret);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  result.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);

  if (write_csv) {
    std::filesystem::create_directories(cfg.base.out_dir);
    const std::string path = cfg.base.out_dir + "/sweep.csv";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write sweep file: " + path);
    out << "T,mean_final_regret,std_final_regret\n";
    for (const SweepRow& row : result.rows)
      out << row.horizon << ',' << fmt_double(row.mean_final_regret) << ','
          << fmt_double(row.std_final_regret) << '\n';
    result.csv_file = path;
  }
  return result;
}

}  // namespace duelli
