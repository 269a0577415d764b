#include "duelli/config.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace duelli {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

// "name:k1=v1,k2=v2" -> (name, {k1:v1, k2:v2})
std::pair<std::string, std::map<std::string, std::string>> parse_id(
    const std::string& id) {
  const auto colon = id.find(':');
  std::map<std::string, std::string> params;
  const std::string name = trim(id.substr(0, colon));
  if (colon != std::string::npos) {
    for (const std::string& kv : split(id.substr(colon + 1), ',')) {
      if (kv.empty()) continue;
      const auto eq = kv.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("malformed parameter '" + kv + "' in id '" +
                                    id + "'");
      params[trim(kv.substr(0, eq))] = trim(kv.substr(eq + 1));
    }
  }
  return {name, params};
}

double to_double(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid number for " + what + ": '" + s + "'");
  }
}

long long to_int(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid integer for " + what + ": '" + s + "'");
  }
}

Point parse_optimum(const std::map<std::string, std::string>& params, int d) {
  Point opt(d, 0.7);
  const auto it = params.find("opt");
  if (it == params.end()) return opt;
  const std::vector<std::string> parts = split(it->second, '/');
  if (parts.size() == 1) {
    std::fill(opt.begin(), opt.end(), to_double(parts[0], "opt"));
  } else if (static_cast<int>(parts.size()) == d) {
    for (int i = 0; i < d; ++i) opt[i] = to_double(parts[i], "opt");
  } else {
    throw std::invalid_argument("opt must have 1 or d coordinates");
  }
  return opt;
}

void check_known(const std::map<std::string, std::string>& params,
                 const std::set<std::string>& allowed, const std::string& id) {
  for (const auto& [k, v] : params)
    if (!allowed.count(k))
      throw std::invalid_argument("unknown parameter '" + k + "' in id '" + id +
                                  "'");
}

}  // namespace

RewardFunction parse_environment(const std::string& id) {
  const auto [name, params] = parse_id(id);
  if (name == "cone_peak") {
    check_known(params, {"d", "opt"}, id);
    const int d = params.count("d")
                      ? static_cast<int>(to_int(params.at("d"), "d"))
                      : 1;
    if (d < 1 || d > kMaxDimension)
      throw std::invalid_argument("environment dimension d must be in [1, 8]");
    return RewardFunction::cone_peak(parse_optimum(params, d));
  }
  if (name == "ridge") {
    check_known(params, {"d", "k", "opt"}, id);
    if (!params.count("d") || !params.count("k"))
      throw std::invalid_argument("ridge requires d and k parameters");
    const int d = static_cast<int>(to_int(params.at("d"), "d"));
    const int k = static_cast<int>(to_int(params.at("k"), "k"));
    if (d < 1 || d > kMaxDimension)
      throw std::invalid_argument("environment dimension d must be in [1, 8]");
    return RewardFunction::ridge(parse_optimum(params, d), k);
  }
  throw std::invalid_argument("unknown environment '" + name +
                              "'; registered: cone_peak, ridge");
}

TransferFunction parse_transfer(const std::string& id) {
  const auto [name, params] = parse_id(id);
  if (name == "logistic") {
    check_known(params, {}, id);
    return TransferFunction::logistic();
  }
  if (name == "linear") {
    check_known(params, {}, id);
    return TransferFunction::linear();
  }
  if (name == "probit") {
    check_known(params, {"sigma"}, id);
    const double sigma =
        params.count("sigma") ? to_double(params.at("sigma"), "sigma") : 1.0;
    return TransferFunction::probit(sigma);
  }
  if (name == "poly") {
    check_known(params, {"c", "p"}, id);
    if (!params.count("c") || !params.count("p"))
      throw std::invalid_argument("poly requires c and p parameters");
    return TransferFunction::polynomial(to_double(params.at("c"), "c"),
                                        to_double(params.at("p"), "p"));
  }
  throw std::invalid_argument("unknown transfer '" + name +
                              "'; registered: logistic, linear, probit, poly");
}

LearnerSpec parse_learner(const std::string& id) {
  const auto [name, params] = parse_id(id);
  LearnerSpec spec;
  if (name == "logduelli") {
    check_known(params, {}, id);
    spec.kind = LearnerKind::kLogDuelLi;
    return spec;
  }
  if (name == "uniform") {
    check_known(params, {}, id);
    spec.kind = LearnerKind::kUniform;
    return spec;
  }
  if (name == "grid_etc") {
    check_known(params, {"K", "phi"}, id);
    if (!params.count("K") || !params.count("phi"))
      throw std::invalid_argument("grid_etc requires K and phi parameters");
    spec.kind = LearnerKind::kGridEtc;
    spec.grid.grid_per_axis = static_cast<int>(to_int(params.at("K"), "K"));
    spec.grid.explore_fraction = to_double(params.at("phi"), "phi");
    if (spec.grid.grid_per_axis < 2)
      throw std::invalid_argument("grid_etc K must be >= 2");
    if (spec.grid.explore_fraction <= 0.0 || spec.grid.explore_fraction >= 1.0)
      throw std::invalid_argument("grid_etc phi must be in (0,1)");
    return spec;
  }
  throw std::invalid_argument("unknown learner '" + name +
                              "'; registered: logduelli, uniform, grid_etc");
}

namespace {

std::map<std::string, std::string> read_kv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    if (kv.count(key))
      throw std::runtime_error(path + ": duplicate key '" + key + "'");
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

ExperimentConfig build_experiment(std::map<std::string, std::string>& kv,
                                  const std::set<std::string>& extra_allowed) {
  const std::set<std::string> allowed = {"environment", "transfer", "learner",
                                         "T", "delta", "d_z", "seeds", "out"};
  for (const auto& [k, v] : kv)
    if (!allowed.count(k) && !extra_allowed.count(k))
      throw std::runtime_error("unknown config key '" + k + "'");

  for (const char* req : {"environment", "transfer", "learner", "T", "seeds"})
    if (!kv.count(req))
      throw std::runtime_error(std::string("missing config key '") + req + "'");

  ExperimentConfig cfg;
  cfg.environment_id = kv.at("environment");
  cfg.transfer_id = kv.at("transfer");
  cfg.learner_id = kv.at("learner");
  cfg.horizon = to_int(kv.at("T"), "T");
  if (cfg.horizon < 2) throw std::runtime_error("config key 'T' must be >= 2");
  if (kv.count("delta")) {
    cfg.delta = to_double(kv.at("delta"), "delta");
    if (cfg.delta <= 0.0 || cfg.delta >= 1.0)
      throw std::runtime_error("config key 'delta' must be in (0,1)");
  }
  if (kv.count("d_z")) {
    cfg.zooming_dim = static_cast<int>(to_int(kv.at("d_z"), "d_z"));
    if (cfg.zooming_dim < 0)
      throw std::runtime_error("config key 'd_z' must be >= 0");
  }
  if (kv.count("out")) cfg.out_dir = kv.at("out");

  for (const std::string& s : split(kv.at("seeds"), ','))
    if (!s.empty())
      cfg.seeds.push_back(static_cast<std::uint64_t>(to_int(s, "seeds")));
  if (cfg.seeds.empty()) throw std::runtime_error("config key 'seeds' is empty");
  std::set<std::uint64_t> uniq(cfg.seeds.begin(), cfg.seeds.end());
  if (uniq.size() != cfg.seeds.size())
    throw std::runtime_error("config key 'seeds' has duplicates");

  // Resolve preset ids now so bad configs fail at load time.
  const RewardFunction reward = parse_environment(cfg.environment_id);
  parse_transfer(cfg.transfer_id);
  const LearnerSpec learner = parse_learner(cfg.learner_id);
  if (cfg.zooming_dim > reward.dim())
    throw std::runtime_error("config key 'd_z' exceeds ambient dimension");
  (void)learner;
  return cfg;
}

}  // namespace

ExperimentConfig load_experiment_config(const std::string& path) {
  auto kv = read_kv_file(path);
  return build_experiment(kv, {});
}

SweepConfig load_sweep_config(const std::string& path) {
  auto kv = read_kv_file(path);
  SweepConfig sweep;
  if (!kv.count("horizons"))
    throw std::runtime_error("missing config key 'horizons'");
  if (!kv.count("reps")) throw std::runtime_error("missing config key 'reps'");
  for (const std::string& s : split(kv.at("horizons"), ','))
    if (!s.empty()) sweep.horizons.push_back(to_int(s, "horizons"));
  if (sweep.horizons.size() < 4)
    throw std::runtime_error("config key 'horizons' needs length >= 4");
  for (std::size_t i = 1; i < sweep.horizons.size(); ++i)
    if (sweep.horizons[i] <= sweep.horizons[i - 1])
      throw std::runtime_error("config key 'horizons' must be strictly increasing");
  sweep.replications = static_cast<int>(to_int(kv.at("reps"), "reps"));
  if (sweep.replications < 1)
    throw std::runtime_error("config key 'reps' must be >= 1");
  kv.erase("horizons");
  kv.erase("reps");
  sweep.base = build_experiment(kv, {});
  return sweep;
}

double effective_delta(const ExperimentConfig& cfg, long long T) {
  return cfg.delta > 0.0 ? cfg.delta : 1.0 / static_cast<double>(T);
}

int effective_zooming_dim(const ExperimentConfig& cfg) {
  return cfg.zooming_dim >= 0 ? cfg.zooming_dim
                              : parse_environment(cfg.environment_id).dim();
}

}  // namespace duelli
