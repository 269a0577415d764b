#include "duelli/env.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace duelli {

namespace {

void check_domain(const Point& x, int d, const char* who) {
  if (static_cast<int>(x.size()) != d)
    throw std::invalid_argument(std::string(who) + ": dimension mismatch");
  for (double c : x)
    if (c < 0.0 || c > 1.0)
      throw std::invalid_argument(std::string(who) + ": point outside [0,1]^d");
}

}  // namespace

RewardFunction RewardFunction::cone_peak(Point optimum) {
  check_domain(optimum, static_cast<int>(optimum.size()), "cone_peak");
  if (optimum.empty()) throw std::invalid_argument("cone_peak: empty optimum");
  RewardFunction f;
  f.preset_ = RewardPreset::kConePeak;
  f.optimum_ = std::move(optimum);
  return f;
}

RewardFunction RewardFunction::ridge(Point optimum, int active_axes) {
  check_domain(optimum, static_cast<int>(optimum.size()), "ridge");
  if (active_axes < 1 || active_axes > static_cast<int>(optimum.size()))
    throw std::invalid_argument("ridge: active_axes must be in [1, d]");
  RewardFunction f;
  f.preset_ = RewardPreset::kRidge;
  f.optimum_ = std::move(optimum);
  f.active_axes_ = active_axes;
  return f;
}

RewardFunction RewardFunction::custom_table(
    std::vector<std::pair<Point, double>> anchors) {
  if (anchors.empty()) throw std::invalid_argument("custom_table: no anchors");
  std::size_t best = 0;
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    check_domain(anchors[i].first, static_cast<int>(anchors[0].first.size()),
                 "custom_table");
    if (anchors[i].second > anchors[best].second) best = i;
  }
  RewardFunction f;
  f.preset_ = RewardPreset::kCustomTable;
  f.optimum_ = anchors[best].first;
  f.anchors_ = std::move(anchors);
  return f;
}

double RewardFunction::operator()(const Point& x) const {
  check_domain(x, dim(), "evaluate_f");
  switch (preset_) {
    case RewardPreset::kConePeak:
      return 1.0 - linf_distance(x, optimum_);
    case RewardPreset::kRidge: {
      double m = 0.0;
      for (int i = 0; i < active_axes_; ++i)
        m = std::max(m, std::fabs(x[i] - optimum_[i]));
      return 1.0 - m;
    }
    case RewardPreset::kCustomTable: {
      double best = -1.0;
      for (const auto& [p, v] : anchors_)
        best = std::max(best, v - linf_distance(x, p));
      return best;
    }
  }
  throw std::logic_error("unreachable");
}

TransferFunction TransferFunction::logistic() {
  return TransferFunction(TransferKind::kLogistic, 0.25);
}

TransferFunction TransferFunction::probit(double sigma) {
  if (sigma <= 0.0) throw std::invalid_argument("probit: sigma must be > 0");
  TransferFunction t(TransferKind::kProbit,
                     1.0 / (sigma * std::sqrt(2.0 * std::numbers::pi)));
  t.sigma_ = sigma;
  return t;
}

TransferFunction TransferFunction::linear() {
  return TransferFunction(TransferKind::kLinear, 0.5);
}

TransferFunction TransferFunction::polynomial(double c, double p) {
  if (c <= 0.0) throw std::invalid_argument("polynomial: c must be > 0");
  if (p < 1.0)
    throw std::invalid_argument(
        "polynomial: p must be >= 1 (not globally Lipschitz below 1)");
  TransferFunction t(TransferKind::kPolynomial, c * p);
  t.coeff_ = c;
  t.power_ = p;
  return t;
}

double TransferFunction::operator()(double z) const {
  z = std::clamp(z, -1.0, 1.0);
  switch (kind_) {
    case TransferKind::kLogistic:
      return 1.0 / (1.0 + std::exp(-z));
    case TransferKind::kProbit:
      return 0.5 * std::erfc(-z / (sigma_ * std::numbers::sqrt2));
    case TransferKind::kLinear:
      return std::clamp(0.5 * (1.0 + z), 0.0, 1.0);
    case TransferKind::kPolynomial: {
      const double s = z < 0.0 ? -1.0 : (z > 0.0 ? 1.0 : 0.0);
      const double m = std::min(0.5, coeff_ * std::pow(std::fabs(z), power_));
      return 0.5 + s * m;
    }
  }
  throw std::logic_error("unreachable");
}

double DuelOracle::gap(const Point& x, const Point& y) const {
  return transfer_(reward_(x) - reward_(y)) - 0.5;
}

int DuelOracle::duel(const Point& x, const Point& y) {
  ++duel_count_;
  return rng_.uniform01() < gap(x, y) + 0.5 ? 1 : 0;
}

long long covering_number(const RewardFunction& reward,
                          const TransferFunction& transfer, double eps,
                          int grid_resolution) {
  if (eps <= 0.0) throw std::invalid_argument("covering_number: eps must be > 0");
  if (grid_resolution < 8)
    throw std::invalid_argument("covering_number: grid_resolution must be >= 8");

  const int d = reward.dim();
  const DuelOracle oracle(reward, transfer);

  // Grid points with Delta(x*, x) <= eps, lexicographic order.
  std::vector<Point> near_opt;
  std::vector<int> idx(d, 0);
  Point x(d);
  for (;;) {
    for (int i = 0; i < d; ++i) x[i] = (idx[i] + 0.5) / grid_resolution;
    if (oracle.optimal_gap(x) <= eps) near_opt.push_back(x);
    int axis = d - 1;
    while (axis >= 0 && ++idx[axis] == grid_resolution) idx[axis--] = 0;
    if (axis < 0) break;
  }

  // Greedy: a ball centered at p + eps (per axis) covers [p, p + 2 eps]^d,
  // so each new ball extends maximally forward in lexicographic order.
  std::vector<char> covered(near_opt.size(), 0);
  long long balls = 0;
  for (std::size_t i = 0; i < near_opt.size(); ++i) {
    if (covered[i]) continue;
    ++balls;
    for (std::size_t j = i; j < near_opt.size(); ++j) {
      if (covered[j]) continue;
      bool inside = true;
      for (int ax = 0; ax < d; ++ax) {
        const double delta = near_opt[j][ax] - near_opt[i][ax];
        if (delta < 0.0 || delta > 2.0 * eps) {
          inside = false;
          break;
        }
      }
      if (inside) covered[j] = 1;
    }
  }
  return balls;
}

}  // namespace duelli
