#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "duelli/geometry.hpp"
#include "duelli/rng.hpp"

namespace duelli {

enum class RewardPreset { kConePeak, kRidge, kCustomTable };

// 1-Lipschitz (l-inf) latent reward on [0,1]^d with a known maximizer.
class RewardFunction {
 public:
  // f(x) = 1 - |x - opt|_inf
  static RewardFunction cone_peak(Point optimum);
  // f(x) = 1 - max over the first k axes of |x_i - opt_i|; flat in the rest.
  static RewardFunction ridge(Point optimum, int active_axes);
  // Lower envelope f(x) = max_i (v_i - |x - p_i|_inf); optimum is the anchor
  // with the largest value.
  static RewardFunction custom_table(std::vector<std::pair<Point, double>> anchors);

  double operator()(const Point& x) const;

  RewardPreset preset() const { return preset_; }
  const Point& optimum() const { return optimum_; }
  int dim() const { return static_cast<int>(optimum_.size()); }
  int active_axes() const { return active_axes_; }

 private:
  RewardFunction() = default;

  RewardPreset preset_ = RewardPreset::kConePeak;
  Point optimum_;
  int active_axes_ = 0;  // ridge only
  std::vector<std::pair<Point, double>> anchors_;  // custom table only
};

enum class TransferKind { kLogistic, kProbit, kLinear, kPolynomial };

// Monotone map from reward difference to preference probability, with a known
// Lipschitz constant gamma. Inputs are clamped to [-1,1] before evaluation.
class TransferFunction {
 public:
  static TransferFunction logistic();
  static TransferFunction probit(double sigma);
  static TransferFunction linear();
  static TransferFunction polynomial(double c, double p);

  double operator()(double z) const;
  double gamma() const { return gamma_; }
  TransferKind kind() const { return kind_; }

 private:
  TransferFunction(TransferKind kind, double gamma) : kind_(kind), gamma_(gamma) {}

  TransferKind kind_;
  double gamma_;
  double sigma_ = 1.0;
  double coeff_ = 0.0;
  double power_ = 1.0;
};

// Dueling environment: P(x beats y) = rho(f(x) - f(y)). Owns its random
// stream, kept disjoint from the learner's.
class DuelOracle {
 public:
  DuelOracle(RewardFunction reward, TransferFunction transfer,
             Rng env_stream = Rng(0))
      : reward_(std::move(reward)),
        transfer_(std::move(transfer)),
        rng_(env_stream) {}

  // Delta(x, y) = P(x beats y) - 1/2; deterministic.
  double gap(const Point& x, const Point& y) const;

  // Delta(x*, x), the regret currency.
  double optimal_gap(const Point& x) const { return gap(reward_.optimum(), x); }

  // Bernoulli duel outcome; consumes exactly one draw from the env stream.
  int duel(const Point& x, const Point& y);

  const RewardFunction& reward() const { return reward_; }
  const TransferFunction& transfer() const { return transfer_; }
  const Point& optimum() const { return reward_.optimum(); }
  std::uint64_t duel_count() const { return duel_count_; }

 private:
  RewardFunction reward_;
  TransferFunction transfer_;
  Rng rng_;
  std::uint64_t duel_count_ = 0;
};

// Greedy estimate of the covering number of the eps-near-optimal set
// {x : Delta(x*, x) <= eps} by l-inf balls of radius eps, over a
// grid_resolution^d grid. Brute-force certificate of the zooming dimension.
long long covering_number(const RewardFunction& reward,
                          const TransferFunction& transfer, double eps,
                          int grid_resolution);

}  // namespace duelli
