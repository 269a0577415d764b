#pragma once

#include "duelli/env.hpp"
#include "duelli/learner.hpp"

namespace duelli {

// Duels two independent uniform points each step. Linear-regret calibration.
RegretTrace run_uniform(long long T, DuelOracle& oracle, Rng& rng,
                        const RunOptions& options = {});

// Explore-then-commit on a fixed K^d grid of cube centers: each grid arm is
// dueled against the first grid arm for floor(phi*T/K^d) duels, then the arm
// with the highest empirical win rate is dueled against itself for the rest.
RegretTrace run_grid_etc(long long T, int grid_per_axis, double explore_fraction,
                         DuelOracle& oracle, Rng& rng,
                         const RunOptions& options = {});

}  // namespace duelli
