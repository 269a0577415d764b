#pragma once

#include <string>
#include <vector>

namespace duelli {

struct CheckResult {
  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;
  std::string relation;  // "<=" or ">=" (statistic vs threshold)
  bool pass = false;
};

// Empirical lemma checks with pinned parameters. Suite ids:
//   transfer       Lipschitz constants of the three links + symmetry
//   sti            stochastic triangle inequality per transfer kind
//   concentration  cube-level estimate concentration
//   no_elim        the optimum's cube survives elimination
//   shrink         surviving cubes are near-optimal
//   memory         recursion depth bounded by the round count
//   all            everything above
std::vector<CheckResult> validate_suite(const std::string& suite_id);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace duelli
