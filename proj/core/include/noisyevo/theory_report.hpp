#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace noisyevo {

struct TheoryCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Numerical verification of the analytic facts the optimizers rest on:
// misclassification
// monotonicity and bounds, the Gaussian tail inequalities, the exact
// trinomial-sum bounds, the conditional-moment identity, and the drift
// sign. Monte Carlo parts use substreams of the given seed.
std::vector<TheoryCheck> run_theory_checks(std::uint64_t seed = 12345);

// Plain-text pass/fail table, one line per check.
std::string format_theory_report(const std::vector<TheoryCheck>& checks);

bool all_passed(const std::vector<TheoryCheck>& checks);

}  // namespace noisyevo
