#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "noisyevo/optimizers.hpp"
#include "noisyevo/rng.hpp"

namespace noisyevo {

// Per-coordinate law of Z_i in the offspring-difference variable
// Z = Z_1 + ... + Z_n: each Z_i is +1 and -1 with probability
// q_i = p_i (1 - p_i), and 0 otherwise. q_i <= 1/4 always.
class TrinomialSpec {
 public:
  // Build from cGA marginals p_i.
  static TrinomialSpec from_marginals(std::span<const double> p);
  // Build from the q_i directly (each must lie in [0, 1/4]).
  explicit TrinomialSpec(std::vector<double> q);

  std::size_t size() const { return q_.size(); }
  double q(std::size_t i) const { return q_[i]; }

 private:
  std::vector<double> q_;
};

// Exact PMF of Z over support {-n, ..., n}. value(k) is Pr(Z = k).
class ZDistribution {
 public:
  explicit ZDistribution(std::size_t n) : n_(n), mass_(2 * n + 1, 0.0) {}

  std::size_t n() const { return n_; }
  double at(std::int64_t k) const {
    return mass_.at(static_cast<std::size_t>(k + static_cast<std::int64_t>(n_)));
  }
  double& at_mut(std::int64_t k) {
    return mass_.at(static_cast<std::size_t>(k + static_cast<std::int64_t>(n_)));
  }
  double total_mass() const;
  double zero_prob() const { return at(0); }
  double abs_expectation() const;
  // Pr(|{i : Z_i != 0}| is even), needed for the even-parity proof step;
  // computed from the q_i via the probability generating function.
  static double even_nonzero_prob(const TrinomialSpec& spec);

 private:
  std::size_t n_;
  std::vector<double> mass_;
};

// Exact PMF by iterated convolution of the n trinomials. n <= 25.
ZDistribution z_distribution_exact(const TrinomialSpec& spec);

double z_zero_prob(const TrinomialSpec& spec);
double z_abs_expectation(const TrinomialSpec& spec);

// g(k) = 2 ceil(k/2) binom(2 ceil(k/2), ceil(k/2)) 2^(-2 ceil(k/2));
// the conditional E|Z| given exactly k coordinates nonzero. k <= 60.
double central_moment_g(int k);

// Verifies, for every k in sizes, that E(|Z| | exactly k coordinates
// nonzero) computed from the exact conditional PMF equals g(k) within tol.
bool conditional_abs_expectation_check(std::span<const int> sizes,
                                       const TrinomialSpec& spec,
                                       double tol = 1e-9);

struct DriftEstimate {
  double mean = 0.0;       // average one-step decrease of X_t
  double std_error = 0.0;
  bool hypothesis_ok = true;  // all p_i > 0 (the frequency-floor assumption)
  double min_frequency = 1.0;
};

// Monte Carlo estimate of E(X_t - X_{t+1}) for one cGA iteration started
// from the given frequency state. trials >= 1000.
DriftEstimate empirical_drift(const FrequencyVector& freqs, double sigma2,
                              std::uint64_t trials, RandomStream& rng);

struct MonteCarloEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

// Frequency of ell + (Z1 - Z2) < 0 with Z1, Z2 independent N(0, sigma2);
// the sampling route to Phi(ell). trials >= 10^4.
MonteCarloEstimate monte_carlo_misclassify(std::uint64_t ell, double sigma2,
                                           std::uint64_t trials,
                                           RandomStream& rng);

}  // namespace noisyevo
