#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "noisyevo/bitstring.hpp"
#include "noisyevo/rng.hpp"

namespace noisyevo {

// Additive posterior noise Z ~ N(0, sigma^2). variance == 0 means the
// evaluation is deterministic OneMax.
struct GaussianNoise {
  explicit GaussianNoise(double variance_) : variance(variance_) {
    if (!(variance >= 0.0))
      throw std::invalid_argument("GaussianNoise: variance must be >= 0");
  }
  double variance;
  double sigma() const;
};

// f_sigma(x) = ||x||_1 + Z with a fresh Z per call; increments the counter.
double noisy_eval(const BitString& x, const GaussianNoise& noise,
                  RandomStream& rng, EvalCounter& counter);

// Pr(Z < -t) for Z ~ N(0, sigma2); equals erfc(t / (sigma sqrt 2)) / 2.
double gaussian_lower_tail(double t, double sigma2);

// The exponential upper bound exp(-t^2 / (2 sigma2)) / 2 on the tail above.
double gaussian_tail_upper_bound(double t, double sigma2);

// Misclassification probability Phi(ell): the chance a noisy comparison
// ranks two points wrongly when their true values differ by ell >= 0.
// Phi(0) = 1/2 by definition; for ell >= 1 it is the lower tail of
// N(0, 2 sigma2) at -ell, i.e. erfc(ell / (2 sigma)) / 2.
double misclassify_prob(std::uint64_t ell, double sigma2);

// ln Phi(ell). Companion used wherever Phi itself underflows double
// precision (ell / sigma large); same quantity, log domain.
double misclassify_log_prob(std::uint64_t ell, double sigma2);

// Phi(ell) tabulated for ell = 0..n at a fixed variance, with the log-domain
// values alongside. Construction verifies Phi(0) = 1/2 and strict decrease.
class MisclassifyCurve {
 public:
  MisclassifyCurve(std::size_t n, double sigma2);

  double sigma2() const { return sigma2_; }
  std::size_t max_distance() const { return values_.size() - 1; }
  double at(std::size_t ell) const { return values_.at(ell); }
  double log_at(std::size_t ell) const { return log_values_.at(ell); }

 private:
  double sigma2_;
  std::vector<double> values_;
  std::vector<double> log_values_;
};

}  // namespace noisyevo
