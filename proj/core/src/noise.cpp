#include "noisyevo/noise.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace noisyevo {

double GaussianNoise::sigma() const { return std::sqrt(variance); }

double noisy_eval(const BitString& x, const GaussianNoise& noise,
                  RandomStream& rng, EvalCounter& counter) {
  counter.increment();
  const double value = static_cast<double>(x.ones_count());
  if (noise.variance == 0.0) return value;
  return value + noise.sigma() * rng.next_gaussian();
}

double gaussian_lower_tail(double t, double sigma2) {
  if (!(t > 0.0) || !(sigma2 > 0.0))
    throw std::invalid_argument("gaussian_lower_tail: need t > 0, sigma2 > 0");
  return 0.5 * std::erfc(t / (std::sqrt(sigma2) * std::numbers::sqrt2));
}

double gaussian_tail_upper_bound(double t, double sigma2) {
  if (!(t > 0.0) || !(sigma2 > 0.0))
    throw std::invalid_argument(
        "gaussian_tail_upper_bound: need t > 0, sigma2 > 0");
  return 0.5 * std::exp(-t * t / (2.0 * sigma2));
}

double misclassify_prob(std::uint64_t ell, double sigma2) {
  if (!(sigma2 > 0.0))
    throw std::invalid_argument("misclassify_prob: sigma2 must be > 0");
  if (ell == 0) return 0.5;
  // Lower tail of N(0, 2 sigma^2) at -ell.
  return 0.5 * std::erfc(static_cast<double>(ell) / (2.0 * std::sqrt(sigma2)));
}

namespace {

// Scaled complementary error function erfcx(z) = exp(z^2) erfc(z) for large
// z, via the Laplace continued fraction
//   sqrt(pi) exp(z^2) erfc(z) = 1 / (z + (1/2)/(z + 1/(z + (3/2)/(z + ...))))
// evaluated with the modified Lentz algorithm. Converges to machine
// precision in a handful of terms once z is above ~6; only used beyond the
// range where erfc itself is representable.
double erfcx_large(double z) {
  const double tiny = 1e-300;
  double f = tiny;
  double c = f;
  double d = 0.0;
  for (int k = 0; k < 200; ++k) {
    const double a = (k == 0) ? 1.0 : 0.5 * k;
    const double b = z;
    d = b + a * d;
    if (d == 0.0) d = tiny;
    c = b + a / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return f / std::sqrt(std::numbers::pi);
}

}  // namespace

double misclassify_log_prob(std::uint64_t ell, double sigma2) {
  if (!(sigma2 > 0.0))
    throw std::invalid_argument("misclassify_log_prob: sigma2 must be > 0");
  if (ell == 0) return std::log(0.5);
  const double z = static_cast<double>(ell) / (2.0 * std::sqrt(sigma2));
  if (z <= 25.0) return std::log(0.5 * std::erfc(z));
  return std::log(0.5) + std::log(erfcx_large(z)) - z * z;
}

MisclassifyCurve::MisclassifyCurve(std::size_t n, double sigma2)
    : sigma2_(sigma2) {
  if (!(sigma2 > 0.0))
    throw std::invalid_argument("MisclassifyCurve: sigma2 must be > 0");
  values_.reserve(n + 1);
  log_values_.reserve(n + 1);
  for (std::size_t ell = 0; ell <= n; ++ell) {
    values_.push_back(misclassify_prob(ell, sigma2));
    log_values_.push_back(misclassify_log_prob(ell, sigma2));
    if (ell > 0 && !(log_values_[ell] < log_values_[ell - 1]))
      throw std::logic_error("MisclassifyCurve: Phi not strictly decreasing");
  }
}

}  // namespace noisyevo
