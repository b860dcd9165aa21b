#pragma once

// Test-only oracles, independent of the library code they check.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace testsupport {

// erf by Taylor series; converges quickly for |x| <= 3.
inline double erf_series(double x) {
  double term = x;
  double sum = x;
  for (int k = 1; k <= 60; ++k) {
    term *= -x * x / static_cast<double>(k);
    sum += term / static_cast<double>(2 * k + 1);
  }
  return sum * 2.0 / std::sqrt(std::numbers::pi);
}

inline double erfc_series(double x) { return 1.0 - erf_series(x); }

inline double binomial_pmf(int n, int k, double p) {
  double log_choose = 0.0;
  for (int j = 1; j <= k; ++j)
    log_choose += std::log(static_cast<double>(n - k + j)) -
                  std::log(static_cast<double>(j));
  return std::exp(log_choose + k * std::log(p) + (n - k) * std::log1p(-p));
}

inline double mean(const std::vector<double>& values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

inline double sample_variance(const std::vector<double>& values) {
  const double m = mean(values);
  double sum = 0.0;
  for (double v : values) sum += (v - m) * (v - m);
  return sum / static_cast<double>(values.size() - 1);
}

// Pearson statistic against expected counts.
inline double chi_square_stat(const std::vector<double>& observed,
                              const std::vector<double>& expected) {
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double diff = observed[i] - expected[i];
    stat += diff * diff / expected[i];
  }
  return stat;
}

// chi^2 upper critical values at significance 10^-3.
inline constexpr double kChi2Crit999Df12 = 32.90949040736021;
inline constexpr double kChi2Crit999Df31 = 61.098306081058126;
inline constexpr double kChi2Crit999Df63 = 103.44237731987324;

// Kolmogorov critical coefficient at significance 10^-3: D < c / sqrt(N).
inline constexpr double kKolmogorovC999 = 1.9494746035204051;

}  // namespace testsupport
