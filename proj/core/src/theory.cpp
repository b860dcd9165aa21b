#include "noisyevo/theory.hpp"

#include <cmath>

namespace noisyevo {

namespace {

constexpr std::size_t kExactConvolutionCap = 25;

// Compensated (Kahan) accumulator; the exact-PMF checks run at 1e-9
// tolerance, comfortably above what this leaves behind at n <= 25.
class KahanSum {
 public:
  void add(double value) {
    const double y = value - compensation_;
    const double t = sum_ + y;
    compensation_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace

TrinomialSpec TrinomialSpec::from_marginals(std::span<const double> p) {
  std::vector<double> q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] >= 0.0 && p[i] <= 1.0))
      throw std::invalid_argument("TrinomialSpec: p_i must be in [0,1]");
    q[i] = p[i] * (1.0 - p[i]);
  }
  return TrinomialSpec(std::move(q));
}

TrinomialSpec::TrinomialSpec(std::vector<double> q) : q_(std::move(q)) {
  if (q_.empty()) throw std::invalid_argument("TrinomialSpec: empty");
  for (double qi : q_)
    if (!(qi >= 0.0 && qi <= 0.25))
      throw std::invalid_argument("TrinomialSpec: q_i must be in [0, 1/4]");
}

double ZDistribution::total_mass() const {
  KahanSum sum;
  for (double m : mass_) sum.add(m);
  return sum.value();
}

double ZDistribution::abs_expectation() const {
  KahanSum sum;
  const auto half = static_cast<std::int64_t>(n_);
  for (std::int64_t k = -half; k <= half; ++k)
    sum.add(static_cast<double>(std::abs(k)) * at(k));
  return sum.value();
}

double ZDistribution::even_nonzero_prob(const TrinomialSpec& spec) {
  // Pr(xi even) = (1 + prod(1 - 2 q'_i)) / 2 with q'_i = 2 q_i the
  // nonzero probability of coordinate i.
  double prod = 1.0;
  for (std::size_t i = 0; i < spec.size(); ++i)
    prod *= 1.0 - 4.0 * spec.q(i);
  return 0.5 * (1.0 + prod);
}

ZDistribution z_distribution_exact(const TrinomialSpec& spec) {
  const std::size_t n = spec.size();
  if (n > kExactConvolutionCap)
    throw std::invalid_argument("z_distribution_exact: n > 25");
  ZDistribution dist(n);
  dist.at_mut(0) = 1.0;
  // Convolve coordinate by coordinate over the widening support.
  std::int64_t radius = 0;
  std::vector<double> next(2 * n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double q = spec.q(i);
    const double stay = 1.0 - 2.0 * q;
    std::fill(next.begin(), next.end(), 0.0);
    for (std::int64_t k = -radius; k <= radius; ++k) {
      const double mass = dist.at(k);
      if (mass == 0.0) continue;
      const std::size_t base =
          static_cast<std::size_t>(k + static_cast<std::int64_t>(n));
      next[base - 1] += mass * q;
      next[base] += mass * stay;
      next[base + 1] += mass * q;
    }
    ++radius;
    for (std::int64_t k = -radius; k <= radius; ++k)
      dist.at_mut(k) =
          next[static_cast<std::size_t>(k + static_cast<std::int64_t>(n))];
  }
  return dist;
}

double z_zero_prob(const TrinomialSpec& spec) {
  return z_distribution_exact(spec).zero_prob();
}

double z_abs_expectation(const TrinomialSpec& spec) {
  return z_distribution_exact(spec).abs_expectation();
}

double central_moment_g(int k) {
  if (k < 0) throw std::invalid_argument("central_moment_g: k must be >= 0");
  if (k > 60) throw std::invalid_argument("central_moment_g: k > 60");
  if (k == 0) return 0.0;
  const int m = (k + 1) / 2;  // ceil(k/2)
  // binom(2m, m) 4^-m as the product of (2j-1)/(2j); stays in range for
  // every admissible k.
  double ratio = 1.0;
  for (int j = 1; j <= m; ++j)
    ratio *= static_cast<double>(2 * j - 1) / static_cast<double>(2 * j);
  return 2.0 * static_cast<double>(m) * ratio;
}

bool conditional_abs_expectation_check(std::span<const int> sizes,
                                       const TrinomialSpec& spec,
                                       double tol) {
  if (spec.size() > 20)
    throw std::invalid_argument("conditional_abs_expectation_check: n > 20");
  for (int k : sizes) {
    if (k < 0 || static_cast<std::size_t>(k) > spec.size())
      throw std::invalid_argument(
          "conditional_abs_expectation_check: k outside [0, n]");
    // Conditioned on exactly the coordinates of a size-k subset being
    // nonzero, each is an independent fair sign, so the conditional law of
    // Z is a k-step symmetric random walk regardless of the subset or q.
    std::vector<double> walk(2 * static_cast<std::size_t>(k) + 1, 0.0);
    walk[static_cast<std::size_t>(k)] = 1.0;  // offset by +k
    std::vector<double> next(walk.size(), 0.0);
    for (int step = 0; step < k; ++step) {
      std::fill(next.begin(), next.end(), 0.0);
      for (std::size_t j = 0; j < walk.size(); ++j) {
        if (walk[j] == 0.0) continue;
        if (j > 0) next[j - 1] += 0.5 * walk[j];
        if (j + 1 < walk.size()) next[j + 1] += 0.5 * walk[j];
      }
      walk.swap(next);
    }
    KahanSum expectation;
    for (std::size_t j = 0; j < walk.size(); ++j)
      expectation.add(std::abs(static_cast<double>(j) - k) * walk[j]);
    if (std::abs(expectation.value() - central_moment_g(k)) > tol)
      return false;
  }
  return true;
}

DriftEstimate empirical_drift(const FrequencyVector& freqs, double sigma2,
                              std::uint64_t trials, RandomStream& rng) {
  if (trials < 1000)
    throw std::invalid_argument("empirical_drift: trials must be >= 1000");
  if (!(sigma2 >= 0.0))
    throw std::invalid_argument("empirical_drift: sigma2 < 0");
  DriftEstimate result;
  result.min_frequency = freqs.min_probability();
  result.hypothesis_ok = result.min_frequency > 0.0;

  const int n = freqs.n();
  const double sigma = std::sqrt(sigma2);
  const double denom = 2.0 * static_cast<double>(freqs.K());
  const std::int32_t hi = 2 * freqs.K();
  KahanSum sum, sum_sq;
  for (std::uint64_t t = 0; t < trials; ++t) {
    // One simulated iteration from the fixed state; X_t - X_{t+1} equals the
    // total signed frequency movement, border truncation included.
    double delta_sum_p = 0.0;
    std::int64_t diff = 0;  // ||x||_1 - ||y||_1
    // Walk coordinates, sampling both offspring bits.
    thread_local std::vector<std::int8_t> moves;
    moves.assign(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
      const double p = freqs.probability(i);
      const bool xi = rng.next_bernoulli(p);
      const bool yi = rng.next_bernoulli(p);
      if (xi == yi) continue;
      moves[static_cast<std::size_t>(i)] = xi ? 1 : -1;
      diff += xi ? 1 : -1;
    }
    const double fx = static_cast<double>(diff) +
                      (sigma2 == 0.0 ? 0.0 : sigma * rng.next_gaussian());
    const double fy = sigma2 == 0.0 ? 0.0 : sigma * rng.next_gaussian();
    const bool x_wins = !(fx < fy);
    for (int i = 0; i < n; ++i) {
      const int move = moves[static_cast<std::size_t>(i)];
      if (move == 0) continue;
      const bool toward_one = x_wins ? (move > 0) : (move < 0);
      const std::int32_t num = freqs.numerator(i);
      std::int32_t next = num + (toward_one ? 2 : -2);
      if (next < 0) next = 0;
      if (next > hi) next = hi;
      delta_sum_p += static_cast<double>(next - num) / denom;
    }
    sum.add(delta_sum_p);
    sum_sq.add(delta_sum_p * delta_sum_p);
  }
  const double mean = sum.value() / static_cast<double>(trials);
  const double var =
      (sum_sq.value() / static_cast<double>(trials) - mean * mean) *
      static_cast<double>(trials) / static_cast<double>(trials - 1);
  result.mean = mean;
  result.std_error = std::sqrt(std::max(var, 0.0) /
                               static_cast<double>(trials));
  return result;
}

MonteCarloEstimate monte_carlo_misclassify(std::uint64_t ell, double sigma2,
                                           std::uint64_t trials,
                                           RandomStream& rng) {
  if (trials < 10000)
    throw std::invalid_argument("monte_carlo_misclassify: trials < 10^4");
  if (!(sigma2 >= 0.0))
    throw std::invalid_argument("monte_carlo_misclassify: sigma2 < 0");
  const double sigma = std::sqrt(sigma2);
  const double distance = static_cast<double>(ell);
  std::uint64_t wrong = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const double z1 = sigma * rng.next_gaussian();
    const double z2 = sigma * rng.next_gaussian();
    if (distance + (z1 - z2) < 0.0) ++wrong;
  }
  const double estimate =
      static_cast<double>(wrong) / static_cast<double>(trials);
  const double std_error = std::sqrt(
      estimate * (1.0 - estimate) / static_cast<double>(trials));
  return {estimate, std_error};
}

}  // namespace noisyevo
