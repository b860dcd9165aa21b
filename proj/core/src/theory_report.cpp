#include "noisyevo/theory_report.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "noisyevo/noise.hpp"
#include "noisyevo/optimizers.hpp"
#include "noisyevo/theory.hpp"

namespace noisyevo {

namespace {

std::string describe(double value) {
  std::ostringstream out;
  out.precision(6);
  out << value;
  return out.str();
}

TheoryCheck check_phi_monotone() {
  TheoryCheck check{"phi-monotonicity", true, "sigma2 in {1,10,100}, ell 0..200"};
  for (double sigma2 : {1.0, 10.0, 100.0}) {
    double prev = misclassify_log_prob(0, sigma2);
    for (std::uint64_t ell = 1; ell <= 200; ++ell) {
      const double cur = misclassify_log_prob(ell, sigma2);
      if (!(cur < prev)) {
        check.pass = false;
        check.detail = "not strictly decreasing at sigma2=" +
                       describe(sigma2) + ", ell=" + std::to_string(ell);
        return check;
      }
      prev = cur;
    }
  }
  return check;
}

TheoryCheck check_phi_upper_bound() {
  TheoryCheck check{"phi-upper-bound", true,
                    "Phi(ell) <= exp(-1/(4 sigma2))/2 for ell >= 1"};
  for (double sigma2 : {0.5, 1.0, 4.0, 10.0, 100.0}) {
    const double bound = 0.5 * std::exp(-1.0 / (4.0 * sigma2));
    for (std::uint64_t ell = 1; ell <= 200; ++ell) {
      if (misclassify_prob(ell, sigma2) > bound) {
        check.pass = false;
        check.detail = "violated at sigma2=" + describe(sigma2) +
                       ", ell=" + std::to_string(ell);
        return check;
      }
    }
  }
  return check;
}

TheoryCheck check_tail_dominance() {
  TheoryCheck check{"tail-bound-dominance",
                    true, "lower tail <= exp bound on 20x20 grid"};
  for (int i = 0; i < 20; ++i) {
    const double t = 0.1 + i * (9.9 / 19.0);
    for (int j = 0; j < 20; ++j) {
      const double sigma = 0.5 + j * (9.5 / 19.0);
      const double sigma2 = sigma * sigma;
      if (gaussian_lower_tail(t, sigma2) >
          gaussian_tail_upper_bound(t, sigma2)) {
        check.pass = false;
        check.detail =
            "violated at t=" + describe(t) + ", sigma=" + describe(sigma);
        return check;
      }
    }
  }
  return check;
}

TheoryCheck check_tail_asymptotic() {
  TheoryCheck check{"tail-asymptotic", true,
                    "ratio to sigma/(sqrt(2 pi) t) exp(-t^2/(2 sigma2))"};
  for (double t : {5.0, 6.0, 7.0}) {
    const double tail = gaussian_lower_tail(t, 1.0);
    const double asym = 1.0 / (std::sqrt(2.0 * std::numbers::pi) * t) *
                        std::exp(-t * t / 2.0);
    const double ratio = tail / asym;
    if (!(ratio >= 0.9 && ratio <= 1.0)) {
      check.pass = false;
      check.detail = "ratio " + describe(ratio) + " at t=" + describe(t);
      return check;
    }
  }
  return check;
}

TheoryCheck check_phi_monte_carlo(std::uint64_t seed) {
  TheoryCheck check{"phi-monte-carlo", true,
                    "sampled Pr vs erfc within 4 SE at 10^6 trials"};
  RandomStream rng = RandomStream(seed).child(1);
  int spot = 0;
  for (double sigma2 : {1.0, 10.0}) {
    for (std::uint64_t ell : {0ULL, 1ULL, 2ULL, 4ULL}) {
      RandomStream stream = rng.child(static_cast<std::uint64_t>(spot++));
      const auto mc = monte_carlo_misclassify(ell, sigma2, 1'000'000, stream);
      const double analytic = misclassify_prob(ell, sigma2);
      const double se = std::max(mc.std_error, 1e-12);
      if (std::abs(mc.estimate - analytic) > 4.0 * se) {
        check.pass = false;
        check.detail = "ell=" + std::to_string(ell) + " sigma2=" +
                       describe(sigma2) + ": " + describe(mc.estimate) +
                       " vs " + describe(analytic);
        return check;
      }
    }
  }
  return check;
}

TheoryCheck check_z_bounds(std::uint64_t seed) {
  TheoryCheck check{"z-bounds", true,
                    "500 random p-vectors: Pr(Z=0), E|Z|, parity bounds"};
  RandomStream rng = RandomStream(seed).child(2);
  const double floor = 0.3;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_below(11));  // 2..12
    std::vector<double> p(static_cast<std::size_t>(n));
    double sum_p = 0.0;
    for (auto& pi : p) {
      pi = floor + (1.0 - floor) * rng.next_unit();
      sum_p += pi;
    }
    const auto spec = TrinomialSpec::from_marginals(p);
    const auto dist = z_distribution_exact(spec);
    const double zero_bound = 1.0 / (4.0 * std::sqrt(static_cast<double>(n)));
    const double abs_bound =
        floor * std::sqrt(2.0 / static_cast<double>(n)) *
        (static_cast<double>(n) - sum_p);
    if (dist.zero_prob() + 1e-9 < zero_bound ||
        dist.abs_expectation() + 1e-9 < abs_bound ||
        ZDistribution::even_nonzero_prob(spec) + 1e-9 < 0.5) {
      check.pass = false;
      check.detail = "violated on trial " + std::to_string(trial) +
                     " (n=" + std::to_string(n) + ")";
      return check;
    }
  }
  return check;
}

TheoryCheck check_conditional_moments() {
  TheoryCheck check{"conditional-moment-g", true,
                    "E(|Z| | k nonzero) = g(k) for k = 0..12"};
  std::vector<double> p(12, 0.5);
  const auto spec = TrinomialSpec::from_marginals(p);
  std::vector<int> sizes;
  for (int k = 0; k <= 12; ++k) sizes.push_back(k);
  if (!conditional_abs_expectation_check(sizes, spec, 1e-9)) {
    check.pass = false;
    check.detail = "identity failed";
  }
  return check;
}

TheoryCheck check_drift(std::uint64_t seed) {
  TheoryCheck check{"drift-sign", true,
                    "positive drift at n=16, K=32; smaller at sigma2=4"};
  RandomStream rng = RandomStream(seed).child(3);
  FrequencyVector freqs(16, 32);
  RandomStream r0 = rng.child(0);
  RandomStream r1 = rng.child(1);
  const auto d0 = empirical_drift(freqs, 0.0, 100'000, r0);
  const auto d4 = empirical_drift(freqs, 4.0, 100'000, r1);
  if (!(d0.mean > 5.0 * d0.std_error) || !(d4.mean > 5.0 * d4.std_error)) {
    check.pass = false;
    check.detail = "drift not separated from 0: " + describe(d0.mean) +
                   ", " + describe(d4.mean);
    return check;
  }
  if (!(d4.mean < d0.mean)) {
    check.pass = false;
    check.detail = "drift not decreasing in sigma2";
  }
  return check;
}

TheoryCheck check_pmf_sanity() {
  TheoryCheck check{"pmf-sanity", true,
                    "exact PMF: unit mass and symmetry at n=25"};
  std::vector<double> p(25);
  for (std::size_t i = 0; i < p.size(); ++i)
    p[i] = 0.05 + 0.9 * static_cast<double>(i) / 24.0;
  const auto dist = z_distribution_exact(TrinomialSpec::from_marginals(p));
  if (std::abs(dist.total_mass() - 1.0) > 1e-12) {
    check.pass = false;
    check.detail = "mass " + describe(dist.total_mass());
    return check;
  }
  for (std::int64_t k = 1; k <= 25; ++k) {
    if (std::abs(dist.at(k) - dist.at(-k)) > 1e-12) {
      check.pass = false;
      check.detail = "asymmetry at k=" + std::to_string(k);
      return check;
    }
  }
  return check;
}

}  // namespace

std::vector<TheoryCheck> run_theory_checks(std::uint64_t seed) {
  std::vector<TheoryCheck> checks;
  checks.push_back(check_phi_monotone());
  checks.push_back(check_phi_upper_bound());
  checks.push_back(check_tail_dominance());
  checks.push_back(check_tail_asymptotic());
  checks.push_back(check_phi_monte_carlo(seed));
  checks.push_back(check_z_bounds(seed));
  checks.push_back(check_conditional_moments());
  checks.push_back(check_drift(seed));
  checks.push_back(check_pmf_sanity());
  return checks;
}

std::string format_theory_report(const std::vector<TheoryCheck>& checks) {
  std::size_t width = 0;
  for (const auto& c : checks) width = std::max(width, c.name.size());
  std::string out;
  for (const auto& c : checks) {
    out += c.pass ? "PASS  " : "FAIL  ";
    out += c.name;
    out.append(width - c.name.size() + 2, ' ');
    out += c.detail;
    out += '\n';
  }
  return out;
}

bool all_passed(const std::vector<TheoryCheck>& checks) {
  return std::all_of(checks.begin(), checks.end(),
                     [](const TheoryCheck& c) { return c.pass; });
}

}  // namespace noisyevo
