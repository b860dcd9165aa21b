#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "noisyevo/bitstring.hpp"
#include "noisyevo/noise.hpp"
#include "noisyevo/rng.hpp"

namespace noisyevo {

enum class AlgorithmKind { cga, ea, rerls, no_cga, no_rerls };

const char* algorithm_name(AlgorithmKind kind);
std::optional<AlgorithmKind> algorithm_from_name(std::string_view name);

// Leading constants for the sizing rules; the analysis fixes only the
// asymptotic orders, so these are explicit and overridable.
struct SizingConstants {
  double ck = 1.0;  // population size K
  double cm = 3.0;  // resamples per search point
  double ct = 2.0;  // phase budgets of the noise-oblivious scheme
};

// ceil(ck * max(sigma2, 1) * sqrt(n) * ln n); the K = omega(sigma^2 sqrt(n)
// log n) sizing rule. n >= 2.
std::int64_t default_population_size(double sigma2, int n, double ck = 1.0);

// ceil(cm * (sigma2 + 1) * ln n); the O(sigma^2 log n) resampling rule.
// n >= 2.
std::int64_t default_resamples(double sigma2, int n, double cm = 3.0);

// Evaluation budget of one noise-oblivious cGA phase at variance guess
// sigma2: ceil(ct * K * max(sigma2,1) * sqrt(n) * ln(K n)) iterations,
// times 2 evaluations per iteration.
std::uint64_t cga_phase_budget(double sigma2, int n,
                               const SizingConstants& c = {});

// Evaluation budget of one noise-oblivious reRLS phase: ceil(ct * n ln n)
// accepted-or-not step attempts (plus the initial point), each costing
// default_resamples(sigma2, n) evaluations.
std::uint64_t rerls_phase_budget(double sigma2, int n,
                                 const SizingConstants& c = {});

// One run's problem bundle: dimension, noise law, evaluation budget, and
// the run-owned random stream and call counter. Never shared across runs.
struct BudgetedProblem {
  BudgetedProblem(int n_, GaussianNoise noise_, std::uint64_t budget_,
                  RandomStream rng_)
      : n(n_), noise(noise_), budget(budget_), rng(rng_) {
    if (n < 1) throw std::invalid_argument("BudgetedProblem: n must be >= 1");
    if (budget < 1)
      throw std::invalid_argument("BudgetedProblem: budget must be >= 1");
  }

  std::uint64_t remaining() const { return budget - counter.count(); }

  int n;
  GaussianNoise noise;
  std::uint64_t budget;
  RandomStream rng;
  EvalCounter counter;
};

// cGA marginals (p_1, ..., p_n) with implicit population size K.
// Frequencies are stored as integer numerators over 2K, so every value is
// an exact lattice point reachable from 1/2 by +-1/K steps (clamped at the
// borders). Default borders are 0 and 1, matching the printed algorithm;
// margin mode clamps to the lattice points at or inside [1/n, 1 - 1/n].
class FrequencyVector {
 public:
  FrequencyVector(int n, int K, bool margin = false);

  int n() const { return static_cast<int>(num_.size()); }
  int K() const { return K_; }
  bool margin() const { return lo_ != 0; }

  double probability(int i) const {
    return static_cast<double>(num_[i]) / denom_;
  }
  // Numerator in units of 1/(2K).
  std::int32_t numerator(int i) const { return num_[i]; }

  // +-1/K with border clamping. Returns the realized change in p_i.
  double step_up(int i) { return move(i, +2); }
  double step_down(int i) { return move(i, -2); }

  double min_probability() const;
  double sum_probability() const;
  // X_t = n - sum_i p_i, the potential of the frequency state.
  double potential() const { return n() - sum_probability(); }

 private:
  double move(int i, int delta) {
    std::int32_t next = num_[i] + delta;
    if (next < lo_) next = lo_;
    if (next > hi_) next = hi_;
    const double change = static_cast<double>(next - num_[i]) / denom_;
    num_[i] = next;
    return change;
  }

  int K_;
  double denom_;  // 2K
  std::int32_t lo_, hi_;
  std::vector<std::int32_t> num_;
};

// Product-distribution sample: bit i is 1 with probability p_i.
BitString sample_from_frequencies(const FrequencyVector& freqs,
                                  RandomStream& rng);

// Why an iteration ended.
enum class StepStatus {
  completed,          // full iteration performed
  optimum_generated,  // 1^n appeared among the freshly created genotypes;
                      // the iteration stopped before spending evaluations
  budget_exhausted    // iteration abandoned, no evaluations spent
};

struct CgaStepResult {
  StepStatus status;
  // Sampled pair in winner/loser order per the noisy comparison
  // (meaningful for completed iterations).
  std::optional<BitString> winner;
  std::optional<BitString> loser;
};

// Frequency update given the two sampled strings and their noisy values:
// strict comparison (y wins only when f(x) < f(y)); each differing
// coordinate moves 1/K toward the winner's bit.
void cga_update(FrequencyVector& freqs, const BitString& x, const BitString& y,
                double fx, double fy);

// One cGA iteration: sample x and y, evaluate both (2 calls), update.
CgaStepResult cga_iteration(FrequencyVector& freqs, BudgetedProblem& problem);

// (mu+1) EA population with cached true ones-counts.
class Population {
 public:
  static Population uniform(int mu, int n, RandomStream& rng);

  std::size_t size() const { return members_.size(); }
  const BitString& member(std::size_t i) const { return members_[i]; }
  int ones(std::size_t i) const { return ones_[i]; }
  int max_ones() const;

  void add(BitString x);
  void remove(std::size_t i);

 private:
  std::vector<BitString> members_;
  std::vector<int> ones_;
};

struct EaStepResult {
  StepStatus status;
  std::optional<BitString> offspring;
  std::optional<BitString> removed;  // the individual selection discarded
};

// One (mu+1) EA iteration: uniform parent choice, standard bit mutation at
// rate 1/n, fresh noisy evaluation of all mu+1 individuals (mu+1 calls),
// removal of one noisy-minimal individual with uniform tie-breaking.
EaStepResult ea_iteration(Population& pop, BudgetedProblem& problem);

// Mean of m fresh noisy evaluations of x (m calls). Returns nullopt and
// spends nothing if fewer than m evaluations remain.
std::optional<double> resample_estimate(const BitString& x, std::int64_t m,
                                        BudgetedProblem& problem);

// Resampling local search state: current point plus its cached estimate.
struct RerlsState {
  BitString current;
  double estimate;
};

struct RerlsStepResult {
  StepStatus status;
  std::optional<BitString> candidate;
  bool accepted = false;
};

// One reRLS iteration: flip one uniformly chosen bit, estimate the
// candidate with m resamples, accept on estimate >= cached estimate.
RerlsStepResult rerls_iteration(RerlsState& state, std::int64_t m,
                                BudgetedProblem& problem);

struct CgaConfig {
  std::int64_t K;
  bool margin = false;
  bool track_min_frequency = false;
};

struct EaConfig {
  std::int64_t mu;
};

struct RerlsConfig {
  std::int64_t resamples;
};

using OptimizerConfig = std::variant<CgaConfig, EaConfig, RerlsConfig>;

// What a finished run actually used; variance_guess is set by the
// noise-oblivious scheme only.
struct ParamsUsed {
  AlgorithmKind kind;
  std::int64_t population_size = 0;  // K (cGA family)
  std::int64_t mu = 0;               // (mu+1) EA
  std::int64_t resamples = 0;        // m (reRLS family)
  std::optional<double> variance_guess;
};

struct OptimizerOutcome {
  bool hit = false;
  std::uint64_t evals_at_hit = 0;  // meaningful only when hit
  std::uint64_t evals_total = 0;
  std::uint64_t iterations = 0;
  ParamsUsed params{AlgorithmKind::cga};
  // Minimum marginal frequency observed up to the end of the run
  // (cGA family with tracking enabled; 1.0 otherwise).
  double min_frequency_seen = 1.0;
};

// Runs the configured optimizer until the true optimum 1^n is generated by
// the algorithm's own sampling/mutation (checked noiselessly, not counted
// as an evaluation) or the budget is exhausted.
OptimizerOutcome run_optimizer(const OptimizerConfig& config,
                               BudgetedProblem& problem);

// Phase budget T_delta as a function of the variance guess.
using PhaseBudgetFn = std::function<std::uint64_t(double sigma2_guess)>;

enum class NoiseObliviousInner { cga, rerls };

// Doubling wrapper: for i = 0, 1, 2, ... run a fresh instance sized for
// variance guess 2^i for phase_budget(2^i) evaluations, until a hit or the
// problem budget runs out.
OptimizerOutcome noise_oblivious_run(NoiseObliviousInner inner,
                                     BudgetedProblem& problem,
                                     const PhaseBudgetFn& phase_budget,
                                     const SizingConstants& constants = {},
                                     bool margin = false,
                                     bool track_min_frequency = false);

}  // namespace noisyevo
