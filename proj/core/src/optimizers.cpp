#include "noisyevo/optimizers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace noisyevo {

const char* algorithm_name(AlgorithmKind kind) {
  switch (kind) {
    case AlgorithmKind::cga: return "cga";
    case AlgorithmKind::ea: return "ea";
    case AlgorithmKind::rerls: return "rerls";
    case AlgorithmKind::no_cga: return "no-cga";
    case AlgorithmKind::no_rerls: return "no-rerls";
  }
  return "?";
}

std::optional<AlgorithmKind> algorithm_from_name(std::string_view name) {
  if (name == "cga") return AlgorithmKind::cga;
  if (name == "ea") return AlgorithmKind::ea;
  if (name == "rerls") return AlgorithmKind::rerls;
  if (name == "no-cga") return AlgorithmKind::no_cga;
  if (name == "no-rerls") return AlgorithmKind::no_rerls;
  return std::nullopt;
}

std::int64_t default_population_size(double sigma2, int n, double ck) {
  if (n < 2)
    throw std::invalid_argument("default_population_size: n must be >= 2");
  if (!(sigma2 >= 0.0))
    throw std::invalid_argument("default_population_size: sigma2 < 0");
  const double value =
      ck * std::max(sigma2, 1.0) * std::sqrt(static_cast<double>(n)) *
      std::log(static_cast<double>(n));
  if (!(value < 9.0e18))
    throw std::invalid_argument("default_population_size: K overflows");
  return static_cast<std::int64_t>(std::ceil(value));
}

std::int64_t default_resamples(double sigma2, int n, double cm) {
  if (n < 2) throw std::invalid_argument("default_resamples: n must be >= 2");
  if (!(sigma2 >= 0.0))
    throw std::invalid_argument("default_resamples: sigma2 < 0");
  const double value = cm * (sigma2 + 1.0) * std::log(static_cast<double>(n));
  if (!(value < 9.0e18))
    throw std::invalid_argument("default_resamples: m overflows");
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(value)));
}

std::uint64_t cga_phase_budget(double sigma2, int n,
                               const SizingConstants& c) {
  const auto K = default_population_size(sigma2, n, c.ck);
  const double iters = std::ceil(
      c.ct * static_cast<double>(K) * std::max(sigma2, 1.0) *
      std::sqrt(static_cast<double>(n)) *
      std::log(static_cast<double>(K) * static_cast<double>(n)));
  return 2 * static_cast<std::uint64_t>(std::min(iters, 4.5e18));
}

std::uint64_t rerls_phase_budget(double sigma2, int n,
                                 const SizingConstants& c) {
  const auto m = default_resamples(sigma2, n, c.cm);
  const double steps = std::ceil(c.ct * static_cast<double>(n) *
                                 std::log(static_cast<double>(n))) +
                       1.0;  // +1 covers the initial point's estimate
  const double total = steps * static_cast<double>(m);
  return static_cast<std::uint64_t>(std::min(total, 9.0e18));
}

FrequencyVector::FrequencyVector(int n, int K, bool margin) : K_(K) {
  if (n < 1) throw std::invalid_argument("FrequencyVector: n must be >= 1");
  if (K < 1) throw std::invalid_argument("FrequencyVector: K must be >= 1");
  denom_ = 2.0 * static_cast<double>(K);
  if (margin) {
    // Smallest numerator at or above 2K/n; keeps values on the 1/(2K) grid.
    lo_ = static_cast<std::int32_t>((2 * K + n - 1) / n);
    hi_ = 2 * K - lo_;
    if (lo_ > hi_)
      throw std::invalid_argument("FrequencyVector: margin window empty");
  } else {
    lo_ = 0;
    hi_ = 2 * K;
  }
  num_.assign(static_cast<std::size_t>(n), K);  // p_i = 1/2
}

double FrequencyVector::min_probability() const {
  return static_cast<double>(*std::min_element(num_.begin(), num_.end())) /
         denom_;
}

double FrequencyVector::sum_probability() const {
  std::int64_t total = 0;
  for (auto v : num_) total += v;
  return static_cast<double>(total) / denom_;
}

BitString sample_from_frequencies(const FrequencyVector& freqs,
                                  RandomStream& rng) {
  const int n = freqs.n();
  BitString x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    if (rng.next_bernoulli(freqs.probability(i)))
      x.set(static_cast<std::size_t>(i), true);
  return x;
}

void cga_update(FrequencyVector& freqs, const BitString& x, const BitString& y,
                double fx, double fy) {
  // Strict comparison: x keeps the winner role on ties.
  const BitString& winner = (fx < fy) ? y : x;
  const BitString& loser = (fx < fy) ? x : y;
  const int n = freqs.n();
  for (int i = 0; i < n; ++i) {
    const bool wb = winner.bit(static_cast<std::size_t>(i));
    const bool lb = loser.bit(static_cast<std::size_t>(i));
    if (wb == lb) continue;
    if (wb)
      freqs.step_up(i);
    else
      freqs.step_down(i);
  }
}

namespace {

// The step functions below take an explicit evaluation cap so that the
// noise-oblivious wrapper can carve phase budgets out of one shared counter.

CgaStepResult cga_step(FrequencyVector& freqs, BudgetedProblem& problem,
                       std::uint64_t cap) {
  if (problem.counter.count() + 2 > cap)
    return {StepStatus::budget_exhausted, {}, {}};
  BitString x = sample_from_frequencies(freqs, problem.rng);
  BitString y = sample_from_frequencies(freqs, problem.rng);
  if (x.is_all_ones() || y.is_all_ones())
    return {StepStatus::optimum_generated, std::move(x), std::move(y)};
  const double fx = noisy_eval(x, problem.noise, problem.rng, problem.counter);
  const double fy = noisy_eval(y, problem.noise, problem.rng, problem.counter);
  cga_update(freqs, x, y, fx, fy);
  if (fx < fy) std::swap(x, y);
  return {StepStatus::completed, std::move(x), std::move(y)};
}

EaStepResult ea_step(Population& pop, BudgetedProblem& problem,
                     std::uint64_t cap) {
  const std::size_t mu = pop.size();
  if (problem.counter.count() + mu + 1 > cap)
    return {StepStatus::budget_exhausted, {}, {}};
  const auto parent = problem.rng.next_below(mu);
  BitString offspring =
      flip_each_bit(pop.member(parent), 1.0 / problem.n, problem.rng);
  if (offspring.is_all_ones())
    return {StepStatus::optimum_generated, std::move(offspring), {}};
  pop.add(offspring);

  // Fresh noise on every member each round.
  const std::size_t count = mu + 1;
  std::vector<double> values(count);
  for (std::size_t i = 0; i < count; ++i)
    values[i] =
        noisy_eval(pop.member(i), problem.noise, problem.rng, problem.counter);
  const double worst = *std::min_element(values.begin(), values.end());
  std::vector<std::size_t> minimizers;
  for (std::size_t i = 0; i < count; ++i)
    if (values[i] == worst) minimizers.push_back(i);
  const std::size_t victim =
      minimizers[problem.rng.next_below(minimizers.size())];
  BitString removed = pop.member(victim);
  pop.remove(victim);
  return {StepStatus::completed, std::move(offspring), std::move(removed)};
}

RerlsStepResult rerls_step(RerlsState& state, std::int64_t m,
                           BudgetedProblem& problem, std::uint64_t cap) {
  if (problem.counter.count() + static_cast<std::uint64_t>(m) > cap)
    return {StepStatus::budget_exhausted, {}, false};
  BitString candidate = flip_one_bit(state.current, problem.rng);
  if (candidate.is_all_ones())
    return {StepStatus::optimum_generated, std::move(candidate), true};
  const auto estimate = resample_estimate(candidate, m, problem);
  if (!estimate) return {StepStatus::budget_exhausted, {}, false};
  const bool accepted = *estimate >= state.estimate;
  if (accepted) {
    state.current = candidate;
    state.estimate = *estimate;
  }
  return {StepStatus::completed, std::move(candidate), accepted};
}

}  // namespace

CgaStepResult cga_iteration(FrequencyVector& freqs, BudgetedProblem& problem) {
  return cga_step(freqs, problem, problem.budget);
}

Population Population::uniform(int mu, int n, RandomStream& rng) {
  Population pop;
  pop.members_.reserve(static_cast<std::size_t>(mu));
  pop.ones_.reserve(static_cast<std::size_t>(mu));
  for (int i = 0; i < mu; ++i)
    pop.add(BitString::uniform(static_cast<std::size_t>(n), rng));
  return pop;
}

int Population::max_ones() const {
  return *std::max_element(ones_.begin(), ones_.end());
}

void Population::add(BitString x) {
  ones_.push_back(static_cast<int>(x.ones_count()));
  members_.push_back(std::move(x));
}

void Population::remove(std::size_t i) {
  members_.erase(members_.begin() + static_cast<std::ptrdiff_t>(i));
  ones_.erase(ones_.begin() + static_cast<std::ptrdiff_t>(i));
}

EaStepResult ea_iteration(Population& pop, BudgetedProblem& problem) {
  return ea_step(pop, problem, problem.budget);
}

std::optional<double> resample_estimate(const BitString& x, std::int64_t m,
                                        BudgetedProblem& problem) {
  if (m < 1) throw std::invalid_argument("resample_estimate: m must be >= 1");
  if (problem.remaining() < static_cast<std::uint64_t>(m)) return std::nullopt;
  double sum = 0.0;
  for (std::int64_t i = 0; i < m; ++i)
    sum += noisy_eval(x, problem.noise, problem.rng, problem.counter);
  return sum / static_cast<double>(m);
}

RerlsStepResult rerls_iteration(RerlsState& state, std::int64_t m,
                                BudgetedProblem& problem) {
  return rerls_step(state, m, problem, problem.budget);
}

namespace {

struct RunTracker {
  bool hit = false;
  std::uint64_t evals_at_hit = 0;

  void record_hit(const EvalCounter& counter) {
    if (!hit) {
      hit = true;
      evals_at_hit = counter.count();
    }
  }
};

OptimizerOutcome run_cga(const CgaConfig& config, BudgetedProblem& problem,
                         std::uint64_t eval_cap) {
  if (config.K < 1)
    throw std::invalid_argument("run_optimizer: K must be >= 1");
  if (config.K > (std::int64_t{1} << 30))
    throw std::invalid_argument("run_optimizer: K too large");
  OptimizerOutcome out;
  out.params = ParamsUsed{AlgorithmKind::cga};
  out.params.population_size = config.K;
  FrequencyVector freqs(problem.n, static_cast<int>(config.K), config.margin);
  RunTracker tracker;
  const std::uint64_t cap = std::min(eval_cap, problem.budget);
  double min_freq = config.track_min_frequency ? freqs.min_probability() : 1.0;
  while (true) {
    const CgaStepResult step = cga_step(freqs, problem, cap);
    if (step.status == StepStatus::budget_exhausted) break;
    if (step.status == StepStatus::optimum_generated) {
      tracker.record_hit(problem.counter);
      break;
    }
    ++out.iterations;
    if (config.track_min_frequency)
      min_freq = std::min(min_freq, freqs.min_probability());
  }
  out.hit = tracker.hit;
  out.evals_at_hit = tracker.evals_at_hit;
  out.evals_total = problem.counter.count();
  out.min_frequency_seen = min_freq;
  return out;
}

OptimizerOutcome run_ea(const EaConfig& config, BudgetedProblem& problem,
                        std::uint64_t eval_cap) {
  if (config.mu < 1)
    throw std::invalid_argument("run_optimizer: mu must be >= 1");
  OptimizerOutcome out;
  out.params = ParamsUsed{AlgorithmKind::ea};
  out.params.mu = config.mu;
  const std::uint64_t cap = std::min(eval_cap, problem.budget);
  Population pop = Population::uniform(static_cast<int>(config.mu), problem.n,
                                       problem.rng);
  RunTracker tracker;
  for (std::size_t i = 0; i < pop.size(); ++i)
    if (pop.member(i).is_all_ones()) tracker.record_hit(problem.counter);
  while (!tracker.hit) {
    const EaStepResult step = ea_step(pop, problem, cap);
    if (step.status == StepStatus::budget_exhausted) break;
    if (step.status == StepStatus::optimum_generated) {
      tracker.record_hit(problem.counter);
      break;
    }
    ++out.iterations;
  }
  out.hit = tracker.hit;
  out.evals_at_hit = tracker.evals_at_hit;
  out.evals_total = problem.counter.count();
  return out;
}

OptimizerOutcome run_rerls(const RerlsConfig& config, BudgetedProblem& problem,
                           std::uint64_t eval_cap) {
  if (config.resamples < 1)
    throw std::invalid_argument("run_optimizer: resamples must be >= 1");
  OptimizerOutcome out;
  out.params = ParamsUsed{AlgorithmKind::rerls};
  out.params.resamples = config.resamples;
  const std::uint64_t cap = std::min(eval_cap, problem.budget);
  RunTracker tracker;
  BitString start =
      BitString::uniform(static_cast<std::size_t>(problem.n), problem.rng);
  if (start.is_all_ones()) {
    tracker.record_hit(problem.counter);
  } else if (problem.counter.count() +
                 static_cast<std::uint64_t>(config.resamples) <=
             cap) {
    RerlsState state{std::move(start), 0.0};
    state.estimate = *resample_estimate(state.current, config.resamples,
                                        problem);
    while (!tracker.hit) {
      const RerlsStepResult step =
          rerls_step(state, config.resamples, problem, cap);
      if (step.status == StepStatus::budget_exhausted) break;
      if (step.status == StepStatus::optimum_generated) {
        tracker.record_hit(problem.counter);
        break;
      }
      ++out.iterations;
    }
  }
  out.hit = tracker.hit;
  out.evals_at_hit = tracker.evals_at_hit;
  out.evals_total = problem.counter.count();
  return out;
}

OptimizerOutcome run_with_cap(const OptimizerConfig& config,
                              BudgetedProblem& problem,
                              std::uint64_t eval_cap) {
  return std::visit(
      [&](const auto& cfg) -> OptimizerOutcome {
        using T = std::decay_t<decltype(cfg)>;
        if constexpr (std::is_same_v<T, CgaConfig>)
          return run_cga(cfg, problem, eval_cap);
        else if constexpr (std::is_same_v<T, EaConfig>)
          return run_ea(cfg, problem, eval_cap);
        else
          return run_rerls(cfg, problem, eval_cap);
      },
      config);
}

}  // namespace

OptimizerOutcome run_optimizer(const OptimizerConfig& config,
                               BudgetedProblem& problem) {
  return run_with_cap(config, problem, problem.budget);
}

OptimizerOutcome noise_oblivious_run(NoiseObliviousInner inner,
                                     BudgetedProblem& problem,
                                     const PhaseBudgetFn& phase_budget,
                                     const SizingConstants& constants,
                                     bool margin, bool track_min_frequency) {
  OptimizerOutcome total;
  total.params = ParamsUsed{inner == NoiseObliviousInner::cga
                                ? AlgorithmKind::no_cga
                                : AlgorithmKind::no_rerls};
  double guess = 1.0;
  while (problem.remaining() > 0) {
    // Sizing for this guess; stop escalating once the parameter no longer
    // fits (the remaining budget cannot run such a phase anyway).
    std::int64_t size_param;
    if (inner == NoiseObliviousInner::cga) {
      const double k_real = constants.ck * std::max(guess, 1.0) *
                            std::sqrt(static_cast<double>(problem.n)) *
                            std::log(static_cast<double>(problem.n));
      if (k_real > 1e9) break;
      size_param = default_population_size(guess, problem.n, constants.ck);
    } else {
      const double m_real = constants.cm * (guess + 1.0) *
                            std::log(static_cast<double>(problem.n));
      if (m_real > 1e9) break;
      size_param = default_resamples(guess, problem.n, constants.cm);
    }
    const std::uint64_t phase = std::max<std::uint64_t>(phase_budget(guess), 1);
    const std::uint64_t cap =
        std::min(problem.budget, problem.counter.count() + phase);

    OptimizerOutcome phase_out;
    if (inner == NoiseObliviousInner::cga) {
      phase_out = run_cga(CgaConfig{size_param, margin, track_min_frequency},
                          problem, cap);
      total.params.population_size = size_param;
    } else {
      phase_out = run_rerls(RerlsConfig{size_param}, problem, cap);
      total.params.resamples = size_param;
    }
    total.iterations += phase_out.iterations;
    total.params.variance_guess = guess;
    total.min_frequency_seen = phase_out.min_frequency_seen;
    if (phase_out.hit) {
      total.hit = true;
      total.evals_at_hit = phase_out.evals_at_hit;
      break;
    }
    guess *= 2.0;
  }
  total.evals_total = problem.counter.count();
  return total;
}

}  // namespace noisyevo
