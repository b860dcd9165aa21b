#include "noisyevo/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace noisyevo {

void validate_config(const ExperimentConfig& config) {
  if (config.runs < 1)
    throw std::invalid_argument("run_experiment: runs must be >= 1");
  if (config.budget < 1)
    throw std::invalid_argument("run_experiment: budget must be >= 1");
  if (config.n < 1)
    throw std::invalid_argument("run_experiment: n must be >= 1");
  if (!(config.sigma2 >= 0.0))
    throw std::invalid_argument("run_experiment: sigma2 must be >= 0");

  switch (config.algo) {
    case AlgorithmKind::cga:
    case AlgorithmKind::no_cga:
      if (config.mu || config.resamples)
        throw std::invalid_argument(
            "run_experiment: mu/resamples do not apply to the cGA family");
      break;
    case AlgorithmKind::ea:
      if (config.population_size || config.resamples)
        throw std::invalid_argument(
            "run_experiment: K/resamples do not apply to the EA");
      break;
    case AlgorithmKind::rerls:
    case AlgorithmKind::no_rerls:
      if (config.population_size || config.mu)
        throw std::invalid_argument(
            "run_experiment: K/mu do not apply to the reRLS family");
      break;
  }
  if (config.algo == AlgorithmKind::no_cga && config.population_size)
    throw std::invalid_argument(
        "run_experiment: the noise-oblivious scheme sizes K itself");
  if (config.algo == AlgorithmKind::no_rerls && config.resamples)
    throw std::invalid_argument(
        "run_experiment: the noise-oblivious scheme sizes m itself");
  // Auto sizing needs the defaults, which require n >= 2.
  const bool manual = (config.algo == AlgorithmKind::cga &&
                       config.population_size.has_value()) ||
                      (config.algo == AlgorithmKind::ea) ||
                      (config.algo == AlgorithmKind::rerls &&
                       config.resamples.has_value());
  if (!manual && config.n < 2)
    throw std::invalid_argument(
        "run_experiment: auto sizing requires n >= 2; pass parameters "
        "explicitly for n = 1");
  if (config.algo == AlgorithmKind::ea && !config.mu)
    throw std::invalid_argument("run_experiment: the EA needs mu");
}

namespace {

RunRecord execute_one(const ExperimentConfig& config, int run_index) {
  const std::uint64_t seed = mix_seed(config.master_seed,
                                      static_cast<std::uint64_t>(run_index));
  BudgetedProblem problem(config.n, GaussianNoise(config.sigma2),
                          config.budget, RandomStream(seed));
  OptimizerOutcome outcome;
  switch (config.algo) {
    case AlgorithmKind::cga: {
      const std::int64_t K =
          config.population_size
              ? *config.population_size
              : default_population_size(config.sigma2, config.n,
                                        config.constants.ck);
      outcome = run_optimizer(
          CgaConfig{K, config.margin, config.record_min_frequency}, problem);
      break;
    }
    case AlgorithmKind::ea:
      outcome = run_optimizer(EaConfig{*config.mu}, problem);
      break;
    case AlgorithmKind::rerls: {
      const std::int64_t m =
          config.resamples ? *config.resamples
                           : default_resamples(config.sigma2, config.n,
                                               config.constants.cm);
      outcome = run_optimizer(RerlsConfig{m}, problem);
      break;
    }
    case AlgorithmKind::no_cga: {
      const SizingConstants c = config.constants;
      const int n = config.n;
      outcome = noise_oblivious_run(
          NoiseObliviousInner::cga, problem,
          [c, n](double guess) { return cga_phase_budget(guess, n, c); }, c,
          config.margin, config.record_min_frequency);
      break;
    }
    case AlgorithmKind::no_rerls: {
      const SizingConstants c = config.constants;
      const int n = config.n;
      outcome = noise_oblivious_run(
          NoiseObliviousInner::rerls, problem,
          [c, n](double guess) { return rerls_phase_budget(guess, n, c); },
          c);
      break;
    }
  }

  RunRecord record;
  record.run_index = run_index;
  record.seed = seed;
  record.hit = outcome.hit;
  record.evals_at_hit = outcome.evals_at_hit;
  record.evals_total = outcome.evals_total;
  record.min_frequency_seen = outcome.min_frequency_seen;
  switch (config.algo) {
    case AlgorithmKind::cga:
      record.param = static_cast<double>(outcome.params.population_size);
      break;
    case AlgorithmKind::ea:
      record.param = static_cast<double>(outcome.params.mu);
      break;
    case AlgorithmKind::rerls:
      record.param = static_cast<double>(outcome.params.resamples);
      break;
    case AlgorithmKind::no_cga:
    case AlgorithmKind::no_rerls:
      record.param = outcome.params.variance_guess.value_or(0.0);
      break;
  }
  return record;
}

// The companion figures want K for the cGA family and the per-point
// resample count for the reRLS family, whatever `param` records.
double sizing_value(const ExperimentConfig& config, const RunRecord& record) {
  switch (config.algo) {
    case AlgorithmKind::cga:
    case AlgorithmKind::ea:
    case AlgorithmKind::rerls:
      return record.param;
    case AlgorithmKind::no_cga:
      return static_cast<double>(default_population_size(
          record.param, config.n, config.constants.ck));
    case AlgorithmKind::no_rerls:
      return static_cast<double>(
          default_resamples(record.param, config.n, config.constants.cm));
  }
  return record.param;
}

}  // namespace

std::vector<RunRecord> run_experiment(const ExperimentConfig& config) {
  validate_config(config);
  std::vector<RunRecord> records(static_cast<std::size_t>(config.runs));
  unsigned workers = config.threads > 0
                         ? static_cast<unsigned>(config.threads)
                         : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers,
                               static_cast<unsigned>(config.runs));
  if (workers <= 1) {
    for (int i = 0; i < config.runs; ++i)
      records[static_cast<std::size_t>(i)] = execute_one(config, i);
    return records;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      while (true) {
        const int i = next.fetch_add(1);
        if (i >= config.runs) break;
        records[static_cast<std::size_t>(i)] = execute_one(config, i);
      }
    });
  for (auto& t : pool) t.join();
  return records;
}

double percentile(std::vector<double> values, double q) {
  if (values.empty())
    throw std::invalid_argument("percentile: empty value list");
  if (!(q >= 0.0 && q <= 1.0))
    throw std::invalid_argument("percentile: q must be in [0,1]");
  std::sort(values.begin(), values.end());
  const double h = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(h);
  if (lo + 1 >= values.size()) return values.back();
  const double frac = h - static_cast<double>(lo);
  return values[lo] + frac * (values[lo + 1] - values[lo]);
}

SummaryRow summarize(const std::vector<RunRecord>& records, double x) {
  if (records.empty())
    throw std::invalid_argument("summarize: need at least one record");
  SummaryRow row;
  row.x = x;
  row.runs = static_cast<int>(records.size());
  std::vector<double> costs;
  costs.reserve(records.size());
  for (const auto& r : records)
    if (r.hit) costs.push_back(static_cast<double>(r.evals_at_hit));
  row.hits = static_cast<int>(costs.size());
  if (costs.empty()) {
    row.med = row.lq = row.uq = std::numeric_limits<double>::quiet_NaN();
  } else {
    row.med = percentile(costs, 0.5);
    row.lq = percentile(costs, 0.25);
    row.uq = percentile(costs, 0.75);
  }
  return row;
}

SweepResult sweep(SweepAxis axis, const std::vector<double>& grid,
                  const ExperimentConfig& base) {
  if (grid.empty()) throw std::invalid_argument("sweep: empty grid");
  SweepResult result;
  result.evals.reserve(grid.size());
  result.params.reserve(grid.size());
  for (double value : grid) {
    ExperimentConfig config = base;
    if (axis == SweepAxis::variance) {
      config.sigma2 = value;
    } else {
      config.n = static_cast<int>(value);
      config.sigma2 = std::sqrt(static_cast<double>(config.n));
    }
    try {
      const auto records = run_experiment(config);
      SummaryRow erow = summarize(records, value);
      erow.sigma2 = config.sigma2;
      result.evals.push_back(erow);
      // Companion row over the same hitting runs.
      SummaryRow prow;
      prow.x = value;
      prow.sigma2 = config.sigma2;
      prow.runs = static_cast<int>(records.size());
      std::vector<double> sizes;
      for (const auto& r : records)
        if (r.hit) sizes.push_back(sizing_value(config, r));
      prow.hits = static_cast<int>(sizes.size());
      if (sizes.empty()) {
        prow.med = prow.lq = prow.uq =
            std::numeric_limits<double>::quiet_NaN();
      } else {
        prow.med = percentile(sizes, 0.5);
        prow.lq = percentile(sizes, 0.25);
        prow.uq = percentile(sizes, 0.75);
      }
      result.params.push_back(prow);
    } catch (const std::invalid_argument&) {
      SummaryRow absent;
      absent.x = value;
      absent.med = absent.lq = absent.uq =
          std::numeric_limits<double>::quiet_NaN();
      absent.hits = 0;
      absent.runs = 0;
      result.evals.push_back(absent);
      result.params.push_back(absent);
    }
  }
  return result;
}

}  // namespace noisyevo
