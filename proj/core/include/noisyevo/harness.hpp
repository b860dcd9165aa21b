#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "noisyevo/optimizers.hpp"

namespace noisyevo {

// One multi-run experiment: a fixed algorithm and problem, repeated `runs`
// times with per-run seeds derived from the master seed.
struct ExperimentConfig {
  AlgorithmKind algo = AlgorithmKind::cga;
  int n = 100;
  double sigma2 = 0.0;
  int runs = 100;
  std::uint64_t budget = 100'000'000;
  std::uint64_t master_seed = 1;

  // Manual parameters; when absent the default_* sizing rules apply.
  std::optional<std::int64_t> population_size;  // K
  std::optional<std::int64_t> mu;
  std::optional<std::int64_t> resamples;

  SizingConstants constants;
  bool margin = false;
  bool record_min_frequency = false;
  int threads = 0;  // 0 = hardware concurrency
};

// One run's outcome row. `param` is K (cGA), mu (EA), m (reRLS) or the
// final variance guess (noise-oblivious family).
struct RunRecord {
  int run_index = 0;
  std::uint64_t seed = 0;
  bool hit = false;
  std::uint64_t evals_at_hit = 0;  // meaningful only when hit
  std::uint64_t evals_total = 0;
  double param = 0.0;
  double min_frequency_seen = 1.0;  // not serialized in the raw CSV
};

// One point of a paper-style figure: quantiles of the hitting costs.
// sigma2 records the noise level the point ran at (for the dimension
// sweep that is sqrt(n)); it is metadata, not a table column.
struct SummaryRow {
  double x = 0.0;
  double med = 0.0;  // NaN when no run hit
  double lq = 0.0;
  double uq = 0.0;
  int hits = 0;
  int runs = 0;
  double sigma2 = 0.0;

  bool has_quantiles() const { return hits > 0; }
};

// Rejects invalid or conflicting settings (also called by run_experiment).
void validate_config(const ExperimentConfig& config);

// Validates the config, then executes exactly `runs` independent runs with
// seed_i = mix_seed(master_seed, i). The record list is a pure function of
// the config: identical across repeats and any worker scheduling.
std::vector<RunRecord> run_experiment(const ExperimentConfig& config);

// Linear-interpolation quantile on the sorted values: h = q (N-1),
// result = v[floor h] + (h - floor h) (v[floor h + 1] - v[floor h]).
double percentile(std::vector<double> values, double q);

// Median and quartiles of evals_at_hit over the hitting runs; misses are
// excluded from the quantiles and show up in the hits/runs counts.
SummaryRow summarize(const std::vector<RunRecord>& records, double x);

enum class SweepAxis { variance, dimension };

struct SweepResult {
  // Quantiles of evaluation counts per grid value.
  std::vector<SummaryRow> evals;
  // Companion table: quantiles of K or the per-point resample count.
  std::vector<SummaryRow> params;
};

// One SummaryRow per grid value. The variance axis sweeps sigma^2 at fixed
// n; the dimension axis sweeps n with sigma^2 = sqrt(n) per point. A grid
// point whose config is invalid yields an absent row (runs = 0) instead of
// aborting the sweep.
SweepResult sweep(SweepAxis axis, const std::vector<double>& grid,
                  const ExperimentConfig& base);

}  // namespace noisyevo
