#include <benchmark/benchmark.h>

#include "noisyevo/harness.hpp"
#include "noisyevo/theory.hpp"

using namespace noisyevo;

static void BM_sample_from_frequencies(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  FrequencyVector freqs(n, 461);
  RandomStream rng(1);
  for (auto _ : state) {
    BitString x = sample_from_frequencies(freqs, rng);
    benchmark::DoNotOptimize(x.ones_count());
  }
}
BENCHMARK(BM_sample_from_frequencies)->Arg(100)->Arg(1000);

static void BM_noisy_eval(benchmark::State& state) {
  RandomStream rng(2);
  EvalCounter counter;
  const BitString x = BitString::uniform(100, rng);
  const GaussianNoise noise(10.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(noisy_eval(x, noise, rng, counter));
}
BENCHMARK(BM_noisy_eval);

static void BM_cga_iteration(benchmark::State& state) {
  BudgetedProblem problem(100, GaussianNoise(10.0), ~0ULL / 2,
                          RandomStream(3));
  FrequencyVector freqs(100, 461);
  for (auto _ : state)
    benchmark::DoNotOptimize(cga_iteration(freqs, problem).status);
}
BENCHMARK(BM_cga_iteration);

static void BM_ea_iteration(benchmark::State& state) {
  BudgetedProblem problem(100, GaussianNoise(10.0), ~0ULL / 2,
                          RandomStream(4));
  Population pop = Population::uniform(10, 100, problem.rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(ea_iteration(pop, problem).status);
}
BENCHMARK(BM_ea_iteration);

static void BM_rerls_iteration(benchmark::State& state) {
  BudgetedProblem problem(100, GaussianNoise(10.0), ~0ULL / 2,
                          RandomStream(5));
  RerlsState current{BitString::uniform(100, problem.rng), 50.0};
  const std::int64_t m = default_resamples(10.0, 100);
  for (auto _ : state)
    benchmark::DoNotOptimize(rerls_iteration(current, m, problem).status);
}
BENCHMARK(BM_rerls_iteration);

static void BM_z_distribution_exact(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<double> p(static_cast<std::size_t>(n), 0.4);
  const TrinomialSpec spec = TrinomialSpec::from_marginals(p);
  for (auto _ : state)
    benchmark::DoNotOptimize(z_distribution_exact(spec).zero_prob());
}
BENCHMARK(BM_z_distribution_exact)->Arg(12)->Arg(25);

static void BM_misclassify_prob(benchmark::State& state) {
  std::uint64_t ell = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(misclassify_prob(ell, 10.0));
    ell = ell % 64 + 1;
  }
}
BENCHMARK(BM_misclassify_prob);

static void BM_percentile(benchmark::State& state) {
  RandomStream rng(6);
  std::vector<double> values(10000);
  for (auto& v : values) v = rng.next_unit();
  for (auto _ : state) benchmark::DoNotOptimize(percentile(values, 0.5));
}
BENCHMARK(BM_percentile);

BENCHMARK_MAIN();
