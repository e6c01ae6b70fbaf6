#include <benchmark/benchmark.h>

#include "ginifield/montecarlo.hpp"
#include "ginifield/plugin_variance.hpp"
#include "ginifield/two_phase.hpp"

using namespace ginifield;

static void BM_gamma1_exact(benchmark::State& state) {
  const auto xs = sample_univariate(DistributionSpec::exponential(1.0),
                                    static_cast<std::size_t>(state.range(0)), 1);
  const auto dist = make_distribution(xs);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gamma1_exact(dist.values_sorted, dist.values_sorted));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_gamma1_exact)->RangeMultiplier(4)->Range(512, 32768)->Complexity();

static void BM_sigma2_GI(benchmark::State& state) {
  const auto xs = sample_univariate(DistributionSpec::lognormal(0.0, 1.0),
                                    static_cast<std::size_t>(state.range(0)), 2);
  const auto ctx = build_plugin_context(make_distribution(xs));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sigma2_GI(ctx).sigma2);
  }
}
BENCHMARK(BM_sigma2_GI)->Arg(2000)->Arg(20000);

static void BM_copula_grid(benchmark::State& state) {
  const auto paired = sample_paired(CopulaSpec::gaussian(0.6),
                                    DistributionSpec::lognormal(0.0, 1.0),
                                    DistributionSpec::exponential(1.0), 2000, 3);
  const auto copula = empirical_copula(paired);
  const Grid grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(copula.grid_cdf(grid));
  }
}
BENCHMARK(BM_copula_grid)->Arg(128)->Arg(256)->Arg(512);

static void BM_sigma2_delta_gini(benchmark::State& state) {
  const auto paired = sample_paired(CopulaSpec::gaussian(0.6),
                                    DistributionSpec::lognormal(0.0, 1.0),
                                    DistributionSpec::exponential(1.0),
                                    static_cast<std::size_t>(state.range(0)), 4);
  const Grid grid(256);
  const auto ctx = build_two_phase(paired, grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sigma2_delta_gini(ctx).sigma2);
  }
}
BENCHMARK(BM_sigma2_delta_gini)->Arg(2000)->Arg(10000);

static void BM_sampler(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sample_univariate(DistributionSpec::lognormal(0.0, 1.0), 2000, seed++));
  }
}
BENCHMARK(BM_sampler);

BENCHMARK_MAIN();
