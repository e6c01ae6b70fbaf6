#include <doctest.h>

#include <cmath>
#include <vector>

#include "ginifield/errors.hpp"
#include "ginifield/montecarlo.hpp"
#include "ginifield/normal.hpp"
#include "ginifield/plugin_variance.hpp"
#include "ginifield/rng.hpp"
#include "oracles.hpp"

using namespace ginifield;

TEST_CASE("normal quantile against reference values") {
  CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-11));
  CHECK(normal_quantile(0.995) == doctest::Approx(2.575829303548901).epsilon(1e-11));
  CHECK(normal_quantile(0.95) == doctest::Approx(1.644853626951472).epsilon(1e-11));
  CHECK(normal_quantile(0.25) == doctest::Approx(-0.6744897501960817).epsilon(1e-11));
  CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-15));
  for (double p : {0.001, 0.1, 0.4, 0.77, 0.9999}) {
    CHECK(normal_cdf(normal_quantile(p)) == doctest::Approx(p).epsilon(1e-11));
  }
  CHECK_THROWS_AS(normal_quantile(0.0), Error);
  CHECK_THROWS_AS(normal_quantile(1.0), Error);
}

TEST_CASE("samplers are deterministic and respect their supports") {
  const auto spec = DistributionSpec::uniform(0.0, 1.0);
  const auto a = sample_univariate(spec, 10000, 99);
  const auto b = sample_univariate(spec, 10000, 99);
  CHECK(a == b);
  for (double x : a) {
    CHECK(x > 0.0);
    CHECK(x < 1.0);
  }
  const auto pareto = sample_univariate(DistributionSpec::pareto(3.0, 2.0), 2000, 1);
  for (double x : pareto) CHECK(x >= 2.0);
  CHECK_THROWS_AS(DistributionSpec::pareto(1.0, 1.0), Error);
  CHECK_THROWS_AS(DistributionSpec::uniform(2.0, 1.0), Error);
  CHECK_THROWS_AS(DistributionSpec::lognormal(0.0, 0.0), Error);
  CHECK_THROWS_AS(DistributionSpec::exponential(0.0), Error);
}

TEST_CASE("sampler marginals pass a KS check at n = 1e5") {
  const DistributionSpec specs[] = {
      DistributionSpec::uniform(0.0, 1.0), DistributionSpec::exponential(1.7),
      DistributionSpec::lognormal(0.3, 0.9), DistributionSpec::pareto(2.5, 1.0)};
  const double bound = 1.36 / std::sqrt(1e5) * 1.5;
  std::uint64_t seed = 1000;
  for (const auto& spec : specs) {
    const auto xs = sample_univariate(spec, 100000, seed++);
    const double d = oracle::ks_distance(xs, [&](double x) { return spec.cdf(x); });
    CHECK(d < bound);
  }
}

TEST_CASE("paired samplers achieve their Kendall tau") {
  const auto m = DistributionSpec::uniform(0.0, 1.0);
  const std::size_t n = 5000;

  const auto indep = sample_paired(CopulaSpec::independence(), m, m, n, 7);
  CHECK(std::abs(oracle::kendall_tau(indep.first, indep.second)) < 0.04);

  const auto clayton = sample_paired(CopulaSpec::clayton(2.0), m, m, n, 8);
  CHECK(std::abs(oracle::kendall_tau(clayton.first, clayton.second) - 0.5) < 0.04);

  const auto gauss0 = sample_paired(CopulaSpec::gaussian(0.0), m, m, n, 9);
  CHECK(std::abs(oracle::kendall_tau(gauss0.first, gauss0.second)) < 0.04);

  CHECK_THROWS_AS(CopulaSpec::gaussian(1.0), Error);
  CHECK_THROWS_AS(CopulaSpec::clayton(0.0), Error);
}

TEST_CASE("quadrature truths recover the closed forms") {
  CHECK(std::abs(true_gini(DistributionSpec::exponential(1.0)) - 0.5) <= 1e-8);
  CHECK(std::abs(true_gini(DistributionSpec::exponential(3.5)) - 0.5) <= 1e-8);
  CHECK(std::abs(true_gini(DistributionSpec::uniform(0.0, 1.0)) - 1.0 / 3.0) <= 1e-8);
  CHECK(std::abs(true_gini(DistributionSpec::uniform(0.0, 7.0)) - 1.0 / 3.0) <= 1e-8);
  CHECK(std::abs(true_gini(DistributionSpec::pareto(3.0, 1.0)) - 0.2) <= 1e-8);
  // lognormal closed form 2 Phi(sigma/sqrt(2)) - 1
  const double expected = 2.0 * normal_cdf(1.0 / std::sqrt(2.0)) - 1.0;
  CHECK(std::abs(true_gini(DistributionSpec::lognormal(0.0, 1.0)) - expected) <= 1e-4);
  CHECK(std::abs(true_gini(DistributionSpec::lognormal(0.0, 1.0)) - 0.5205) <= 1e-4);
}

TEST_CASE("large-sample gini tracks the quadrature truth for every family") {
  const DistributionSpec specs[] = {
      DistributionSpec::uniform(0.0, 1.0), DistributionSpec::exponential(1.0),
      DistributionSpec::lognormal(0.0, 1.0), DistributionSpec::pareto(3.0, 1.0)};
  std::uint64_t seed = 9000;
  for (const auto& spec : specs) {
    const auto xs = sample_univariate(spec, 100000, seed++);
    const double sample_gini = gini_point(make_distribution(xs)).value;
    CHECK(std::abs(sample_gini - true_gini(spec)) < 0.01);
  }
}

TEST_CASE("true_gpi matches hand-derived values") {
  // exponential(1), FGT(1), Z=1: E (1-X)^+ = exp(-1)
  CHECK(std::abs(true_gpi(DistributionSpec::exponential(1.0), fgt_config(1.0, 1.0)) -
                 std::exp(-1.0)) <= 1e-8);
  // headcount is the cdf at the line
  CHECK(std::abs(true_gpi(DistributionSpec::exponential(2.0), fgt_config(1.5, 0.0)) -
                 (1.0 - std::exp(-3.0))) <= 1e-12);
  // uniform(0,1), FGT(2), Z=1/2: int_0^{1/2} ((1/2 - x)/(1/2))^2 dx = 1/6
  CHECK(std::abs(true_gpi(DistributionSpec::uniform(0.0, 1.0), fgt_config(0.5, 2.0)) -
                 1.0 / 6.0) <= 1e-8);
  // sen for uniform(0,1), Z=1/2 via independent Riemann quadrature
  const auto spec = DistributionSpec::uniform(0.0, 1.0);
  const double p = 0.5;
  const double sen_oracle = oracle::riemann01([&](double t) {
    const double q = p * t;  // uniform quantile is the identity
    return 2.0 * p * (1.0 - t) * (0.5 - q) / 0.5;
  });
  CHECK(std::abs(true_gpi(spec, sen_config(0.5)) - sen_oracle) <= 1e-6);
  // kakwani(kappa=1) coincides with the same integral family
  const double kak_oracle = oracle::riemann01([&](double t) {
    return 2.0 * p * (1.0 - t) * (0.5 - p * t) / 0.5;
  });
  CHECK(std::abs(true_gpi(spec, kakwani_config(0.5, 1.0)) - kak_oracle) <= 1e-6);

  GpiConfig custom = fgt_config(1.0, 1.0);
  custom.kind = GpiKind::Custom;
  CHECK_THROWS_AS(true_gpi(spec, custom), Error);
}

TEST_CASE("bahadur remainder basics") {
  const double value = bahadur_remainder(200, 5);
  CHECK(value >= 0.0);
  CHECK_THROWS_AS(bahadur_remainder(5, 1), Error);

  // triangle inequality against the exact component suprema: both step
  // processes attain their sup at a lattice point or an order statistic.
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const std::size_t n = 150;
    CounterRng rng(seed);
    std::vector<double> u(n);
    for (double& x : u) x = rng.next_uniform();
    std::sort(u.begin(), u.end());
    const double root_n = std::sqrt(static_cast<double>(n));
    double sup_alpha = 0.0, sup_gamma = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
      const double hi = static_cast<double>(i) / static_cast<double>(n);
      const double lo = static_cast<double>(i - 1) / static_cast<double>(n);
      sup_alpha = std::max({sup_alpha, root_n * std::abs(hi - u[i - 1]),
                            root_n * std::abs(u[i - 1] - lo)});
      sup_gamma = std::max({sup_gamma, root_n * std::abs(hi - u[i - 1]),
                            root_n * std::abs(lo - u[i - 1])});
    }
    CHECK(bahadur_remainder(n, seed) <= sup_alpha + sup_gamma + 1e-9);
  }
}

TEST_CASE("bahadur remainder medians decay in n") {
  auto median_at = [](std::size_t n) {
    std::vector<double> values;
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      values.push_back(bahadur_remainder(n, seed));
    }
    std::sort(values.begin(), values.end());
    return values[values.size() / 2];
  };
  const double m100 = median_at(100);
  const double m900 = median_at(900);
  CHECK(m900 < m100);
}

TEST_CASE("variance_agreement plumbing") {
  SimulationPlan plan;
  plan.n = 400;
  plan.replicates = 120;
  plan.seed = 17;
  plan.marginal1 = DistributionSpec::exponential(1.0);
  plan.target = "sigma2_GI";
  plan.tolerance = 0.5;  // generous smoke tolerance at this scale
  const auto report = variance_agreement(plan);
  CHECK(report.truth == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(report.replicate_statistics.size() == 120);
  CHECK(report.pass);

  const auto again = variance_agreement(plan);
  CHECK(report.mc_estimate == again.mc_estimate);
  CHECK(report.plugin_median == again.plugin_median);
  CHECK(report.replicate_statistics == again.replicate_statistics);

  SimulationPlan bad = plan;
  bad.target = "nonsense";
  CHECK_THROWS_AS(variance_agreement(bad), Error);
  SimulationPlan incomplete = plan;
  incomplete.target = "sigma2_delta_gini";
  CHECK_THROWS_AS(variance_agreement(incomplete), Error);
}

TEST_CASE("reports are identical for any worker count") {
  SimulationPlan plan;
  plan.n = 300;
  plan.replicates = 64;
  plan.seed = 23;
  plan.marginal1 = DistributionSpec::lognormal(0.0, 0.8);
  plan.target = "sigma2_GI";
  plan.threads = 1;
  const auto solo = variance_agreement(plan);
  plan.threads = 7;
  const auto pooled = variance_agreement(plan);
  CHECK(solo.replicate_statistics == pooled.replicate_statistics);
  CHECK(solo.replicate_plugin == pooled.replicate_plugin);
  CHECK(solo.mc_estimate == pooled.mc_estimate);
  CHECK(solo.plugin_median == pooled.plugin_median);
}

TEST_CASE("coverage_study bands") {
  SimulationPlan plan;
  plan.n = 600;
  plan.replicates = 600;
  plan.seed = 31;
  plan.marginal1 = DistributionSpec::exponential(1.0);
  plan.target = "gini_ci";

  const auto half = coverage_study(plan, 0.5);
  REQUIRE(half.coverage.has_value());
  CHECK(*half.coverage >= 0.45);
  CHECK(*half.coverage <= 0.55);

  plan.replicates = 400;
  plan.n = 2000;
  plan.marginal1 = DistributionSpec::uniform(0.99, 1.01);
  const auto hard = coverage_study(plan, 0.95);
  REQUIRE(hard.coverage.has_value());
  CHECK(*hard.coverage >= 0.90);

  plan.target = "sigma2_GI";
  CHECK_THROWS_AS(coverage_study(plan, 0.95), Error);
}
