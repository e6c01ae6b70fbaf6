#include <doctest.h>

#include <cmath>
#include <vector>

#include "ginifield/empirical.hpp"
#include "ginifield/errors.hpp"
#include "ginifield/montecarlo.hpp"
#include "ginifield/rng.hpp"
#include "oracles.hpp"

using namespace ginifield;

TEST_CASE("make_distribution sorts and averages") {
  const auto dist = make_distribution(std::vector<double>{3.0, 1.0, 2.0});
  CHECK(dist.values_sorted == std::vector<double>{1.0, 2.0, 3.0});
  CHECK(dist.mean == doctest::Approx(2.0).epsilon(1e-12));

  const auto singleton = make_distribution(std::vector<double>{5.0});
  CHECK(singleton.size() == 1);
  CHECK(singleton.mean == 5.0);
}

TEST_CASE("make_distribution rejects nonpositive entries with the index") {
  try {
    make_distribution(std::vector<double>{1.0, 0.0, 2.0});
    FAIL("expected NonPositiveValue");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonPositiveValue);
    CHECK(std::string(e.what()).find("index 1") != std::string::npos);
  }
  CHECK_THROWS_AS(make_distribution(std::vector<double>{}), Error);
}

TEST_CASE("ecdf counts with stacking ties") {
  const auto dist = make_distribution(std::vector<double>{1.0, 2.0, 3.0});
  CHECK(dist.ecdf(2.0) == doctest::Approx(2.0 / 3.0));
  CHECK(dist.ecdf(0.5) == 0.0);
  const auto tied = make_distribution(std::vector<double>{1.0, 1.0, 3.0});
  CHECK(tied.ecdf(1.0) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("quantile is the left-continuous generalized inverse") {
  const auto dist = make_distribution(std::vector<double>{1.0, 3.0});
  CHECK(dist.quantile(0.5) == 1.0);
  CHECK(dist.quantile(0.500001) == 3.0);
  const auto singleton = make_distribution(std::vector<double>{7.0});
  CHECK(singleton.quantile(0.2) == 7.0);
  CHECK(singleton.quantile(1.0) == 7.0);
  CHECK_THROWS_AS(dist.quantile(0.0), Error);
  CHECK_THROWS_AS(dist.quantile(1.0000001), Error);
}

TEST_CASE("ecdf and quantile form a Galois connection") {
  CounterRng rng(41);
  for (int rep = 0; rep < 30; ++rep) {
    std::vector<double> xs(1 + static_cast<std::size_t>(rng.next_u64() % 40));
    for (double& x : xs) {
      x = 0.25 + 3.0 * rng.next_uniform();
      if (rng.next_uniform() < 0.3 && xs.size() > 2) x = xs[0];  // force ties
    }
    const auto dist = make_distribution(xs);
    for (double x : dist.values_sorted) {
      CHECK(dist.quantile(dist.ecdf(x)) <= x);
    }
    for (int k = 1; k <= 7; ++k) {
      const double s = static_cast<double>(k) / 8.0;
      CHECK(dist.ecdf(dist.quantile(s)) >= s);
    }
  }
}

TEST_CASE("empirical copula on two-point samples") {
  const auto comonotone = empirical_copula(
      make_paired_sample(std::vector<double>{1.0, 2.0}, std::vector<double>{1.0, 2.0}));
  CHECK(comonotone.pseudo_obs[0] == std::pair{0.5, 0.5});
  CHECK(comonotone.pseudo_obs[1] == std::pair{1.0, 1.0});
  CHECK(comonotone.evaluate(0.5, 0.5) == doctest::Approx(0.5));

  const auto countermonotone = empirical_copula(
      make_paired_sample(std::vector<double>{1.0, 2.0}, std::vector<double>{2.0, 1.0}));
  CHECK(countermonotone.evaluate(0.5, 0.5) == 0.0);
}

TEST_CASE("empirical copula tracks independence at n = 2000") {
  const PairedSample paired =
      sample_paired(CopulaSpec::independence(), DistributionSpec::uniform(0.5, 1.5),
                    DistributionSpec::uniform(0.5, 1.5), 2000, 20240915);
  const EmpiricalCopula copula = empirical_copula(paired);
  double sup = 0.0;
  for (int i = 1; i <= 50; ++i) {
    for (int j = 1; j <= 50; ++j) {
      const double u = static_cast<double>(i) / 50.0;
      const double v = static_cast<double>(j) / 50.0;
      sup = std::max(sup, std::abs(copula.evaluate(u, v) - u * v));
    }
  }
  CHECK(sup < 0.06);
}

TEST_CASE("empirical copula has uniform margins at resolution 1/n") {
  const PairedSample paired =
      sample_paired(CopulaSpec::clayton(1.5), DistributionSpec::exponential(1.0),
                    DistributionSpec::lognormal(0.0, 0.5), 403, 7);
  const EmpiricalCopula copula = empirical_copula(paired);
  const double inv_n = 1.0 / static_cast<double>(paired.size());
  for (int k = 1; k < 40; ++k) {
    const double s = static_cast<double>(k) / 40.0;
    CHECK(std::abs(copula.evaluate(1.0, s) - s) <= inv_n + 1e-12);
    CHECK(std::abs(copula.evaluate(s, 1.0) - s) <= inv_n + 1e-12);
  }
  CHECK(copula.evaluate(0.0, 0.7) == 0.0);
  CHECK(copula.evaluate(0.7, 0.0) == 0.0);
  // monotone in each argument
  double prev = -1.0;
  for (int k = 1; k <= 20; ++k) {
    const double c = copula.evaluate(static_cast<double>(k) / 20.0, 0.6);
    CHECK(c >= prev);
    prev = c;
  }
}

TEST_CASE("copula grid_cdf agrees with pointwise evaluation") {
  const PairedSample paired =
      sample_paired(CopulaSpec::gaussian(0.4), DistributionSpec::exponential(2.0),
                    DistributionSpec::pareto(3.0, 1.0), 97, 99);
  const EmpiricalCopula copula = empirical_copula(paired);
  const Grid grid(32);
  const std::vector<double> cells = copula.grid_cdf(grid);
  for (std::size_t k = 0; k < grid.m; k += 5) {
    for (std::size_t l = 0; l < grid.m; l += 7) {
      CHECK(cells[k * grid.m + l] ==
            doctest::Approx(copula.evaluate(grid.node(k), grid.node(l))).epsilon(1e-12));
    }
  }
}

TEST_CASE("kernel_rect_integral matches frozen values and the quadrature oracle") {
  CHECK(std::abs(kernel_rect_integral(0, 1, 0, 1) - 1.0 / 12.0) <= 1e-13);
  CHECK(kernel_rect_integral(0.0, 0.5, 0.5, 1.0) == doctest::Approx(0.015625).epsilon(1e-12));
  CHECK(kernel_rect_integral(0.3, 0.3, 0.1, 0.9) == 0.0);
  CHECK(kernel_rect_integral(0, 1, 0, 1) ==
        doctest::Approx(oracle::kernel_quad(0, 1, 0, 1, 2048)).epsilon(1e-5));
  CHECK(kernel_rect_integral(0.2, 0.9, 0.1, 0.4) ==
        doctest::Approx(oracle::kernel_quad(0.2, 0.9, 0.1, 0.4, 2048)).epsilon(1e-5));
  CHECK_THROWS_AS(kernel_rect_integral(0.5, 0.2, 0.0, 1.0), Error);
  CHECK_THROWS_AS(kernel_rect_integral(0.0, 1.1, 0.0, 1.0), Error);
}

TEST_CASE("kernel_rect_integral is additive and symmetric") {
  CounterRng rng(11);
  for (int rep = 0; rep < 50; ++rep) {
    double a = rng.next_uniform(), b = rng.next_uniform();
    double c = rng.next_uniform(), d = rng.next_uniform();
    if (a > b) std::swap(a, b);
    if (c > d) std::swap(c, d);
    const double mid = a + (b - a) * rng.next_uniform();
    const double whole = kernel_rect_integral(a, b, c, d);
    const double split =
        kernel_rect_integral(a, mid, c, d) + kernel_rect_integral(mid, b, c, d);
    CHECK(whole == doctest::Approx(split).epsilon(1e-13));
    CHECK(kernel_rect_integral(a, b, c, d) == kernel_rect_integral(c, d, a, b));
  }
}

TEST_CASE("grid nodes are strictly increasing inside (0,1)") {
  const Grid grid(256);
  double prev = 0.0;
  for (std::size_t k = 0; k < grid.m; ++k) {
    CHECK(grid.node(k) > prev);
    CHECK(grid.node(k) < 1.0);
    prev = grid.node(k);
  }
  CHECK_THROWS_AS(Grid(0), Error);
}
