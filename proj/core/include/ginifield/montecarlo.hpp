#ifndef GINIFIELD_MONTECARLO_HPP
#define GINIFIELD_MONTECARLO_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ginifield/empirical.hpp"
#include "ginifield/indices.hpp"

namespace ginifield {

// Test laws with strictly positive support. Parameters are validated on
// construction (BadParameters); pareto requires alpha > 1 for a finite mean.
struct DistributionSpec {
  enum class Family { Uniform, Exponential, Lognormal, Pareto };

  Family family = Family::Exponential;
  double p1 = 1.0;
  double p2 = 0.0;

  static DistributionSpec uniform(double a, double b);
  static DistributionSpec exponential(double rate);
  static DistributionSpec lognormal(double location, double scale);
  static DistributionSpec pareto(double alpha, double xm);

  // one_minus_u is carried separately so tail quantiles stay accurate.
  double quantile(double u, double one_minus_u) const;
  double cdf(double x) const;
  double mean() const;
  std::string describe() const;
};

struct CopulaSpec {
  enum class Family { Independence, Gaussian, Clayton };

  Family family = Family::Independence;
  double param = 0.0;  // rho in (-1,1) or theta > 0

  static CopulaSpec independence();
  static CopulaSpec gaussian(double rho);
  static CopulaSpec clayton(double theta);
  std::string describe() const;
};

// Deterministic samplers on counter-based uniform streams.
std::vector<double> sample_univariate(const DistributionSpec& spec, std::size_t n,
                                      std::uint64_t seed);
PairedSample sample_paired(const CopulaSpec& copula, const DistributionSpec& marg1,
                           const DistributionSpec& marg2, std::size_t n,
                           std::uint64_t seed);

// Quadrature truths for the continuous forms (tanh-sinh on the unit
// interval). Closed forms stay test-side as the independent oracle.
double true_gini(const DistributionSpec& spec);
double true_a_statistic(const DistributionSpec& spec);
double true_gpi(const DistributionSpec& spec, const GpiConfig& cfg);

// Sup over the 4n grid plus all process breakpoints of
// |alpha_n(s) + gamma_n(s)| for a fresh uniform sample of size n >= 10.
double bahadur_remainder(std::size_t n, std::uint64_t seed);

struct SimulationPlan {
  std::size_t n = 0;
  std::size_t replicates = 1;
  std::uint64_t seed = 0;
  DistributionSpec marginal1;
  std::optional<DistributionSpec> marginal2;
  std::optional<CopulaSpec> copula;
  std::string target;  // sigma2_A | sigma2_GI | sigma2_delta_gini |
                       // sigma2_delta_gpi | sigma2_R | gini_ci
  std::optional<GpiConfig> gpi;
  std::size_t grid_m = 256;
  double level = 0.95;
  std::optional<double> tolerance;
  std::size_t threads = 0;  // 0: GINIFIELD_THREADS, then hardware
};

struct ValidationReport {
  std::string target;
  double truth = 0.0;
  double mc_estimate = 0.0;     // n * Var_MC(statistic)
  double plugin_median = 0.0;   // median plug-in sigma^2 across replicates
  double relative_gap = 0.0;
  std::optional<double> coverage;
  bool pass = false;
  double tolerance = 0.0;
  double runtime_seconds = 0.0;
  std::size_t n = 0;
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> notes;

  // Per-replicate records (index order), exportable as CSV.
  std::vector<double> replicate_statistics;
  std::vector<double> replicate_plugin;
  std::vector<int> replicate_covered;
};

// Median plug-in variance vs n * Var_MC of the target statistic. The gap is
// on the variance scale, except sigma2_R where it compares standard
// deviations.
ValidationReport variance_agreement(const SimulationPlan& plan);

// Fraction of replicates whose confidence interval covers the quadrature
// truth. Only the gini_ci target is supported.
ValidationReport coverage_study(const SimulationPlan& plan, double level);

// Worker count: explicit request, else GINIFIELD_THREADS, else hardware.
std::size_t effective_threads(std::size_t requested);

}  // namespace ginifield

#endif  // GINIFIELD_MONTECARLO_HPP
