#ifndef GINIFIELD_TWO_PHASE_HPP
#define GINIFIELD_TWO_PHASE_HPP

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ginifield/empirical.hpp"
#include "ginifield/indices.hpp"
#include "ginifield/plugin_variance.hpp"

namespace ginifield {

// Which measure backs the dC-integrals. Empirical is the estimator;
// ProductExact substitutes the exact product copula C(s,t) = s*t and
// evaluates every term margin-separably on the grid, which is the synthetic
// injection used to check the independence factorization.
enum class CopulaModel { Empirical, ProductExact };

struct TwoPhaseContext {
  PairedSample paired;
  EmpiricalDistribution dist1, dist2;
  EmpiricalCopula copula;
  Grid grid;

  double mu1 = 0.0, mu2 = 0.0;  // marginal sample means
  double a1 = 0.0, a2 = 0.0;    // marginal A_n statistics

  // Per-row evaluations at the pseudo-observations.
  std::vector<double> u, v;
  std::vector<double> fstar_values;   // (2/mu2) h2(v) - (2/mu1) h1(u)
  std::vector<double> ftilde_values;  // 2 A2/mu2^2 ell2(v) - 2 A1/mu1^2 ell1(u)
  std::vector<double> fstarj_values;  // g2(x2) - g1(x1); empty without configs

  // L_j = (2/mu_j) ell_j on the n sample blocks and on the grid.
  std::vector<double> L1_blocks, L2_blocks;
  std::vector<double> ell1_grid, ell2_grid;
  std::vector<double> L1_grid, L2_grid;
  std::vector<double> nu1_grid, nu2_grid;
  std::vector<double> g1_grid, g2_grid;

  std::vector<double> copula_grid;  // C_n on the node lattice, row-major in u

  bool has_gpi = false;
  GpiConfig cfg1, cfg2;

  std::size_t size() const { return paired.size(); }
};

// Gini-only context (delta_gini / sigma2_delta_gini).
TwoPhaseContext build_two_phase(const PairedSample& paired, const Grid& grid);

// Full context; both configs must carry residual functions (FGT presets set
// an exact pair, other indices need user-supplied handles).
TwoPhaseContext build_two_phase(const PairedSample& paired, const GpiConfig& cfg1,
                                const GpiConfig& cfg2, const Grid& grid);

double delta_gini(const TwoPhaseContext& ctx);
double delta_gpi(const TwoPhaseContext& ctx);

// Grid quadrature of int f(s) g(t) (C(s,t) - st) ds dt; f pairs with the
// first copula coordinate.
double gamma2_grid(std::span<const double> f_nodes, std::span<const double> g_nodes,
                   const EmpiricalCopula& copula, const Grid& grid);

// Sample covariance (1/n) sum (f_i - mean f)(g_i - mean g) over per-row
// evaluations at the pseudo-observations.
double gamma_star(std::span<const double> f_rows, std::span<const double> g_rows);

VarianceReport sigma2_delta_gini(const TwoPhaseContext& ctx,
                                 CopulaModel model = CopulaModel::Empirical);

VarianceReport sigma2_delta_gpi(const TwoPhaseContext& ctx,
                                CopulaModel model = CopulaModel::Empirical);

struct JointCovariance {
  double sigma2_delta_gpi = 0.0;
  double sigma2_delta_gini = 0.0;
  double cov = 0.0;
  std::map<std::string, double> terms;
  std::size_t n = 0;
  std::vector<std::string> warnings;
};

JointCovariance cov_deltas(const TwoPhaseContext& ctx,
                           CopulaModel model = CopulaModel::Empirical);

struct RatioReport {
  double r = 0.0;  // delta J / delta GI
  double a = 0.0;  // 1 / delta GI
  double b = 0.0;  // delta J / delta GI^2
  double sigma2_r = 0.0;
  double delta_gpi = 0.0;
  double delta_gini = 0.0;
  ConfidenceInterval ci;
  JointCovariance joint;
  std::vector<std::string> warnings;
};

// Delta-method inference for R = delta J / delta GI. Throws
// NearZeroDenominator when |delta GI| falls below the relative floor
// 1e-6 * max(|GI_n(1)|, |GI_n(2)|, 1e-3).
RatioReport ratio_inference(const TwoPhaseContext& ctx, double level,
                            CopulaModel model = CopulaModel::Empirical);

}  // namespace ginifield

#endif  // GINIFIELD_TWO_PHASE_HPP
