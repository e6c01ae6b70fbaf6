#ifndef GINIFIELD_PLUGIN_VARIANCE_HPP
#define GINIFIELD_PLUGIN_VARIANCE_HPP

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ginifield/empirical.hpp"
#include "ginifield/indices.hpp"

namespace ginifield {

struct PluginOptions {
  enum class Mode { Auto, Exact, GridApprox };

  Mode mode = Mode::Auto;
  std::size_t grid_m = 256;
  // Use (2j-1)/(2n) instead of j/n as the distribution-function plug-in
  // inside h; offered for bias comparison, off by default.
  bool midrank_weights = false;

  // Auto switches to the grid approximation above this sample size.
  static constexpr std::size_t kExactLimit = 20000;
};

// Derived sequences for the one-phase plug-in. ell and I_d both evaluate to
// values_sorted; they differ in how the variance terms integrate them.
struct PluginContext {
  EmpiricalDistribution dist;
  std::vector<double> h_values;  // X_{j,n} * j/n (or midrank variant)
  double a_hat = 0.0;
  double mean = 0.0;
  PluginOptions options;

  std::size_t size() const { return dist.size(); }
  std::span<const double> ell_values() const { return dist.values_sorted; }
  std::span<const double> id_values() const { return dist.values_sorted; }
  bool use_grid() const;
};

PluginContext build_plugin_context(const EmpiricalDistribution& dist,
                                   const PluginOptions& options = {});

struct VarianceReport {
  double sigma2 = 0.0;
  std::map<std::string, double> terms;
  std::size_t n = 0;
  std::vector<std::string> warnings;
};

// Exact integral of f(s) g(t) (min(s,t) - st) over (0,1)^2 for functions that
// are constant on the k equal-width blocks of (0,1). Runs in O(k) via prefix
// sums of the separable off-diagonal kernel pieces.
double gamma1_exact(std::span<const double> f_blocks, std::span<const double> g_blocks);

// Sample central second moments (1/n normalization).
double gamma_hh(const PluginContext& ctx);
double gamma_hid(const PluginContext& ctx);
double var_id(const PluginContext& ctx);

// Plug-in of int_0^1 ell(s) [ int_{x <= F^{-1}(s)} phi dF - s P(phi) ] ds over
// the n sample blocks. The inner integral is the running integral of phi
// interpolated linearly between the lattice points j/n, so a constant sample
// makes the bracket vanish identically.
double gamma_h_beta(const PluginContext& ctx);
double gamma_id_beta(const PluginContext& ctx);

// Gamma(h,h) + gamma1(ell,ell) + 2 Gamma(h, beta_ell).
VarianceReport sigma2_A(const PluginContext& ctx);

// (4/mu^2) (sigma2_A + (A^2/mu^2) Gamma(Id,Id)
//           - (2A/mu) (Gamma(h,Id) + Gamma(Id,beta_ell))).
VarianceReport sigma2_GI(const PluginContext& ctx);

struct ConfidenceInterval {
  double lo = 0.0;
  double hi = 0.0;
  double level = 0.0;
};

ConfidenceInterval interval_around(double center, double sigma2, std::size_t n,
                                   double level, double clip_lo, double clip_hi);

ConfidenceInterval gini_ci(const EmpiricalDistribution& dist, double level,
                           const PluginOptions& options = {});

// Cumulative-share points ((j/n), sum_{i<=j} X_{i,n} / sum X).
std::vector<std::pair<double, double>> lorenz_points(const EmpiricalDistribution& dist);

}  // namespace ginifield

#endif  // GINIFIELD_PLUGIN_VARIANCE_HPP
