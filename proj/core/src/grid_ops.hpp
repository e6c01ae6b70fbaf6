#ifndef GINIFIELD_SRC_GRID_OPS_HPP
#define GINIFIELD_SRC_GRID_OPS_HPP

// Internal quadrature pieces shared by the one-phase grid mode and the
// two-phase engine. Every routine fixes its summation order, so results are
// independent of caller-side threading.

#include <span>
#include <vector>

#include "ginifield/empirical.hpp"
#include "ginifield/numeric.hpp"

namespace ginifield::detail {

inline std::vector<double> grid_quantiles(const EmpiricalDistribution& dist,
                                          const Grid& grid) {
  std::vector<double> out(grid.m);
  for (std::size_t k = 0; k < grid.m; ++k) out[k] = dist.quantile(grid.node(k));
  return out;
}

// Covariance of two node sequences under the uniform grid measure.
inline double cov_grid(std::span<const double> a, std::span<const double> b) {
  return central_covariance(a, b);
}

// (1/m) sum_k outer_k ( prefix_{<k}(phi)/m - s_k mean(phi) ), the grid version
// of int ell(s) [ int_{t<s} phi - s P(phi) ] ds.
inline double cross_grid(std::span<const double> phi, std::span<const double> outer,
                         const Grid& grid) {
  const std::size_t m = grid.m;
  const double md = static_cast<double>(m);
  const double phi_mean = mean_of(phi);
  std::vector<double> terms(m);
  double prefix = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    terms[k] = outer[k] * (prefix / md - grid.node(k) * phi_mean);
    prefix += phi[k];
  }
  return stable_sum(terms) / md;
}

// Exact-block version of the same cross integral on the n sample blocks; the
// running integral of phi is interpolated linearly between lattice points.
inline double cross_blocks(std::span<const double> phi, std::span<const double> ell) {
  const std::size_t n = phi.size();
  const double nd = static_cast<double>(n);
  const double inv_n2 = 1.0 / (nd * nd);
  const double p_phi = mean_of(phi);
  std::vector<double> terms(n);
  double running = 0.0;  // sum_{i<=j} phi_i
  for (std::size_t j = 0; j < n; ++j) {
    running += phi[j];
    const double inner = (running - 0.5 * phi[j]) * inv_n2;
    const double s_block = p_phi * (2.0 * static_cast<double>(j + 1) - 1.0) * 0.5 * inv_n2;
    terms[j] = ell[j] * (inner - s_block);
  }
  return stable_sum(terms);
}

// Row-measure estimate of int f 1(coord < s) dC at every grid node:
// node k gets (1/n) sum_i f_i 1(coord_i < s_k). O(n log n + m).
std::vector<double> indicator_prefix_means(std::span<const double> f_rows,
                                           std::span<const double> coords,
                                           const Grid& grid);

}  // namespace ginifield::detail

#endif  // GINIFIELD_SRC_GRID_OPS_HPP
