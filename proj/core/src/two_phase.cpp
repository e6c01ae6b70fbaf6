#include "ginifield/two_phase.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ginifield/errors.hpp"
#include "ginifield/numeric.hpp"
#include "grid_ops.hpp"

namespace ginifield {

namespace detail {

std::vector<double> indicator_prefix_means(std::span<const double> f_rows,
                                           std::span<const double> coords,
                                           const Grid& grid) {
  const std::size_t n = f_rows.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return coords[a] != coords[b] ? coords[a] < coords[b] : a < b;
  });
  std::vector<double> out(grid.m);
  double prefix = 0.0;
  std::size_t next = 0;
  for (std::size_t k = 0; k < grid.m; ++k) {
    const double s = grid.node(k);
    while (next < n && coords[order[next]] < s) prefix += f_rows[order[next++]];
    out[k] = prefix / static_cast<double>(n);
  }
  return out;
}

}  // namespace detail

namespace {

constexpr double kClampFloor = -1e-8;

double finalize_sigma2(double raw, std::vector<std::string>& warnings) {
  if (raw < kClampFloor) {
    throw_error(ErrorCode::NegativeVariance,
                "assembled variance " + std::to_string(raw) + " is below -1e-8");
  }
  if (raw < 0.0) {
    warnings.push_back("negative variance clamped to zero");
    return 0.0;
  }
  return raw;
}

// Quadrature of int f(s) g(t) (C(s,t) - st) against a precomputed node
// lattice of C; f pairs with the first coordinate.
double gamma2_cells(std::span<const double> f_u, std::span<const double> g_v,
                    std::span<const double> cells, const Grid& grid) {
  const std::size_t m = grid.m;
  std::vector<double> rows(m);
  std::vector<double> row_terms(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double sk = grid.node(k);
    for (std::size_t l = 0; l < m; ++l) {
      row_terms[l] = g_v[l] * (cells[k * m + l] - sk * grid.node(l));
    }
    rows[k] = f_u[k] * stable_sum(row_terms);
  }
  return stable_sum(rows) / (static_cast<double>(m) * static_cast<double>(m));
}

// Empirical cross term
//   int L2(s) [int f 1(v<s) dC] ds - int L1(s) [int f 1(u<s) dC] ds
//   - P(f) * int s (L2 - L1) ds,
// inner integrals as row averages, outer integrals on the grid, and the
// centering integral precomputed by the caller (exact over the n blocks for
// L, grid quadrature for nu).
double cross_term_rows(const TwoPhaseContext& ctx, std::span<const double> f_rows,
                       std::span<const double> outer2, std::span<const double> outer1,
                       double s_weighted_outer_diff) {
  const Grid& grid = ctx.grid;
  const std::vector<double> inner_v = detail::indicator_prefix_means(f_rows, ctx.v, grid);
  const std::vector<double> inner_u = detail::indicator_prefix_means(f_rows, ctx.u, grid);
  std::vector<double> terms(grid.m);
  for (std::size_t k = 0; k < grid.m; ++k) {
    terms[k] = outer2[k] * inner_v[k] - outer1[k] * inner_u[k];
  }
  const double outer_part = stable_sum(terms) / static_cast<double>(grid.m);
  return outer_part - mean_of(f_rows) * s_weighted_outer_diff;
}

// Product-measure cross term: per-margin grid cross integrals.
double cross_term_product(const TwoPhaseContext& ctx, std::span<const double> comp2,
                          std::span<const double> comp1, std::span<const double> outer2,
                          std::span<const double> outer1) {
  return detail::cross_grid(comp2, outer2, ctx.grid) +
         detail::cross_grid(comp1, outer1, ctx.grid);
}

// Product-measure Gamma*: cross-margin covariances vanish.
double gamma_star_product(std::span<const double> f2, std::span<const double> f1,
                          std::span<const double> g2, std::span<const double> g1) {
  return detail::cov_grid(f2, g2) + detail::cov_grid(f1, g1);
}

// int s (L2 - L1) ds, exact over the n sample blocks.
double s_weighted_block_diff(const TwoPhaseContext& ctx) {
  const std::size_t n = ctx.size();
  const double nd = static_cast<double>(n);
  std::vector<double> terms(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double s_int = (2.0 * static_cast<double>(j + 1) - 1.0) / (2.0 * nd * nd);
    terms[j] = s_int * (ctx.L2_blocks[j] - ctx.L1_blocks[j]);
  }
  return stable_sum(terms);
}

// int s (nu2 - nu1) ds on the grid.
double s_weighted_grid_diff(const TwoPhaseContext& ctx) {
  std::vector<double> terms(ctx.grid.m);
  for (std::size_t k = 0; k < ctx.grid.m; ++k) {
    terms[k] = ctx.grid.node(k) * (ctx.nu2_grid[k] - ctx.nu1_grid[k]);
  }
  return stable_sum(terms) / static_cast<double>(ctx.grid.m);
}

std::vector<double> product_cells(const Grid& grid) {
  std::vector<double> cells(grid.m * grid.m);
  for (std::size_t k = 0; k < grid.m; ++k) {
    for (std::size_t l = 0; l < grid.m; ++l) {
      cells[k * grid.m + l] = grid.node(k) * grid.node(l);
    }
  }
  return cells;
}

struct MarginComponents {
  std::vector<double> phi1, phi2;  // (2/mu_j) s ell_j(s) at the nodes
  std::vector<double> psi1, psi2;  // (2 A_j / mu_j^2) ell_j(s)
};

MarginComponents grid_components(const TwoPhaseContext& ctx) {
  MarginComponents c;
  const std::size_t m = ctx.grid.m;
  c.phi1.resize(m);
  c.phi2.resize(m);
  c.psi1.resize(m);
  c.psi2.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double s = ctx.grid.node(k);
    c.phi1[k] = 2.0 / ctx.mu1 * s * ctx.ell1_grid[k];
    c.phi2[k] = 2.0 / ctx.mu2 * s * ctx.ell2_grid[k];
    c.psi1[k] = 2.0 * ctx.a1 / (ctx.mu1 * ctx.mu1) * ctx.ell1_grid[k];
    c.psi2[k] = 2.0 * ctx.a2 / (ctx.mu2 * ctx.mu2) * ctx.ell2_grid[k];
  }
  return c;
}

void attach_tail_warnings(const TwoPhaseContext& ctx, std::vector<std::string>& warnings) {
  if (ctx.dist1.values_sorted.back() / ctx.mu1 > 50.0 ||
      ctx.dist2.values_sorted.back() / ctx.mu2 > 50.0) {
    warnings.push_back("tail warning: max/mean exceeds 50 on a margin");
  }
}

void require_gpi(const TwoPhaseContext& ctx) {
  if (!ctx.has_gpi) {
    throw_error(ErrorCode::MissingResidualFunctions,
                "context was built without poverty-index configurations");
  }
}

TwoPhaseContext build_common(const PairedSample& paired, const Grid& grid,
                             const GpiConfig* cfg1, const GpiConfig* cfg2) {
  if (paired.size() < 2) throw_error(ErrorCode::SampleTooSmall, "need n >= 2 rows");
  TwoPhaseContext ctx;
  ctx.paired = paired;
  ctx.grid = grid;
  ctx.dist1 = make_distribution(paired.first);
  ctx.dist2 = make_distribution(paired.second);
  ctx.copula = empirical_copula(paired);
  ctx.copula_grid = ctx.copula.grid_cdf(grid);
  ctx.mu1 = ctx.dist1.mean;
  ctx.mu2 = ctx.dist2.mean;
  ctx.a1 = a_statistic(ctx.dist1);
  ctx.a2 = a_statistic(ctx.dist2);

  const std::size_t n = paired.size();
  ctx.u.resize(n);
  ctx.v.resize(n);
  ctx.fstar_values.resize(n);
  ctx.ftilde_values.resize(n);
  const double c1 = 2.0 / ctx.mu1;
  const double c2 = 2.0 / ctx.mu2;
  const double t1 = 2.0 * ctx.a1 / (ctx.mu1 * ctx.mu1);
  const double t2 = 2.0 * ctx.a2 / (ctx.mu2 * ctx.mu2);
  for (std::size_t i = 0; i < n; ++i) {
    ctx.u[i] = ctx.copula.pseudo_obs[i].first;
    ctx.v[i] = ctx.copula.pseudo_obs[i].second;
    // ell_j at a pseudo-observation is the observation itself (maximal-rank
    // ties), so h_j(v_i) = v_i x_i.
    ctx.fstar_values[i] = c2 * ctx.v[i] * paired.second[i] - c1 * ctx.u[i] * paired.first[i];
    ctx.ftilde_values[i] = t2 * paired.second[i] - t1 * paired.first[i];
  }

  ctx.L1_blocks.resize(n);
  ctx.L2_blocks.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    ctx.L1_blocks[j] = c1 * ctx.dist1.values_sorted[j];
    ctx.L2_blocks[j] = c2 * ctx.dist2.values_sorted[j];
  }

  ctx.ell1_grid = detail::grid_quantiles(ctx.dist1, grid);
  ctx.ell2_grid = detail::grid_quantiles(ctx.dist2, grid);
  ctx.L1_grid.resize(grid.m);
  ctx.L2_grid.resize(grid.m);
  for (std::size_t k = 0; k < grid.m; ++k) {
    ctx.L1_grid[k] = c1 * ctx.ell1_grid[k];
    ctx.L2_grid[k] = c2 * ctx.ell2_grid[k];
  }

  if (cfg1 != nullptr && cfg2 != nullptr) {
    if (!cfg1->has_residuals() || !cfg2->has_residuals()) {
      throw_error(ErrorCode::MissingResidualFunctions,
                  "both configurations need residual_g and residual_nu");
    }
    ctx.has_gpi = true;
    ctx.cfg1 = *cfg1;
    ctx.cfg2 = *cfg2;
    ctx.fstarj_values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      ctx.fstarj_values[i] =
          cfg2->residual_g(paired.second[i]) - cfg1->residual_g(paired.first[i]);
    }
    ctx.nu1_grid.resize(grid.m);
    ctx.nu2_grid.resize(grid.m);
    ctx.g1_grid.resize(grid.m);
    ctx.g2_grid.resize(grid.m);
    for (std::size_t k = 0; k < grid.m; ++k) {
      ctx.nu1_grid[k] = cfg1->residual_nu(grid.node(k));
      ctx.nu2_grid[k] = cfg2->residual_nu(grid.node(k));
      ctx.g1_grid[k] = cfg1->residual_g(ctx.ell1_grid[k]);
      ctx.g2_grid[k] = cfg2->residual_g(ctx.ell2_grid[k]);
    }
  }
  return ctx;
}

}  // namespace

TwoPhaseContext build_two_phase(const PairedSample& paired, const Grid& grid) {
  return build_common(paired, grid, nullptr, nullptr);
}

TwoPhaseContext build_two_phase(const PairedSample& paired, const GpiConfig& cfg1,
                                const GpiConfig& cfg2, const Grid& grid) {
  return build_common(paired, grid, &cfg1, &cfg2);
}

double delta_gini(const TwoPhaseContext& ctx) {
  return gini_point(ctx.dist2).value - gini_point(ctx.dist1).value;
}

double delta_gpi(const TwoPhaseContext& ctx) {
  require_gpi(ctx);
  return gpi_point(ctx.dist2, ctx.cfg2).value - gpi_point(ctx.dist1, ctx.cfg1).value;
}

double gamma2_grid(std::span<const double> f_nodes, std::span<const double> g_nodes,
                   const EmpiricalCopula& copula, const Grid& grid) {
  if (f_nodes.size() != grid.m || g_nodes.size() != grid.m) {
    throw_error(ErrorCode::LengthMismatch, "node sequences must match the grid");
  }
  const std::vector<double> cells = copula.grid_cdf(grid);
  return gamma2_cells(f_nodes, g_nodes, cells, grid);
}

double gamma_star(std::span<const double> f_rows, std::span<const double> g_rows) {
  if (f_rows.size() != g_rows.size()) {
    throw_error(ErrorCode::LengthMismatch, "row sequences differ in length");
  }
  return central_covariance(f_rows, g_rows);
}

VarianceReport sigma2_delta_gini(const TwoPhaseContext& ctx, CopulaModel model) {
  if (!(ctx.mu1 > 0.0) || !(ctx.mu2 > 0.0)) {
    throw_error(ErrorCode::ZeroMean, "both margins need a positive mean");
  }
  VarianceReport report;
  report.n = ctx.size();

  double g_ss, g_tt, g_st, g1_l1, g1_l2, g2_l, g_sb, g_tb;
  if (model == CopulaModel::Empirical) {
    g_ss = gamma_star(ctx.fstar_values, ctx.fstar_values);
    g_tt = gamma_star(ctx.ftilde_values, ctx.ftilde_values);
    g_st = gamma_star(ctx.fstar_values, ctx.ftilde_values);
    g1_l1 = gamma1_exact(ctx.L1_blocks, ctx.L1_blocks);
    g1_l2 = gamma1_exact(ctx.L2_blocks, ctx.L2_blocks);
    g2_l = gamma2_cells(ctx.L1_grid, ctx.L2_grid, ctx.copula_grid, ctx.grid);
    const double is_l = s_weighted_block_diff(ctx);
    g_sb = cross_term_rows(ctx, ctx.fstar_values, ctx.L2_grid, ctx.L1_grid, is_l);
    g_tb = cross_term_rows(ctx, ctx.ftilde_values, ctx.L2_grid, ctx.L1_grid, is_l);
  } else {
    const MarginComponents c = grid_components(ctx);
    const std::vector<double> cells = product_cells(ctx.grid);
    g_ss = gamma_star_product(c.phi2, c.phi1, c.phi2, c.phi1);
    g_tt = gamma_star_product(c.psi2, c.psi1, c.psi2, c.psi1);
    g_st = gamma_star_product(c.phi2, c.phi1, c.psi2, c.psi1);
    g1_l1 = gamma1_exact(ctx.L1_grid, ctx.L1_grid);
    g1_l2 = gamma1_exact(ctx.L2_grid, ctx.L2_grid);
    g2_l = gamma2_cells(ctx.L1_grid, ctx.L2_grid, cells, ctx.grid);
    g_sb = cross_term_product(ctx, c.phi2, c.phi1, ctx.L2_grid, ctx.L1_grid);
    g_tb = cross_term_product(ctx, c.psi2, c.psi1, ctx.L2_grid, ctx.L1_grid);
  }

  const double g_bb = g1_l1 + g1_l2 - 2.0 * g2_l;
  const double raw = g_ss + g_tt + g_bb - 2.0 * (g_st + g_tb - g_sb);

  report.terms["gamma_star_fstar_fstar"] = g_ss;
  report.terms["gamma_star_ftilde_ftilde"] = g_tt;
  report.terms["gamma_star_fstar_ftilde"] = g_st;
  report.terms["gamma_star_betaL_betaL"] = g_bb;
  report.terms["gamma_star_fstar_betaL"] = g_sb;
  report.terms["gamma_star_ftilde_betaL"] = g_tb;
  report.terms["gamma1_L1_L1"] = g1_l1;
  report.terms["gamma1_L2_L2"] = g1_l2;
  report.terms["gamma2_L1_L2"] = g2_l;
  report.sigma2 = finalize_sigma2(raw, report.warnings);
  attach_tail_warnings(ctx, report.warnings);
  return report;
}

VarianceReport sigma2_delta_gpi(const TwoPhaseContext& ctx, CopulaModel model) {
  require_gpi(ctx);
  VarianceReport report;
  report.n = ctx.size();

  double g_jj, g1_n1, g1_n2, g2_n, g_jb;
  if (model == CopulaModel::Empirical) {
    g_jj = gamma_star(ctx.fstarj_values, ctx.fstarj_values);
    g1_n1 = gamma1_exact(ctx.nu1_grid, ctx.nu1_grid);
    g1_n2 = gamma1_exact(ctx.nu2_grid, ctx.nu2_grid);
    g2_n = gamma2_cells(ctx.nu1_grid, ctx.nu2_grid, ctx.copula_grid, ctx.grid);
    g_jb = cross_term_rows(ctx, ctx.fstarj_values, ctx.nu2_grid, ctx.nu1_grid,
                           s_weighted_grid_diff(ctx));
  } else {
    const std::vector<double> cells = product_cells(ctx.grid);
    g_jj = gamma_star_product(ctx.g2_grid, ctx.g1_grid, ctx.g2_grid, ctx.g1_grid);
    g1_n1 = gamma1_exact(ctx.nu1_grid, ctx.nu1_grid);
    g1_n2 = gamma1_exact(ctx.nu2_grid, ctx.nu2_grid);
    g2_n = gamma2_cells(ctx.nu1_grid, ctx.nu2_grid, cells, ctx.grid);
    g_jb = cross_term_product(ctx, ctx.g2_grid, ctx.g1_grid, ctx.nu2_grid, ctx.nu1_grid);
  }

  const double g_bb = g1_n1 - 2.0 * g2_n + g1_n2;
  const double raw = g_jj + g_bb + 2.0 * g_jb;

  report.terms["gamma_star_fstarJ_fstarJ"] = g_jj;
  report.terms["gamma_star_betanu_betanu"] = g_bb;
  report.terms["gamma_star_fstarJ_betanu"] = g_jb;
  report.terms["gamma1_nu1_nu1"] = g1_n1;
  report.terms["gamma1_nu2_nu2"] = g1_n2;
  report.terms["gamma2_nu1_nu2"] = g2_n;
  report.sigma2 = finalize_sigma2(raw, report.warnings);
  attach_tail_warnings(ctx, report.warnings);
  return report;
}

JointCovariance cov_deltas(const TwoPhaseContext& ctx, CopulaModel model) {
  require_gpi(ctx);
  const VarianceReport var_gini = sigma2_delta_gini(ctx, model);
  const VarianceReport var_gpi = sigma2_delta_gpi(ctx, model);

  double g_js, g_jt, g_jb_l, g_sb_n, g_tb_n, g1_l1n1, g1_l2n2, g2_l1n2, g2_l2n1;
  if (model == CopulaModel::Empirical) {
    g_js = gamma_star(ctx.fstarj_values, ctx.fstar_values);
    g_jt = gamma_star(ctx.fstarj_values, ctx.ftilde_values);
    const double is_l = s_weighted_block_diff(ctx);
    const double is_n = s_weighted_grid_diff(ctx);
    g_jb_l = cross_term_rows(ctx, ctx.fstarj_values, ctx.L2_grid, ctx.L1_grid, is_l);
    g_sb_n = cross_term_rows(ctx, ctx.fstar_values, ctx.nu2_grid, ctx.nu1_grid, is_n);
    g_tb_n = cross_term_rows(ctx, ctx.ftilde_values, ctx.nu2_grid, ctx.nu1_grid, is_n);
    g1_l1n1 = gamma1_exact(ctx.L1_grid, ctx.nu1_grid);
    g1_l2n2 = gamma1_exact(ctx.L2_grid, ctx.nu2_grid);
    g2_l1n2 = gamma2_cells(ctx.L1_grid, ctx.nu2_grid, ctx.copula_grid, ctx.grid);
    // gamma2(L2, nu1) pairs nu1 with the first copula coordinate.
    g2_l2n1 = gamma2_cells(ctx.nu1_grid, ctx.L2_grid, ctx.copula_grid, ctx.grid);
  } else {
    const MarginComponents c = grid_components(ctx);
    const std::vector<double> cells = product_cells(ctx.grid);
    g_js = gamma_star_product(ctx.g2_grid, ctx.g1_grid, c.phi2, c.phi1);
    g_jt = gamma_star_product(ctx.g2_grid, ctx.g1_grid, c.psi2, c.psi1);
    g_jb_l = cross_term_product(ctx, ctx.g2_grid, ctx.g1_grid, ctx.L2_grid, ctx.L1_grid);
    g_sb_n = cross_term_product(ctx, c.phi2, c.phi1, ctx.nu2_grid, ctx.nu1_grid);
    g_tb_n = cross_term_product(ctx, c.psi2, c.psi1, ctx.nu2_grid, ctx.nu1_grid);
    g1_l1n1 = gamma1_exact(ctx.L1_grid, ctx.nu1_grid);
    g1_l2n2 = gamma1_exact(ctx.L2_grid, ctx.nu2_grid);
    g2_l1n2 = gamma2_cells(ctx.L1_grid, ctx.nu2_grid, cells, ctx.grid);
    g2_l2n1 = gamma2_cells(ctx.nu1_grid, ctx.L2_grid, cells, ctx.grid);
  }

  const double g_lb_nb = g1_l1n1 + g1_l2n2 - g2_l1n2 - g2_l2n1;

  JointCovariance joint;
  joint.n = ctx.size();
  joint.sigma2_delta_gini = var_gini.sigma2;
  joint.sigma2_delta_gpi = var_gpi.sigma2;
  joint.cov = g_js + g_jb_l - g_jt + g_sb_n + g_lb_nb - g_tb_n;
  joint.terms = var_gini.terms;
  joint.terms.insert(var_gpi.terms.begin(), var_gpi.terms.end());
  joint.terms["gamma_star_fstarJ_fstar"] = g_js;
  joint.terms["gamma_star_fstarJ_ftilde"] = g_jt;
  joint.terms["gamma_star_fstarJ_betaL"] = g_jb_l;
  joint.terms["gamma_star_fstar_betanu"] = g_sb_n;
  joint.terms["gamma_star_ftilde_betanu"] = g_tb_n;
  joint.terms["gamma_star_betaL_betanu"] = g_lb_nb;
  joint.terms["gamma1_L1_nu1"] = g1_l1n1;
  joint.terms["gamma1_L2_nu2"] = g1_l2n2;
  joint.terms["gamma2_L1_nu2"] = g2_l1n2;
  joint.terms["gamma2_L2_nu1"] = g2_l2n1;
  joint.warnings = var_gini.warnings;
  joint.warnings.insert(joint.warnings.end(), var_gpi.warnings.begin(),
                        var_gpi.warnings.end());
  return joint;
}

RatioReport ratio_inference(const TwoPhaseContext& ctx, double level, CopulaModel model) {
  require_gpi(ctx);
  const double gi1 = gini_point(ctx.dist1).value;
  const double gi2 = gini_point(ctx.dist2).value;
  const double dgi = gi2 - gi1;
  const double floor =
      1e-6 * std::max({std::abs(gi1), std::abs(gi2), 1e-3});
  if (std::abs(dgi) <= floor) {
    throw_error(ErrorCode::NearZeroDenominator,
                "|delta GI| = " + std::to_string(std::abs(dgi)) +
                    " is below the reliability floor " + std::to_string(floor));
  }

  RatioReport report;
  report.delta_gini = dgi;
  report.delta_gpi = delta_gpi(ctx);
  report.joint = cov_deltas(ctx, model);
  report.r = report.delta_gpi / dgi;
  report.a = 1.0 / dgi;
  report.b = report.delta_gpi / (dgi * dgi);
  const double raw = report.a * report.a * report.joint.sigma2_delta_gpi +
                     report.b * report.b * report.joint.sigma2_delta_gini -
                     2.0 * report.a * report.b * report.joint.cov;
  report.sigma2_r = finalize_sigma2(raw, report.warnings);
  report.ci = interval_around(report.r, report.sigma2_r, ctx.size(), level,
                              -std::numeric_limits<double>::infinity(),
                              std::numeric_limits<double>::infinity());
  return report;
}

}  // namespace ginifield
