#include "ginifield/plugin_variance.hpp"

#include <algorithm>
#include <cmath>

#include "ginifield/errors.hpp"
#include "ginifield/normal.hpp"
#include "ginifield/numeric.hpp"
#include "grid_ops.hpp"

namespace ginifield {

namespace {

constexpr double kClampFloor = -1e-8;
constexpr double kTailRatio = 50.0;

double finalize_sigma2(double raw, VarianceReport& report) {
  if (raw < kClampFloor) {
    throw_error(ErrorCode::NegativeVariance,
                "assembled variance " + std::to_string(raw) + " is below -1e-8");
  }
  if (raw < 0.0) {
    report.warnings.push_back("negative variance clamped to zero");
    return 0.0;
  }
  return raw;
}

void attach_tail_warning(const PluginContext& ctx, VarianceReport& report) {
  if (ctx.dist.values_sorted.back() / ctx.mean > kTailRatio) {
    report.warnings.push_back("tail warning: max/mean exceeds 50, bounded-quantile "
                              "assumption is doubtful");
  }
}

struct OnePhaseTerms {
  double g_hh, g1_ll, g_hb, g_ii, g_hi, g_ib;
};

// Every integral evaluated over the Grid(m) discretization, with the grid
// means as centerings. The two-phase product-copula injection computes the
// same sums per margin, which is what makes the factorization check exact.
OnePhaseTerms grid_terms(const PluginContext& ctx) {
  const Grid grid(ctx.options.grid_m);
  const std::vector<double> lg = detail::grid_quantiles(ctx.dist, grid);
  std::vector<double> hg(grid.m);
  for (std::size_t k = 0; k < grid.m; ++k) hg[k] = grid.node(k) * lg[k];
  OnePhaseTerms t{};
  t.g_hh = detail::cov_grid(hg, hg);
  t.g1_ll = gamma1_exact(lg, lg);
  t.g_hb = detail::cross_grid(hg, lg, grid);
  t.g_ii = detail::cov_grid(lg, lg);
  t.g_hi = detail::cov_grid(hg, lg);
  t.g_ib = detail::cross_grid(lg, lg, grid);
  return t;
}

OnePhaseTerms exact_terms(const PluginContext& ctx) {
  OnePhaseTerms t{};
  t.g_hh = gamma_hh(ctx);
  t.g1_ll = gamma1_exact(ctx.ell_values(), ctx.ell_values());
  t.g_hb = gamma_h_beta(ctx);
  t.g_ii = var_id(ctx);
  t.g_hi = gamma_hid(ctx);
  t.g_ib = gamma_id_beta(ctx);
  return t;
}

OnePhaseTerms compute_terms(const PluginContext& ctx, VarianceReport& report) {
  if (ctx.use_grid()) {
    report.warnings.push_back("grid_approximation: integrals evaluated on Grid(" +
                              std::to_string(ctx.options.grid_m) + ")");
    return grid_terms(ctx);
  }
  return exact_terms(ctx);
}

}  // namespace

bool PluginContext::use_grid() const {
  switch (options.mode) {
    case PluginOptions::Mode::Exact: return false;
    case PluginOptions::Mode::GridApprox: return true;
    case PluginOptions::Mode::Auto: return size() > PluginOptions::kExactLimit;
  }
  return false;
}

PluginContext build_plugin_context(const EmpiricalDistribution& dist,
                                   const PluginOptions& options) {
  if (dist.size() < 2) throw_error(ErrorCode::SampleTooSmall, "need n >= 2");
  PluginContext ctx;
  ctx.dist = dist;
  ctx.options = options;
  ctx.mean = dist.mean;
  const std::size_t n = dist.size();
  const double nd = static_cast<double>(n);
  ctx.h_values.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double weight = options.midrank_weights
                              ? (2.0 * static_cast<double>(j + 1) - 1.0) / (2.0 * nd)
                              : static_cast<double>(j + 1) / nd;
    ctx.h_values[j] = dist.values_sorted[j] * weight;
  }
  ctx.a_hat = mean_of(ctx.h_values);
  return ctx;
}

double gamma1_exact(std::span<const double> f_blocks, std::span<const double> g_blocks) {
  if (f_blocks.size() != g_blocks.size()) {
    throw_error(ErrorCode::LengthMismatch, "gamma1 block sequences differ in length");
  }
  const std::size_t k = f_blocks.size();
  if (k == 0) throw_error(ErrorCode::EmptySample, "gamma1 needs at least one block");
  const double w = 1.0 / static_cast<double>(k);
  std::vector<double> terms(k);
  double acc_f = 0.0;  // sum_{i<j} f_i P_i
  double acc_g = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double a = static_cast<double>(i) * w;
    const double p = w * (a + 0.5 * w);     // int_block s ds
    const double m = w - p;                 // int_block (1-s) ds
    const double diag = a * w * w + w * w * w / 3.0 - p * p;
    terms[i] = f_blocks[i] * g_blocks[i] * diag + g_blocks[i] * m * acc_f +
               f_blocks[i] * m * acc_g;
    acc_f += f_blocks[i] * p;
    acc_g += g_blocks[i] * p;
  }
  return stable_sum(terms);
}

double gamma_hh(const PluginContext& ctx) {
  return central_covariance(ctx.h_values, ctx.h_values);
}

double gamma_hid(const PluginContext& ctx) {
  return central_covariance(ctx.h_values, ctx.id_values());
}

double var_id(const PluginContext& ctx) {
  return central_covariance(ctx.id_values(), ctx.id_values());
}

double gamma_h_beta(const PluginContext& ctx) {
  return detail::cross_blocks(ctx.h_values, ctx.ell_values());
}

double gamma_id_beta(const PluginContext& ctx) {
  return detail::cross_blocks(ctx.id_values(), ctx.ell_values());
}

VarianceReport sigma2_A(const PluginContext& ctx) {
  VarianceReport report;
  report.n = ctx.size();
  const OnePhaseTerms t = compute_terms(ctx, report);
  report.terms["gamma_h_h"] = t.g_hh;
  report.terms["gamma1_ell_ell"] = t.g1_ll;
  report.terms["gamma_h_beta_ell"] = t.g_hb;
  report.terms["a_hat"] = ctx.a_hat;
  report.terms["mean"] = ctx.mean;
  report.sigma2 = finalize_sigma2(t.g_hh + t.g1_ll + 2.0 * t.g_hb, report);
  attach_tail_warning(ctx, report);
  return report;
}

VarianceReport sigma2_GI(const PluginContext& ctx) {
  if (!(ctx.mean > 0.0)) throw_error(ErrorCode::ZeroMean, "sigma2_GI needs mean > 0");
  VarianceReport report;
  report.n = ctx.size();
  const OnePhaseTerms t = compute_terms(ctx, report);
  const double mu = ctx.mean;
  const double a = ctx.a_hat;
  const double sigma2_a = t.g_hh + t.g1_ll + 2.0 * t.g_hb;
  const double raw = 4.0 / (mu * mu) *
                     (sigma2_a + (a * a) / (mu * mu) * t.g_ii -
                      2.0 * a / mu * (t.g_hi + t.g_ib));
  report.terms["gamma_h_h"] = t.g_hh;
  report.terms["gamma1_ell_ell"] = t.g1_ll;
  report.terms["gamma_h_beta_ell"] = t.g_hb;
  report.terms["gamma_id_id"] = t.g_ii;
  report.terms["gamma_h_id"] = t.g_hi;
  report.terms["gamma_id_beta_ell"] = t.g_ib;
  report.terms["a_hat"] = a;
  report.terms["mean"] = mu;
  report.sigma2 = finalize_sigma2(raw, report);
  attach_tail_warning(ctx, report);
  return report;
}

ConfidenceInterval interval_around(double center, double sigma2, std::size_t n,
                                   double level, double clip_lo, double clip_hi) {
  if (!(level > 0.0) || !(level < 1.0)) {
    throw_error(ErrorCode::OutOfRange, "confidence level must lie in (0,1)");
  }
  const double z = normal_quantile(0.5 * (1.0 + level));
  const double half = z * std::sqrt(sigma2 / static_cast<double>(n));
  ConfidenceInterval ci;
  ci.level = level;
  ci.lo = std::max(clip_lo, center - half);
  ci.hi = std::min(clip_hi, center + half);
  return ci;
}

ConfidenceInterval gini_ci(const EmpiricalDistribution& dist, double level,
                           const PluginOptions& options) {
  const PluginContext ctx = build_plugin_context(dist, options);
  const GiniEstimate est = gini_point(dist);
  const VarianceReport var = sigma2_GI(ctx);
  return interval_around(est.value, var.sigma2, dist.size(), level, -1.0, 1.0);
}

std::vector<std::pair<double, double>> lorenz_points(const EmpiricalDistribution& dist) {
  const std::size_t n = dist.size();
  std::vector<double> prefix(n);
  double cum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    cum += dist.values_sorted[j];
    prefix[j] = cum;
  }
  // Dividing by the final prefix sum pins the last point at exactly (1,1).
  const double total = prefix.back();
  std::vector<std::pair<double, double>> points;
  points.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    points.emplace_back(static_cast<double>(j + 1) / static_cast<double>(n),
                        prefix[j] / total);
  }
  return points;
}

}  // namespace ginifield
