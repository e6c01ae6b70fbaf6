#include "ginifield/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

#include "ginifield/errors.hpp"
#include "ginifield/normal.hpp"
#include "ginifield/numeric.hpp"
#include "ginifield/plugin_variance.hpp"
#include "ginifield/rng.hpp"
#include "ginifield/two_phase.hpp"

namespace ginifield {

namespace {

// Tanh-sinh quadrature of f(s, 1-s) over (0,1); handles endpoint
// singularities like the pareto quantile.
double integrate_unit(const std::function<double(double, double)>& f) {
  const double pi_half = 1.5707963267948966;
  auto term = [&](double t) -> double {
    const double u = pi_half * std::sinh(t);
    const double e = std::exp(-2.0 * u);
    const double s = 1.0 / (1.0 + e);        // (1 + tanh u)/2
    const double oms = e / (1.0 + e);        // (1 - tanh u)/2
    if (s <= 0.0 || oms <= 0.0 || s >= 1.0 || oms >= 1.0) return 0.0;
    const double sech = 1.0 / std::cosh(u);
    const double w = pi_half * 0.5 * std::cosh(t) * sech * sech;
    const double v = f(s, oms);
    return std::isfinite(v) ? w * v : 0.0;
  };
  const double t_max = 3.7;
  double h = 0.5;
  double sum = term(0.0);
  for (double t = h; t <= t_max; t += h) sum += term(t) + term(-t);
  double integral = sum * h;
  for (int level = 0; level < 10; ++level) {
    h *= 0.5;
    double add = 0.0;
    for (double t = h; t <= t_max; t += 2.0 * h) add += term(t) + term(-t);
    sum += add;
    const double refined = sum * h;
    if (std::abs(refined - integral) <= 1e-13 * (std::abs(refined) + 1e-13) &&
        level >= 2) {
      return refined;
    }
    integral = refined;
  }
  return integral;
}

void require(bool ok, ErrorCode code, const std::string& message) {
  if (!ok) throw_error(code, message);
}

}  // namespace

DistributionSpec DistributionSpec::uniform(double a, double b) {
  require(b > a && a >= 0.0, ErrorCode::BadParameters, "uniform needs b > a >= 0");
  return {Family::Uniform, a, b};
}

DistributionSpec DistributionSpec::exponential(double rate) {
  require(rate > 0.0, ErrorCode::BadParameters, "exponential rate must be positive");
  return {Family::Exponential, rate, 0.0};
}

DistributionSpec DistributionSpec::lognormal(double location, double scale) {
  require(scale > 0.0, ErrorCode::BadParameters, "lognormal scale must be positive");
  return {Family::Lognormal, location, scale};
}

DistributionSpec DistributionSpec::pareto(double alpha, double xm) {
  require(alpha > 1.0 && xm > 0.0, ErrorCode::BadParameters,
          "pareto needs alpha > 1 and xm > 0");
  return {Family::Pareto, alpha, xm};
}

double DistributionSpec::quantile(double u, double one_minus_u) const {
  switch (family) {
    case Family::Uniform: return p1 + (p2 - p1) * u;
    case Family::Exponential: return -std::log(one_minus_u) / p1;
    case Family::Lognormal: return std::exp(p1 + p2 * normal_quantile(u));
    case Family::Pareto: return p2 * std::pow(one_minus_u, -1.0 / p1);
  }
  return 0.0;
}

double DistributionSpec::cdf(double x) const {
  switch (family) {
    case Family::Uniform:
      if (x <= p1) return 0.0;
      if (x >= p2) return 1.0;
      return (x - p1) / (p2 - p1);
    case Family::Exponential: return x <= 0.0 ? 0.0 : 1.0 - std::exp(-p1 * x);
    case Family::Lognormal:
      return x <= 0.0 ? 0.0 : normal_cdf((std::log(x) - p1) / p2);
    case Family::Pareto:
      return x <= p2 ? 0.0 : 1.0 - std::pow(p2 / x, p1);
  }
  return 0.0;
}

double DistributionSpec::mean() const {
  switch (family) {
    case Family::Uniform: return 0.5 * (p1 + p2);
    case Family::Exponential: return 1.0 / p1;
    case Family::Lognormal: return std::exp(p1 + 0.5 * p2 * p2);
    case Family::Pareto: return p1 * p2 / (p1 - 1.0);
  }
  return 0.0;
}

std::string DistributionSpec::describe() const {
  switch (family) {
    case Family::Uniform:
      return "uniform(" + std::to_string(p1) + "," + std::to_string(p2) + ")";
    case Family::Exponential: return "exponential(" + std::to_string(p1) + ")";
    case Family::Lognormal:
      return "lognormal(" + std::to_string(p1) + "," + std::to_string(p2) + ")";
    case Family::Pareto:
      return "pareto(" + std::to_string(p1) + "," + std::to_string(p2) + ")";
  }
  return "unknown";
}

CopulaSpec CopulaSpec::independence() { return {Family::Independence, 0.0}; }

CopulaSpec CopulaSpec::gaussian(double rho) {
  require(rho > -1.0 && rho < 1.0, ErrorCode::BadParameters, "rho must lie in (-1,1)");
  return {Family::Gaussian, rho};
}

CopulaSpec CopulaSpec::clayton(double theta) {
  require(theta > 0.0, ErrorCode::BadParameters, "theta must be positive");
  return {Family::Clayton, theta};
}

std::string CopulaSpec::describe() const {
  switch (family) {
    case Family::Independence: return "independence";
    case Family::Gaussian: return "gaussian(" + std::to_string(param) + ")";
    case Family::Clayton: return "clayton(" + std::to_string(param) + ")";
  }
  return "unknown";
}

std::vector<double> sample_univariate(const DistributionSpec& spec, std::size_t n,
                                      std::uint64_t seed) {
  require(n >= 1, ErrorCode::BadParameters, "need n >= 1");
  CounterRng rng(seed);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.next_uniform();
    out[i] = spec.quantile(u, 1.0 - u);
  }
  return out;
}

PairedSample sample_paired(const CopulaSpec& copula, const DistributionSpec& marg1,
                           const DistributionSpec& marg2, std::size_t n,
                           std::uint64_t seed) {
  require(n >= 2, ErrorCode::BadParameters, "need n >= 2");
  CounterRng rng(seed);
  std::vector<double> x1(n), x2(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double w1 = rng.next_uniform();
    const double w2 = rng.next_uniform();
    double u = w1;
    double v = w2;
    switch (copula.family) {
      case CopulaSpec::Family::Independence: break;
      case CopulaSpec::Family::Gaussian: {
        const double rho = copula.param;
        const double z1 = normal_quantile(w1);
        const double z2 = normal_quantile(w2);
        v = normal_cdf(rho * z1 + std::sqrt(1.0 - rho * rho) * z2);
        break;
      }
      case CopulaSpec::Family::Clayton: {
        const double theta = copula.param;
        const double a = std::pow(w2, -theta / (1.0 + theta)) - 1.0;
        v = std::pow(a * std::pow(u, -theta) + 1.0, -1.0 / theta);
        break;
      }
    }
    x1[i] = marg1.quantile(u, 1.0 - u);
    x2[i] = marg2.quantile(v, 1.0 - v);
  }
  return make_paired_sample(x1, x2);
}

double true_a_statistic(const DistributionSpec& spec) {
  return integrate_unit(
      [&](double s, double oms) { return s * spec.quantile(s, oms); });
}

double true_gini(const DistributionSpec& spec) {
  const double mu = spec.mean();
  require(std::isfinite(mu) && mu > 0.0, ErrorCode::NonIntegrable,
          "law must have a finite positive mean");
  return 2.0 * true_a_statistic(spec) / mu - 1.0;
}

double true_gpi(const DistributionSpec& spec, const GpiConfig& cfg) {
  const double z = cfg.poverty_line;
  require(z > 0.0, ErrorCode::BadParameters, "poverty line must be positive");
  const double p = spec.cdf(z);
  if (p <= 0.0) return 0.0;
  const auto shortfall = [&](double t) {
    // (Z - Q(p t))/Z for t in (0,1), clamped against roundoff at the line.
    const double q = spec.quantile(p * t, 1.0 - p * t);
    return std::max(0.0, (z - q) / z);
  };
  switch (cfg.kind) {
    case GpiKind::Fgt: {
      const double alpha = cfg.shape;
      if (alpha == 0.0) return p;
      return p * integrate_unit([&](double t, double) {
               return std::pow(shortfall(t), alpha);
             });
    }
    case GpiKind::Sen:
      return 2.0 * p *
             integrate_unit([&](double t, double omt) { return omt * shortfall(t); });
    case GpiKind::Kakwani: {
      const double kappa = cfg.shape;
      return (kappa + 1.0) * p *
             integrate_unit([&](double t, double omt) {
               return std::pow(omt, kappa) * shortfall(t);
             });
    }
    case GpiKind::Custom:
      throw_error(ErrorCode::NonIntegrable,
                  "no continuous form is registered for custom configurations");
  }
  return 0.0;
}

double bahadur_remainder(std::size_t n, std::uint64_t seed) {
  require(n >= 10, ErrorCode::BadParameters, "need n >= 10");
  CounterRng rng(seed);
  std::vector<double> u(n);
  for (double& x : u) x = rng.next_uniform();
  std::sort(u.begin(), u.end());
  const double nd = static_cast<double>(n);
  const double root_n = std::sqrt(nd);

  // alpha_n(s) + (quantile process at s). The vanishing combination pairs
  // sqrt(n)(U_n(s) - s) with sqrt(n)(V_n(s) - s); with the opposite sign the
  // sum tends to twice a Brownian bridge instead of zero.
  const auto remainder_at = [&](double s) {
    const double ecdf =
        static_cast<double>(std::upper_bound(u.begin(), u.end(), s) - u.begin()) / nd;
    std::size_t k = static_cast<std::size_t>(std::ceil(nd * s));
    k = std::clamp<std::size_t>(k, 1, n);
    return root_n * (ecdf + u[k - 1] - 2.0 * s);
  };

  // Between breakpoints (order statistics and the lattice i/n) the process
  // is linear, so evaluating every breakpoint, its left limit and the 4n
  // grid captures the sup exactly.
  std::vector<double> points;
  points.reserve(8 * n + 8);
  for (std::size_t k = 0; k <= 4 * n; ++k) {
    points.push_back(static_cast<double>(k) / (4.0 * nd));
  }
  for (double x : u) {
    points.push_back(x);
    points.push_back(std::nextafter(x, 0.0));
  }
  for (std::size_t i = 0; i <= n; ++i) {
    const double lattice = static_cast<double>(i) / nd;
    points.push_back(lattice);
    points.push_back(std::nextafter(lattice, 0.0));
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  double sup = 0.0;
  for (double s : points) {
    if (s < 0.0 || s > 1.0) continue;
    sup = std::max(sup, std::abs(remainder_at(s)));
  }
  return sup;
}

std::size_t effective_threads(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("GINIFIELD_THREADS")) {
    const long parsed = std::strtol(env, nullptr, 10);
    if (parsed > 0) return static_cast<std::size_t>(parsed);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

namespace {

// Runs fn(r) for r in [0,count); any schedule produces the same results
// because outputs are merged by replicate index.
void run_replicates(std::size_t count, std::size_t threads,
                    const std::function<void(std::size_t)>& fn) {
  const std::size_t t = std::max<std::size_t>(1, std::min(threads, count));
  if (t == 1) {
    for (std::size_t r = 0; r < count; ++r) fn(r);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(t);
  for (std::size_t w = 0; w < t; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        const std::size_t r = next.fetch_add(1);
        if (r >= count) return;
        try {
          fn(r);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

struct TargetPlumbing {
  bool paired = false;
  bool needs_gpi = false;
  bool std_scale_gap = false;
};

TargetPlumbing target_plumbing(const std::string& target) {
  if (target == "sigma2_A" || target == "sigma2_GI" || target == "gini_ci") return {};
  if (target == "sigma2_delta_gini") return {.paired = true};
  if (target == "sigma2_delta_gpi") return {.paired = true, .needs_gpi = true};
  if (target == "sigma2_R")
    return {.paired = true, .needs_gpi = true, .std_scale_gap = true};
  throw_error(ErrorCode::BadParameters, "unknown target " + target);
}

void validate_plan(const SimulationPlan& plan, const TargetPlumbing& plumbing) {
  require(plan.replicates >= 1, ErrorCode::BadParameters, "need replicates >= 1");
  require(plan.n >= 2, ErrorCode::BadParameters, "need n >= 2");
  if (plan.marginal2.has_value()) {
    require(plan.copula.has_value(), ErrorCode::BadParameters,
            "two marginals require a copula");
  }
  if (plumbing.paired) {
    require(plan.marginal2.has_value() && plan.copula.has_value(),
            ErrorCode::BadParameters, "target needs two marginals and a copula");
  }
  if (plumbing.needs_gpi) {
    require(plan.gpi.has_value(), ErrorCode::BadParameters,
            "target needs a poverty-index configuration");
  }
}

double default_tolerance(const std::string& target) {
  return target == "sigma2_R" ? 0.25 : 0.15;
}

double plan_truth(const SimulationPlan& plan) {
  const std::string& t = plan.target;
  if (t == "sigma2_A") return true_a_statistic(plan.marginal1);
  if (t == "sigma2_GI" || t == "gini_ci") return true_gini(plan.marginal1);
  if (t == "sigma2_delta_gini") {
    return true_gini(*plan.marginal2) - true_gini(plan.marginal1);
  }
  if (t == "sigma2_delta_gpi") {
    return true_gpi(*plan.marginal2, *plan.gpi) - true_gpi(plan.marginal1, *plan.gpi);
  }
  const double dj = true_gpi(*plan.marginal2, *plan.gpi) -
                    true_gpi(plan.marginal1, *plan.gpi);
  const double dgi = true_gini(*plan.marginal2) - true_gini(plan.marginal1);
  if (std::abs(dgi) < 1e-9) {
    throw_error(ErrorCode::NearZeroDenominator, "true Gini variation is negligible");
  }
  return dj / dgi;
}

}  // namespace

ValidationReport variance_agreement(const SimulationPlan& plan) {
  const auto start = std::chrono::steady_clock::now();
  const TargetPlumbing plumbing = target_plumbing(plan.target);
  require(plan.target != "gini_ci", ErrorCode::BadParameters,
          "gini_ci is a coverage target; use coverage_study");
  validate_plan(plan, plumbing);

  ValidationReport report;
  report.target = plan.target;
  report.n = plan.n;
  report.replicates = plan.replicates;
  report.seed = plan.seed;
  report.tolerance = plan.tolerance.value_or(default_tolerance(plan.target));
  report.truth = plan_truth(plan);
  report.replicate_statistics.resize(plan.replicates);
  report.replicate_plugin.resize(plan.replicates);

  const Grid grid(plan.grid_m);
  run_replicates(plan.replicates, effective_threads(plan.threads), [&](std::size_t r) {
    const std::uint64_t rs = substream_seed(plan.seed, r);
    double stat = 0.0, plugin = 0.0;
    if (!plumbing.paired) {
      const EmpiricalDistribution dist =
          make_distribution(sample_univariate(plan.marginal1, plan.n, rs));
      const PluginContext ctx = build_plugin_context(dist);
      if (plan.target == "sigma2_A") {
        stat = a_statistic(dist);
        plugin = sigma2_A(ctx).sigma2;
      } else {
        stat = gini_point(dist).value;
        plugin = sigma2_GI(ctx).sigma2;
      }
    } else {
      const PairedSample paired =
          sample_paired(*plan.copula, plan.marginal1, *plan.marginal2, plan.n, rs);
      if (plan.target == "sigma2_delta_gini") {
        const TwoPhaseContext ctx = build_two_phase(paired, grid);
        stat = delta_gini(ctx);
        plugin = sigma2_delta_gini(ctx).sigma2;
      } else {
        const TwoPhaseContext ctx = build_two_phase(paired, *plan.gpi, *plan.gpi, grid);
        if (plan.target == "sigma2_delta_gpi") {
          stat = delta_gpi(ctx);
          plugin = sigma2_delta_gpi(ctx).sigma2;
        } else {
          const RatioReport ratio = ratio_inference(ctx, plan.level);
          stat = ratio.r;
          plugin = ratio.sigma2_r;
        }
      }
    }
    report.replicate_statistics[r] = stat;
    report.replicate_plugin[r] = plugin;
  });

  const double denom = plan.replicates > 1 ? static_cast<double>(plan.replicates - 1)
                                           : 1.0;
  report.mc_estimate =
      static_cast<double>(plan.n) * sample_variance(report.replicate_statistics, denom);
  report.plugin_median = median_of(report.replicate_plugin);
  if (plumbing.std_scale_gap) {
    const double plugin_sd = std::sqrt(std::max(0.0, report.plugin_median));
    const double mc_sd = std::sqrt(std::max(0.0, report.mc_estimate));
    report.relative_gap = std::abs(mc_sd - plugin_sd) / plugin_sd;
    report.notes.push_back("gap compares standard deviations");
  } else {
    report.relative_gap =
        std::abs(report.plugin_median - report.mc_estimate) / report.mc_estimate;
    report.notes.push_back("gap compares variances");
  }
  report.pass = report.relative_gap <= report.tolerance;
  report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

ValidationReport coverage_study(const SimulationPlan& plan, double level) {
  const auto start = std::chrono::steady_clock::now();
  require(plan.target == "gini_ci", ErrorCode::BadParameters,
          "coverage_study supports the gini_ci target");
  validate_plan(plan, target_plumbing(plan.target));
  require(level > 0.0 && level < 1.0, ErrorCode::OutOfRange, "level must lie in (0,1)");

  ValidationReport report;
  report.target = plan.target;
  report.n = plan.n;
  report.replicates = plan.replicates;
  report.seed = plan.seed;
  report.tolerance = plan.tolerance.value_or(level >= 0.9 ? 0.03 : 0.05);
  report.truth = true_gini(plan.marginal1);
  report.replicate_statistics.resize(plan.replicates);
  report.replicate_plugin.resize(plan.replicates);
  report.replicate_covered.resize(plan.replicates);

  run_replicates(plan.replicates, effective_threads(plan.threads), [&](std::size_t r) {
    const std::uint64_t rs = substream_seed(plan.seed, r);
    const EmpiricalDistribution dist =
        make_distribution(sample_univariate(plan.marginal1, plan.n, rs));
    const PluginContext ctx = build_plugin_context(dist);
    const GiniEstimate est = gini_point(dist);
    const VarianceReport var = sigma2_GI(ctx);
    const ConfidenceInterval ci =
        interval_around(est.value, var.sigma2, plan.n, level, -1.0, 1.0);
    report.replicate_statistics[r] = est.value;
    report.replicate_plugin[r] = var.sigma2;
    report.replicate_covered[r] = (ci.lo <= report.truth && report.truth <= ci.hi) ? 1 : 0;
  });

  std::size_t hits = 0;
  for (int c : report.replicate_covered) hits += static_cast<std::size_t>(c);
  report.coverage = static_cast<double>(hits) / static_cast<double>(plan.replicates);
  const double denom = plan.replicates > 1 ? static_cast<double>(plan.replicates - 1)
                                           : 1.0;
  report.mc_estimate =
      static_cast<double>(plan.n) * sample_variance(report.replicate_statistics, denom);
  report.plugin_median = median_of(report.replicate_plugin);
  report.relative_gap = std::abs(*report.coverage - level);
  report.pass = report.relative_gap <= report.tolerance;
  report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace ginifield
