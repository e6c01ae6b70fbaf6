#include "ginifield/indices.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ginifield/errors.hpp"
#include "ginifield/numeric.hpp"

namespace ginifield {

double a_statistic(const EmpiricalDistribution& dist) {
  const std::size_t n = dist.size();
  const double nd = static_cast<double>(n);
  std::vector<double> terms(n);
  for (std::size_t j = 0; j < n; ++j) {
    terms[j] = dist.values_sorted[j] * (static_cast<double>(j + 1) / nd);
  }
  return stable_sum(terms) / nd;
}

GiniEstimate gini_point(const EmpiricalDistribution& dist) {
  if (!(dist.mean > 0.0)) throw_error(ErrorCode::ZeroMean, "gini needs a positive mean");
  GiniEstimate est;
  est.n = dist.size();
  est.mean = dist.mean;
  est.a_statistic = a_statistic(dist);
  est.value = 2.0 * est.a_statistic / est.mean - 1.0 - 1.0 / static_cast<double>(est.n);
  return est;
}

namespace {

double power_sum(std::size_t upto, double exponent) {
  std::vector<double> terms(upto);
  for (std::size_t j = 0; j < upto; ++j) {
    terms[j] = std::pow(static_cast<double>(j + 1), exponent);
  }
  return stable_sum(terms);
}

void require_positive_line(double z) {
  if (!(z > 0.0)) throw_error(ErrorCode::BadParameters, "poverty line must be positive");
}

double clamp_deprivation_arg(double y) {
  if (y < 0.0) return 0.0;
  if (y >= 1.0) return std::nextafter(1.0, 0.0);
  return y;
}

void validate_config(const GpiConfig& cfg) {
  require_positive_line(cfg.poverty_line);
  if (!cfg.weight || !cfg.deprivation || !cfg.scale) {
    throw_error(ErrorCode::ConfigError, "weight, deprivation and scale must all be set");
  }
  if (!std::isfinite(cfg.deprivation(0.0))) {
    throw_error(ErrorCode::ConfigError, "deprivation function must be finite at 0");
  }
}

}  // namespace

GpiConfig fgt_config(double poverty_line, double alpha) {
  require_positive_line(poverty_line);
  if (alpha < 0.0) throw_error(ErrorCode::BadParameters, "fgt alpha must be >= 0");
  GpiConfig cfg;
  cfg.poverty_line = poverty_line;
  cfg.weight = [](double) { return 1.0; };
  cfg.deprivation = [alpha](double y) { return alpha == 0.0 ? 1.0 : std::pow(y, alpha); };
  cfg.scale = [](std::size_t, std::size_t n, double) { return static_cast<double>(n); };
  cfg.residual_g = [poverty_line, alpha](double x) {
    if (x >= poverty_line) return 0.0;
    const double y = (poverty_line - x) / poverty_line;
    return alpha == 0.0 ? 1.0 : std::pow(y, alpha);
  };
  cfg.residual_nu = [](double) { return 0.0; };
  cfg.kind = GpiKind::Fgt;
  cfg.shape = alpha;
  cfg.name = "fgt";
  return cfg;
}

GpiConfig sen_config(double poverty_line) {
  require_positive_line(poverty_line);
  GpiConfig cfg;
  cfg.poverty_line = poverty_line;
  cfg.weight = [](double t) { return t; };
  cfg.deprivation = [](double y) { return y; };
  // Matches 2/(n(Q+1)) against B = n(n+1)/2.
  cfg.scale = [](std::size_t q, std::size_t n, double) {
    const double nd = static_cast<double>(n);
    return nd * (nd + 1.0) / (static_cast<double>(q) + 1.0);
  };
  cfg.mu2 = 1.0;
  cfg.mu3 = 1.0;
  cfg.mu4 = 1.0;
  cfg.kind = GpiKind::Sen;
  cfg.name = "sen";
  return cfg;
}

GpiConfig kakwani_config(double poverty_line, double kappa) {
  require_positive_line(poverty_line);
  if (!(kappa > 0.0)) throw_error(ErrorCode::BadParameters, "kakwani kappa must be > 0");
  GpiConfig cfg;
  cfg.poverty_line = poverty_line;
  cfg.weight = [kappa](double t) { return std::pow(t, kappa); };
  cfg.deprivation = [](double y) { return y; };
  cfg.scale = [kappa](std::size_t q, std::size_t n, double) {
    if (q == 0) return 0.0;
    return static_cast<double>(q) * power_sum(n, kappa) / power_sum(q, kappa);
  };
  cfg.mu2 = 1.0;
  cfg.mu3 = 1.0;
  cfg.mu4 = 1.0;
  cfg.kind = GpiKind::Kakwani;
  cfg.shape = kappa;
  cfg.name = "kakwani";
  return cfg;
}

GpiEstimate gpi_point(const EmpiricalDistribution& dist, const GpiConfig& cfg) {
  validate_config(cfg);
  if (!(dist.mean > 0.0)) throw_error(ErrorCode::ZeroMean, "gpi needs a positive mean");
  const std::size_t n = dist.size();
  const double nd = static_cast<double>(n);
  const double z = cfg.poverty_line;

  GpiEstimate est;
  if (std::abs(cfg.deprivation(0.0)) > 0.0) {
    est.warnings.push_back("deprivation function is nonzero at 0");
  }

  const auto poor_end = std::lower_bound(dist.values_sorted.begin(),
                                         dist.values_sorted.end(), z);
  const std::size_t q = static_cast<std::size_t>(poor_end - dist.values_sorted.begin());
  est.poor_count = q;

  std::vector<double> weight_terms(n);
  for (std::size_t j = 0; j < n; ++j) {
    weight_terms[j] = cfg.weight(static_cast<double>(j + 1));
    if (!std::isfinite(weight_terms[j])) {
      throw_error(ErrorCode::ConfigError,
                  "weight undefined at " + std::to_string(j + 1));
    }
  }
  est.normalizer = stable_sum(weight_terms);
  if (est.normalizer == 0.0) {
    throw_error(ErrorCode::ZeroNormalizer, "sum of weights over 1..n is zero");
  }
  if (q == 0) {
    est.value = 0.0;
    return est;
  }

  const double qd = static_cast<double>(q);
  std::vector<double> terms(q);
  for (std::size_t j = 1; j <= q; ++j) {
    const double arg =
        cfg.mu1 * nd + cfg.mu2 * qd - cfg.mu3 * static_cast<double>(j) + cfg.mu4;
    const double w = cfg.weight(arg);
    if (!std::isfinite(w)) {
      throw_error(ErrorCode::ConfigError, "weight undefined at " + std::to_string(arg));
    }
    const double y = clamp_deprivation_arg((z - dist.values_sorted[j - 1]) / z);
    terms[j - 1] = w * cfg.deprivation(y);
  }
  est.value = cfg.scale(q, n, z) / (nd * est.normalizer) * stable_sum(terms);
  return est;
}

double fgt_direct(const EmpiricalDistribution& dist, double poverty_line, double alpha) {
  require_positive_line(poverty_line);
  std::vector<double> terms;
  for (double x : dist.values_sorted) {
    if (x >= poverty_line) break;
    const double y = (poverty_line - x) / poverty_line;
    terms.push_back(alpha == 0.0 ? 1.0 : std::pow(y, alpha));
  }
  return stable_sum(terms) / static_cast<double>(dist.size());
}

double sen_direct(const EmpiricalDistribution& dist, double poverty_line) {
  require_positive_line(poverty_line);
  const std::size_t n = dist.size();
  std::size_t q = 0;
  while (q < n && dist.values_sorted[q] < poverty_line) ++q;
  if (q == 0) return 0.0;
  std::vector<double> terms(q);
  for (std::size_t j = 1; j <= q; ++j) {
    terms[j - 1] = static_cast<double>(q - j + 1) *
                   (poverty_line - dist.values_sorted[j - 1]) / poverty_line;
  }
  return 2.0 / (static_cast<double>(n) * (static_cast<double>(q) + 1.0)) *
         stable_sum(terms);
}

double kakwani_direct(const EmpiricalDistribution& dist, double poverty_line, double kappa) {
  require_positive_line(poverty_line);
  if (!(kappa > 0.0)) throw_error(ErrorCode::BadParameters, "kakwani kappa must be > 0");
  const std::size_t n = dist.size();
  std::size_t q = 0;
  while (q < n && dist.values_sorted[q] < poverty_line) ++q;
  if (q == 0) return 0.0;
  std::vector<double> terms(q);
  for (std::size_t j = 1; j <= q; ++j) {
    terms[j - 1] = std::pow(static_cast<double>(q - j + 1), kappa) *
                   (poverty_line - dist.values_sorted[j - 1]) / poverty_line;
  }
  return static_cast<double>(q) / (static_cast<double>(n) * power_sum(q, kappa)) *
         stable_sum(terms);
}

}  // namespace ginifield
