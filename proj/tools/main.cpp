// ginifield command line: income inequality and poverty inference with
// plug-in asymptotic variances, plus the embedded simulation harness.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ginifield/csv.hpp"
#include "ginifield/errors.hpp"
#include "ginifield/indices.hpp"
#include "ginifield/montecarlo.hpp"
#include "ginifield/plugin_variance.hpp"
#include "ginifield/report.hpp"
#include "ginifield/two_phase.hpp"

namespace gf = ginifield;

namespace {

struct CommonOptions {
  std::string input;
  std::vector<std::string> columns;
  std::string policy = "reject";
  std::string output;
  std::string index = "gini";
  double line = 0.0;
  bool has_line = false;
  double confidence = 0.95;
  std::size_t grid_m = 256;
  std::string mode = "auto";
  bool midrank = false;
  bool deterministic = false;
};

gf::NonPositivePolicy parse_policy(const std::string& name) {
  if (name == "reject") return gf::NonPositivePolicy::Reject;
  if (name == "drop" || name == "drop-with-warning") {
    return gf::NonPositivePolicy::DropWithWarning;
  }
  gf::throw_error(gf::ErrorCode::BadParameters, "unknown policy " + name);
}

gf::PluginOptions plugin_options(const CommonOptions& opts) {
  gf::PluginOptions plugin;
  plugin.grid_m = opts.grid_m;
  plugin.midrank_weights = opts.midrank;
  if (opts.mode == "exact") {
    plugin.mode = gf::PluginOptions::Mode::Exact;
  } else if (opts.mode == "grid") {
    plugin.mode = gf::PluginOptions::Mode::GridApprox;
  } else if (opts.mode == "auto") {
    plugin.mode = gf::PluginOptions::Mode::Auto;
  } else {
    gf::throw_error(gf::ErrorCode::BadParameters, "unknown mode " + opts.mode);
  }
  return plugin;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, sep)) parts.push_back(part);
  return parts;
}

double to_double(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    gf::throw_error(gf::ErrorCode::BadParameters, "cannot parse " + what + " '" + text + "'");
  }
}

gf::DistributionSpec parse_family(const std::string& text) {
  const auto parts = split(text, ':');
  const std::string& name = parts[0];
  const auto arg = [&](std::size_t i, double fallback) {
    if (i >= parts.size()) return fallback;
    return to_double(parts[i], "family parameter");
  };
  if (name == "uniform") return gf::DistributionSpec::uniform(arg(1, 0.0), arg(2, 1.0));
  if (name == "exponential") return gf::DistributionSpec::exponential(arg(1, 1.0));
  if (name == "lognormal") return gf::DistributionSpec::lognormal(arg(1, 0.0), arg(2, 1.0));
  if (name == "pareto") return gf::DistributionSpec::pareto(arg(1, 3.0), arg(2, 1.0));
  gf::throw_error(gf::ErrorCode::BadParameters, "unknown family " + name);
}

gf::CopulaSpec parse_copula(const std::string& text) {
  const auto parts = split(text, ':');
  const std::string& name = parts[0];
  if (name == "independence") return gf::CopulaSpec::independence();
  if (parts.size() < 2) {
    gf::throw_error(gf::ErrorCode::BadParameters, "copula " + text + " needs a parameter");
  }
  const double param = to_double(parts[1], "copula parameter");
  if (name == "gaussian") return gf::CopulaSpec::gaussian(param);
  if (name == "clayton") return gf::CopulaSpec::clayton(param);
  gf::throw_error(gf::ErrorCode::BadParameters, "unknown copula " + name);
}

gf::GpiConfig config_from_file(const std::string& path, double line_flag, bool has_line);

// Index selectors: gini | fgt:alpha | sen | kakwani:kappa | gpi:spec-file.
gf::GpiConfig parse_index(const std::string& text, double line, bool has_line) {
  const auto parts = split(text, ':');
  const std::string& name = parts[0];
  if (name == "gpi") {
    if (parts.size() < 2) {
      gf::throw_error(gf::ErrorCode::BadParameters, "gpi selector needs a file path");
    }
    return config_from_file(text.substr(4), line, has_line);
  }
  if (!has_line) {
    gf::throw_error(gf::ErrorCode::BadParameters,
                    "--line is required for poverty indices");
  }
  if (name == "fgt") {
    if (parts.size() < 2) {
      gf::throw_error(gf::ErrorCode::BadParameters, "fgt selector needs an alpha");
    }
    return gf::fgt_config(line, to_double(parts[1], "alpha"));
  }
  if (name == "sen") return gf::sen_config(line);
  if (name == "kakwani") {
    if (parts.size() < 2) {
      gf::throw_error(gf::ErrorCode::BadParameters, "kakwani selector needs a kappa");
    }
    return gf::kakwani_config(line, to_double(parts[1], "kappa"));
  }
  gf::throw_error(gf::ErrorCode::BadParameters, "unknown index selector " + text);
}

gf::GpiConfig config_from_file(const std::string& path, double line_flag, bool has_line) {
  std::ifstream file(path);
  if (!file) gf::throw_error(gf::ErrorCode::FileNotFound, path);
  nlohmann::json j;
  try {
    file >> j;
  } catch (const nlohmann::json::exception& e) {
    gf::throw_error(gf::ErrorCode::ConfigError, std::string("bad gpi file: ") + e.what());
  }

  gf::GpiConfig cfg;
  cfg.kind = gf::GpiKind::Custom;
  cfg.name = "custom:" + path;
  if (j.contains("line")) {
    cfg.poverty_line = j.at("line").get<double>();
  } else if (has_line) {
    cfg.poverty_line = line_flag;
  } else {
    gf::throw_error(gf::ErrorCode::ConfigError, "gpi file or --line must set the line");
  }

  if (j.contains("mu")) {
    const auto mu = j.at("mu").get<std::vector<double>>();
    if (mu.size() != 4) gf::throw_error(gf::ErrorCode::ConfigError, "mu needs 4 entries");
    cfg.mu1 = mu[0];
    cfg.mu2 = mu[1];
    cfg.mu3 = mu[2];
    cfg.mu4 = mu[3];
  }

  double weight_exponent = 0.0;
  const std::string weight_type =
      j.contains("weight") ? j.at("weight").at("type").get<std::string>() : "one";
  if (weight_type == "one") {
    cfg.weight = [](double) { return 1.0; };
  } else if (weight_type == "identity") {
    cfg.weight = [](double t) { return t; };
    weight_exponent = 1.0;
  } else if (weight_type == "power") {
    weight_exponent = j.at("weight").at("exponent").get<double>();
    cfg.weight = [weight_exponent](double t) { return std::pow(t, weight_exponent); };
  } else {
    gf::throw_error(gf::ErrorCode::ConfigError, "unknown weight type " + weight_type);
  }

  const std::string depriv_type =
      j.contains("deprivation") ? j.at("deprivation").at("type").get<std::string>()
                                : "power";
  if (depriv_type == "one") {
    cfg.deprivation = [](double) { return 1.0; };
  } else if (depriv_type == "power") {
    const double alpha = j.contains("deprivation")
                             ? j.at("deprivation").at("alpha").get<double>()
                             : 1.0;
    cfg.deprivation = [alpha](double y) {
      return alpha == 0.0 ? 1.0 : std::pow(y, alpha);
    };
  } else if (depriv_type == "chu") {
    const double beta = j.at("deprivation").at("beta").get<double>();
    cfg.deprivation = [beta](double y) { return 1.0 - std::pow(1.0 - y, beta); };
  } else {
    gf::throw_error(gf::ErrorCode::ConfigError, "unknown deprivation type " + depriv_type);
  }

  const std::string scale_type =
      j.contains("scale") ? j.at("scale").at("type").get<std::string>() : "count";
  if (scale_type == "count") {
    cfg.scale = [](std::size_t, std::size_t n, double) { return static_cast<double>(n); };
  } else if (scale_type == "constant") {
    const double value = j.at("scale").at("value").get<double>();
    cfg.scale = [value](std::size_t, std::size_t, double) { return value; };
  } else if (scale_type == "sen") {
    cfg.scale = [](std::size_t q, std::size_t n, double) {
      const double nd = static_cast<double>(n);
      return nd * (nd + 1.0) / (static_cast<double>(q) + 1.0);
    };
  } else if (scale_type == "kakwani") {
    const double k = weight_exponent;
    cfg.scale = [k](std::size_t q, std::size_t n, double) {
      if (q == 0) return 0.0;
      double num = 0.0, den = 0.0;
      for (std::size_t i = 1; i <= n; ++i) num += std::pow(static_cast<double>(i), k);
      for (std::size_t i = 1; i <= q; ++i) den += std::pow(static_cast<double>(i), k);
      return static_cast<double>(q) * num / den;
    };
  } else if (scale_type == "half-n-plus-one") {
    cfg.scale = [](std::size_t, std::size_t n, double) {
      return 0.5 * (static_cast<double>(n) + 1.0);
    };
  } else {
    gf::throw_error(gf::ErrorCode::ConfigError, "unknown scale type " + scale_type);
  }

  if (j.contains("residuals")) {
    const std::string res_type = j.at("residuals").at("type").get<std::string>();
    if (res_type == "fgt") {
      const double alpha = j.at("residuals").at("alpha").get<double>();
      const double z = cfg.poverty_line;
      cfg.residual_g = [z, alpha](double x) {
        if (x >= z) return 0.0;
        return alpha == 0.0 ? 1.0 : std::pow((z - x) / z, alpha);
      };
      cfg.residual_nu = [](double) { return 0.0; };
    } else if (res_type != "none") {
      gf::throw_error(gf::ErrorCode::ConfigError, "unknown residuals type " + res_type);
    }
  }
  return cfg;
}

void emit(const std::string& text, const std::string& output) {
  if (output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(output);
  if (!file) gf::throw_error(gf::ErrorCode::FileNotFound, "cannot write " + output);
  file << text;
}

nlohmann::ordered_json echo_common(const CommonOptions& opts) {
  nlohmann::ordered_json config;
  config["input"] = opts.input;
  config["columns"] = opts.columns;
  config["policy"] = opts.policy;
  config["grid"] = opts.grid_m;
  config["confidence"] = opts.confidence;
  config["mode"] = opts.mode;
  config["midrank"] = opts.midrank;
  if (opts.has_line) config["line"] = opts.line;
  config["index"] = opts.index;
  return config;
}

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

int run_gini(const CommonOptions& opts) {
  Timer timer;
  gf::CsvColumns details;
  const auto dist = gf::parse_income_csv(opts.input, opts.columns.at(0),
                                         parse_policy(opts.policy), &details);
  const auto ctx = gf::build_plugin_context(dist, plugin_options(opts));
  const auto est = gf::gini_point(dist);
  const auto var = gf::sigma2_GI(ctx);
  const auto ci = gf::interval_around(est.value, var.sigma2, dist.size(),
                                      opts.confidence, -1.0, 1.0);

  gf::ReportEnvelope env;
  env.command = "gini";
  env.config = echo_common(opts);
  env.estimates["gini"] = est.value;
  env.estimates["a_statistic"] = est.a_statistic;
  env.estimates["mean"] = est.mean;
  env.estimates["n"] = est.n;
  env.estimates["sigma2_GI"] = var.sigma2;
  env.terms = var.terms;
  env.has_ci = true;
  env.ci = ci;
  env.estimates["rows_read"] = details.rows_read;
  env.estimates["rows_dropped"] = details.rows_dropped;
  env.warnings = details.warnings;
  env.warnings.insert(env.warnings.end(), var.warnings.begin(), var.warnings.end());
  env.deterministic = opts.deterministic;
  env.timing_seconds = timer.seconds();
  emit(env.to_string(), opts.output);
  return 0;
}

int run_gpi(const CommonOptions& opts) {
  Timer timer;
  gf::CsvColumns details;
  const auto dist = gf::parse_income_csv(opts.input, opts.columns.at(0),
                                         parse_policy(opts.policy), &details);
  const auto cfg = parse_index(opts.index, opts.line, opts.has_line);
  const auto est = gf::gpi_point(dist, cfg);

  gf::ReportEnvelope env;
  env.command = "gpi";
  env.config = echo_common(opts);
  env.estimates["gpi"] = est.value;
  env.estimates["poor_count"] = est.poor_count;
  env.estimates["normalizer"] = est.normalizer;
  env.estimates["n"] = dist.size();
  env.estimates["rows_read"] = details.rows_read;
  env.estimates["rows_dropped"] = details.rows_dropped;
  env.warnings = details.warnings;
  env.warnings.insert(env.warnings.end(), est.warnings.begin(), est.warnings.end());
  env.deterministic = opts.deterministic;
  env.timing_seconds = timer.seconds();
  emit(env.to_string(), opts.output);
  return 0;
}

int run_delta(const CommonOptions& opts, const std::string& command) {
  Timer timer;
  gf::CsvColumns details;
  const auto paired = gf::parse_paired_csv(opts.input, opts.columns.at(0),
                                           opts.columns.at(1), parse_policy(opts.policy),
                                           &details);
  const gf::Grid grid(opts.grid_m);

  gf::ReportEnvelope env;
  env.command = command;
  env.config = echo_common(opts);
  env.estimates["rows_read"] = details.rows_read;
  env.estimates["rows_dropped"] = details.rows_dropped;
  env.warnings = details.warnings;
  env.deterministic = opts.deterministic;

  if (command == "delta-gini") {
    const auto ctx = gf::build_two_phase(paired, grid);
    const double dg = gf::delta_gini(ctx);
    const auto var = gf::sigma2_delta_gini(ctx);
    env.estimates["delta_gini"] = dg;
    env.estimates["gini_period1"] = gf::gini_point(ctx.dist1).value;
    env.estimates["gini_period2"] = gf::gini_point(ctx.dist2).value;
    env.estimates["sigma2_delta_gini"] = var.sigma2;
    env.estimates["n"] = paired.size();
    env.terms = var.terms;
    env.has_ci = true;
    env.ci = gf::interval_around(dg, var.sigma2, paired.size(), opts.confidence, -2.0, 2.0);
    env.warnings.insert(env.warnings.end(), var.warnings.begin(), var.warnings.end());
  } else if (command == "delta-gpi") {
    const auto cfg = parse_index(opts.index, opts.line, opts.has_line);
    const auto ctx = gf::build_two_phase(paired, cfg, cfg, grid);
    const double dj = gf::delta_gpi(ctx);
    const auto var = gf::sigma2_delta_gpi(ctx);
    env.estimates["delta_gpi"] = dj;
    env.estimates["gpi_period1"] = gf::gpi_point(ctx.dist1, cfg).value;
    env.estimates["gpi_period2"] = gf::gpi_point(ctx.dist2, cfg).value;
    env.estimates["sigma2_delta_gpi"] = var.sigma2;
    env.estimates["n"] = paired.size();
    env.terms = var.terms;
    env.has_ci = true;
    env.ci = gf::interval_around(dj, var.sigma2, paired.size(), opts.confidence,
                                 -std::numeric_limits<double>::infinity(),
                                 std::numeric_limits<double>::infinity());
    env.warnings.insert(env.warnings.end(), var.warnings.begin(), var.warnings.end());
  } else {
    const auto cfg = parse_index(opts.index, opts.line, opts.has_line);
    const auto ctx = gf::build_two_phase(paired, cfg, cfg, grid);
    const auto ratio = gf::ratio_inference(ctx, opts.confidence);
    env.estimates["ratio"] = ratio.r;
    env.estimates["a"] = ratio.a;
    env.estimates["b"] = ratio.b;
    env.estimates["delta_gpi"] = ratio.delta_gpi;
    env.estimates["delta_gini"] = ratio.delta_gini;
    env.estimates["sigma2_R"] = ratio.sigma2_r;
    env.estimates["sigma2_delta_gpi"] = ratio.joint.sigma2_delta_gpi;
    env.estimates["sigma2_delta_gini"] = ratio.joint.sigma2_delta_gini;
    env.estimates["cov"] = ratio.joint.cov;
    env.estimates["n"] = paired.size();
    env.terms = ratio.joint.terms;
    env.has_ci = true;
    env.ci = ratio.ci;
    env.warnings.insert(env.warnings.end(), ratio.warnings.begin(), ratio.warnings.end());
    env.warnings.insert(env.warnings.end(), ratio.joint.warnings.begin(),
                        ratio.joint.warnings.end());
  }
  env.timing_seconds = timer.seconds();
  emit(env.to_string(), opts.output);
  return 0;
}

int run_lorenz(const CommonOptions& opts) {
  gf::CsvColumns details;
  const auto dist = gf::parse_income_csv(opts.input, opts.columns.at(0),
                                         parse_policy(opts.policy), &details);
  const auto points = gf::lorenz_points(dist);
  std::ostringstream out;
  out << "p,L\n";
  out.precision(17);
  for (const auto& [p, l] : points) out << p << "," << l << "\n";
  emit(out.str(), opts.output);
  return 0;
}

struct SimulateOptions {
  std::string family1;
  std::string family2;
  std::string copula = "independence";
  std::size_t n = 1000;
  std::uint64_t seed = 0;
  std::string output;
};

int run_simulate(const SimulateOptions& opts) {
  std::ostringstream out;
  out.precision(17);
  const auto m1 = parse_family(opts.family1);
  if (opts.family2.empty()) {
    const auto xs = gf::sample_univariate(m1, opts.n, opts.seed);
    out << "income\n";
    for (double x : xs) out << x << "\n";
  } else {
    const auto paired = gf::sample_paired(parse_copula(opts.copula), m1,
                                          parse_family(opts.family2), opts.n, opts.seed);
    out << "y1,y2\n";
    for (std::size_t i = 0; i < paired.size(); ++i) {
      out << paired.first[i] << "," << paired.second[i] << "\n";
    }
  }
  emit(out.str(), opts.output);
  return 0;
}

struct ValidateOptions {
  std::string target = "sigma2_GI";
  std::string family1;
  std::string family2;
  std::string copula;
  std::size_t n = 2000;
  std::size_t replicates = 1000;
  std::uint64_t seed = 0;
  double level = 0.95;
  double line = 1.0;
  bool has_line = false;
  std::string index = "fgt:1";
  std::size_t grid_m = 256;
  double tolerance = -1.0;
  std::string output;
  std::string replicates_csv;
  bool deterministic = false;
};

int run_validate(const ValidateOptions& opts) {
  gf::SimulationPlan plan;
  plan.n = opts.n;
  plan.replicates = opts.replicates;
  plan.seed = opts.seed;
  plan.marginal1 = parse_family(opts.family1);
  if (!opts.family2.empty()) plan.marginal2 = parse_family(opts.family2);
  if (!opts.copula.empty()) plan.copula = parse_copula(opts.copula);
  plan.target = opts.target;
  plan.grid_m = opts.grid_m;
  plan.level = opts.level;
  if (opts.tolerance >= 0.0) plan.tolerance = opts.tolerance;
  const bool needs_gpi =
      opts.target == "sigma2_delta_gpi" || opts.target == "sigma2_R";
  if (needs_gpi) {
    plan.gpi = parse_index(opts.index, opts.line, true);
  }

  const gf::ValidationReport report = opts.target == "gini_ci"
                                          ? gf::coverage_study(plan, opts.level)
                                          : gf::variance_agreement(plan);

  nlohmann::ordered_json j = gf::validation_to_json(report, opts.deterministic);
  j["config"]["marginal1"] = plan.marginal1.describe();
  if (plan.marginal2) j["config"]["marginal2"] = plan.marginal2->describe();
  if (plan.copula) j["config"]["copula"] = plan.copula->describe();
  if (needs_gpi) j["config"]["index"] = opts.index;
  j["config"]["grid"] = opts.grid_m;
  j["config"]["level"] = opts.level;
  emit(j.dump(2) + "\n", opts.output);

  if (!opts.replicates_csv.empty()) {
    std::ofstream csv(opts.replicates_csv);
    if (!csv) {
      gf::throw_error(gf::ErrorCode::FileNotFound, "cannot write " + opts.replicates_csv);
    }
    csv.precision(17);
    csv << "replicate,statistic,plugin_sigma2";
    const bool has_cover = !report.replicate_covered.empty();
    if (has_cover) csv << ",covered";
    csv << "\n";
    for (std::size_t r = 0; r < report.replicate_statistics.size(); ++r) {
      csv << r << "," << report.replicate_statistics[r] << ","
          << report.replicate_plugin[r];
      if (has_cover) csv << "," << report.replicate_covered[r];
      csv << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gini and poverty-index inference with plug-in asymptotic variances"};
  app.require_subcommand(1);

  CommonOptions opts;
  SimulateOptions sim;
  ValidateOptions val;
  std::string columns_flag;

  const auto add_common = [&](CLI::App* cmd, bool paired) {
    cmd->add_option("--input", opts.input, "input CSV path")->required();
    if (paired) {
      cmd->add_option("--columns", columns_flag, "two column names, comma separated")
          ->required();
    } else {
      cmd->add_option("--column", columns_flag, "column name")->required();
    }
    cmd->add_option("--policy", opts.policy, "reject | drop-with-warning");
    cmd->add_option("--output", opts.output, "write the report here instead of stdout");
    cmd->add_flag("--deterministic", opts.deterministic, "omit timing from the report");
    cmd->add_option("--grid", opts.grid_m, "quadrature grid size (>= 16)")
        ->check(CLI::Range(static_cast<std::size_t>(16), static_cast<std::size_t>(1 << 20)));
    cmd->add_option("--confidence", opts.confidence, "confidence level in (0,1)");
  };

  CLI::App* gini = app.add_subcommand("gini", "Gini index with variance and CI");
  add_common(gini, false);
  gini->add_option("--mode", opts.mode, "auto | exact | grid");
  gini->add_flag("--midrank", opts.midrank, "midrank plug-in weights");

  CLI::App* gpi = app.add_subcommand("gpi", "generalized poverty index point estimate");
  add_common(gpi, false);
  gpi->add_option("--index", opts.index, "fgt:alpha | sen | kakwani:kappa | gpi:file");
  auto* gpi_line = gpi->add_option("--line", opts.line, "poverty line Z > 0");

  CLI::App* dgini = app.add_subcommand("delta-gini", "two-period Gini variation");
  add_common(dgini, true);

  CLI::App* dgpi = app.add_subcommand("delta-gpi", "two-period poverty variation");
  add_common(dgpi, true);
  dgpi->add_option("--index", opts.index, "fgt:alpha | gpi:file (needs residuals)");
  auto* dgpi_line = dgpi->add_option("--line", opts.line, "poverty line Z > 0");

  CLI::App* ratio = app.add_subcommand("ratio", "pro-poor ratio delta J / delta GI");
  add_common(ratio, true);
  ratio->add_option("--index", opts.index, "fgt:alpha | gpi:file (needs residuals)");
  auto* ratio_line = ratio->add_option("--line", opts.line, "poverty line Z > 0");

  CLI::App* lorenz = app.add_subcommand("lorenz", "Lorenz curve points as CSV");
  add_common(lorenz, false);

  CLI::App* simulate = app.add_subcommand("simulate", "draw a synthetic income CSV");
  simulate->add_option("--family", sim.family1, "e.g. exponential:1")->required();
  simulate->add_option("--family2", sim.family2, "second-period family");
  simulate->add_option("--copula", sim.copula, "independence | gaussian:rho | clayton:theta");
  simulate->add_option("--n", sim.n, "sample size")->required();
  simulate->add_option("--seed", sim.seed, "stream seed");
  simulate->add_option("--output", sim.output, "output CSV path");

  CLI::App* validate = app.add_subcommand("validate", "Monte Carlo validation study");
  validate->add_option("--target", val.target,
                       "sigma2_A | sigma2_GI | sigma2_delta_gini | sigma2_delta_gpi | "
                       "sigma2_R | gini_ci")
      ->required();
  validate->add_option("--family", val.family1, "first marginal")->required();
  validate->add_option("--family2", val.family2, "second marginal");
  validate->add_option("--copula", val.copula, "coupling for two marginals");
  validate->add_option("--n", val.n, "sample size per replicate");
  validate->add_option("--replicates", val.replicates, "replicate count");
  validate->add_option("--seed", val.seed, "plan seed");
  validate->add_option("--level", val.level, "confidence level for CI targets");
  validate->add_option("--line", val.line, "poverty line for GPI targets");
  validate->add_option("--index", val.index, "index selector for GPI targets");
  validate->add_option("--grid", val.grid_m, "quadrature grid size");
  validate->add_option("--tolerance", val.tolerance, "pass/fail tolerance");
  validate->add_option("--output", val.output, "write the report here");
  validate->add_option("--replicates-csv", val.replicates_csv,
                       "per-replicate statistics CSV for histogramming");
  validate->add_flag("--deterministic", val.deterministic, "omit timing from the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    opts.has_line = (gpi_line->count() > 0) || (dgpi_line->count() > 0) ||
                    (ratio_line->count() > 0);
    opts.columns = split(columns_flag, ',');
    if (gini->parsed()) return run_gini(opts);
    if (gpi->parsed()) return run_gpi(opts);
    if (lorenz->parsed()) return run_lorenz(opts);
    if (dgini->parsed() || dgpi->parsed() || ratio->parsed()) {
      if (opts.columns.size() != 2) {
        gf::throw_error(gf::ErrorCode::BadParameters,
                        "--columns needs exactly two names");
      }
      const std::string command = dgini->parsed()   ? "delta-gini"
                                  : dgpi->parsed()  ? "delta-gpi"
                                                    : "ratio";
      return run_delta(opts, command);
    }
    if (simulate->parsed()) return run_simulate(sim);
    if (validate->parsed()) return run_validate(val);
  } catch (const gf::Error& e) {
    std::cerr << e.what() << "\n";
    switch (gf::error_category(e.code())) {
      case gf::ErrorCategory::Usage: return 2;
      case gf::ErrorCategory::Data: return 3;
      case gf::ErrorCategory::Numeric: return 4;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
