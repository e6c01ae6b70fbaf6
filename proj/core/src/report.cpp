#include "ginifield/report.hpp"

namespace ginifield {

nlohmann::ordered_json ReportEnvelope::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = kSchemaVersion;
  j["version"] = kLibraryVersion;
  j["command"] = command;
  j["config"] = config;
  j["estimates"] = estimates;
  j["terms"] = terms;
  if (has_ci) {
    j["ci"] = {{"level", ci.level}, {"lo", ci.lo}, {"hi", ci.hi}};
  }
  j["warnings"] = warnings;
  if (!deterministic) j["timing_seconds"] = timing_seconds;
  return j;
}

std::string ReportEnvelope::to_string() const { return to_json().dump(2) + "\n"; }

ReportEnvelope ReportEnvelope::from_json(const nlohmann::ordered_json& j) {
  ReportEnvelope env;
  env.command = j.at("command").get<std::string>();
  env.config = j.at("config");
  env.estimates = j.at("estimates");
  if (j.contains("terms")) {
    for (const auto& [key, value] : j.at("terms").items()) {
      env.terms[key] = value.get<double>();
    }
  }
  if (j.contains("ci")) {
    env.has_ci = true;
    env.ci.level = j.at("ci").at("level").get<double>();
    env.ci.lo = j.at("ci").at("lo").get<double>();
    env.ci.hi = j.at("ci").at("hi").get<double>();
  }
  if (j.contains("warnings")) {
    env.warnings = j.at("warnings").get<std::vector<std::string>>();
  }
  if (j.contains("timing_seconds")) {
    env.timing_seconds = j.at("timing_seconds").get<double>();
  } else {
    env.deterministic = true;
  }
  return env;
}

nlohmann::ordered_json validation_to_json(const ValidationReport& report,
                                          bool deterministic) {
  nlohmann::ordered_json j;
  j["schema"] = kSchemaVersion;
  j["version"] = kLibraryVersion;
  j["command"] = "validate";
  j["target"] = report.target;
  j["n"] = report.n;
  j["replicates"] = report.replicates;
  j["seed"] = report.seed;
  j["truth"] = report.truth;
  j["mc_estimate"] = report.mc_estimate;
  j["plugin_median"] = report.plugin_median;
  j["relative_gap"] = report.relative_gap;
  if (report.coverage.has_value()) j["coverage"] = *report.coverage;
  j["tolerance"] = report.tolerance;
  j["pass"] = report.pass;
  j["notes"] = report.notes;
  if (!deterministic) j["runtime_seconds"] = report.runtime_seconds;
  return j;
}

}  // namespace ginifield
