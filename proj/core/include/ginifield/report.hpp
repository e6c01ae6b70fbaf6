#ifndef GINIFIELD_REPORT_HPP
#define GINIFIELD_REPORT_HPP

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "ginifield/montecarlo.hpp"
#include "ginifield/plugin_variance.hpp"
#include "ginifield/two_phase.hpp"

namespace ginifield {

inline constexpr const char* kSchemaVersion = "1";
inline constexpr const char* kLibraryVersion = "0.1.0";

// JSON envelope common to all subcommands. Ledgers stay flat name->number
// maps; timing is omitted when deterministic output is requested.
struct ReportEnvelope {
  std::string command;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  nlohmann::ordered_json estimates = nlohmann::ordered_json::object();
  std::map<std::string, double> terms;
  ConfidenceInterval ci;
  bool has_ci = false;
  std::vector<std::string> warnings;
  double timing_seconds = 0.0;
  bool deterministic = false;

  nlohmann::ordered_json to_json() const;
  std::string to_string() const;
  static ReportEnvelope from_json(const nlohmann::ordered_json& j);
};

nlohmann::ordered_json validation_to_json(const ValidationReport& report,
                                          bool deterministic);

}  // namespace ginifield

#endif  // GINIFIELD_REPORT_HPP
