#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lck/checks.hpp"
#include "lck/hopf_data.hpp"

namespace lck {

struct RunConfig {
  HopfData data = standard_hopf(2);
  std::uint64_t seed = 12345;
  int points = 100;
  double t_range = 2.0;
  std::vector<std::string> suites = {"all"};
  std::map<std::string, double> tol_overrides;
  std::string output_format = "text";
  int parallel = 1;
  // Machine-readable timing is opt-in: with the flag off every elapsed_ms
  // field in the JSON report is written as 0 so identical configurations
  // produce byte-identical reports. The text report always shows wall time.
  bool include_timing = false;
};

// Throws std::invalid_argument naming the violated constraint.
void validate_run_config(const RunConfig& cfg);

// Expands "all" and reorders the requested suites into canonical execution
// order; duplicates collapse, unknown names raise.
std::vector<std::string> resolve_suites(const std::vector<std::string>& requested);

struct SuiteReport {
  std::string name;
  double elapsed_ms = 0.0;
  std::vector<CheckResult> checks;
};

struct RunReport {
  RunConfig config;
  std::vector<SuiteReport> suites;
  bool overall_pass = true;
  double elapsed_ms = 0.0;
};

RunReport run(const RunConfig& cfg);

// Serialized forms. The JSON string has a fixed key order and is newline
// terminated; given equal configurations the bytes are reproducible.
std::string report_to_json(const RunReport& rep);
std::string report_to_text(const RunReport& rep);
std::string config_to_json(const RunConfig& cfg);

RunConfig config_from_json_text(const std::string& text);
RunConfig config_from_json_file(const std::string& path);

}  // namespace lck
