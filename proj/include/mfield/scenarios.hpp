#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "mfield/solver.hpp"

namespace mfield {

/// One verified inequality or identity.
struct CheckResult {
  std::string id;        ///< stable key, e.g. "mass_drift"
  std::string citation;  ///< the result being verified
  std::string relation;  ///< "<=", ">=", "==", "decreasing", ...
  double measured;
  double tolerance;
  bool pass;
  std::string detail;
};

struct ScenarioReport {
  std::string scenario;
  std::uint64_t seed = 1;
  nlohmann::json params;
  std::vector<CheckResult> checks;
  std::vector<std::string> notes;
  nlohmann::json data = nlohmann::json::object();
  double wall_seconds = 0.0;

  bool pass() const;
  const CheckResult& check(const std::string& id) const;
};

struct ScenarioInfo {
  std::string name;
  int section;            ///< coarse topic index used by `list --section`
  std::string anchor;     ///< result the scenario reproduces
  std::string summary;
  nlohmann::json defaults;
};

const std::vector<ScenarioInfo>& scenario_registry();
/// Throws ConfigError for unknown names.
const ScenarioInfo& find_scenario(const std::string& name);

struct ScenarioSpec {
  std::string name;
  nlohmann::json overrides = nlohmann::json::object();
  std::filesystem::path out_dir = "out";
  std::uint64_t seed = 1;
  int jobs = 1;
  bool write_files = true;
};

/// Reads {"scenario": name, "params": {...}, "seed": S}; ConfigError with line/column on
/// parse failures.
ScenarioSpec load_scenario_file(const std::filesystem::path& path);

/// Defaults with overrides applied. Keys must exist in the defaults and the JSON types must
/// agree (integers are accepted where floats are expected).
nlohmann::json merge_params(const ScenarioInfo& info, const nlohmann::json& overrides);

/// Schema, range and box-admissibility checks; empty when the file is valid.
std::vector<std::string> validate_config(const std::filesystem::path& path);
std::vector<std::string> validate_spec(const ScenarioSpec& spec);

/// Runs the scenario, writing report.txt, report.json and data files
/// under out_dir/<scenario>/ when write_files is set.
ScenarioReport run_scenario(const ScenarioSpec& spec);

void write_report_text(std::ostream& os, const ScenarioReport& report);
nlohmann::json report_to_json(const ScenarioReport& report);

/// Frozen regression constants from the pilot runs.
struct CalibratedConstants {
  double continuity_constant;    ///< C in W2(t_k, t_k+1) <= C (t_k+1^{1/n} - t_k^{1/n})
  double dirac_linf_constant;    ///< C in |u(t)|_inf <= C / t
  double asymptotic_threshold;   ///< relative L1 bound on the renormalised field error
  std::string source;            ///< file path or "built-in"
};

/// Reads the constants file (default: constants/calibrated.json in the source tree).
CalibratedConstants load_constants(const std::filesystem::path& path = {});
/// Pilot runs; returns the document to be written as the constants file.
nlohmann::json calibrate_constants();

}  // namespace mfield
