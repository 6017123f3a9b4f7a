// Command-line front end: run, list, validate and calibrate scenarios.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 usage or configuration error,
// 3 numerical failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "mfield/errors.hpp"
#include "mfield/scenarios.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int cmd_run(const std::string& target, std::optional<std::uint64_t> seed, int jobs,
            const std::string& out) {
  mfield::ScenarioSpec spec;
  if (fs::is_regular_file(target)) {
    spec = mfield::load_scenario_file(target);
  } else {
    spec.name = target;
  }
  if (seed) spec.seed = *seed;
  spec.jobs = jobs;
  spec.out_dir = out;
  if (const char* env = std::getenv("MFIELD_OUT_DIR"); env && out.empty()) spec.out_dir = env;
  if (spec.out_dir.empty()) spec.out_dir = "out";
  const auto report = mfield::run_scenario(spec);
  mfield::write_report_text(std::cout, report);
  std::cout << "outputs in " << (spec.out_dir / spec.name).string() << "\n";
  return report.pass() ? 0 : 1;
}

int cmd_list(bool as_json, std::optional<int> section) {
  json arr = json::array();
  for (const auto& info : mfield::scenario_registry()) {
    if (section && info.section != *section) continue;
    if (as_json) {
      arr.push_back({{"name", info.name},
                     {"section", info.section},
                     {"anchor", info.anchor},
                     {"summary", info.summary},
                     {"defaults", info.defaults}});
    } else {
      std::cout << std::left << std::setw(20) << info.name << " " << std::setw(3) << info.section
                << " " << info.summary << "\n";
    }
  }
  if (as_json) std::cout << std::setw(2) << arr << "\n";
  return 0;
}

int cmd_validate(const std::vector<std::string>& paths) {
  int status = 0;
  for (const auto& p : paths) {
    const auto problems = mfield::validate_config(p);
    if (problems.empty()) {
      std::cout << p << ": ok\n";
    } else {
      status = 2;
      for (const auto& msg : problems) std::cout << p << ": " << msg << "\n";
    }
  }
  return status;
}

int cmd_calibrate(const std::string& output) {
  const json doc = mfield::calibrate_constants();
  fs::path path = output.empty() ? fs::path(MFIELD_SOURCE_DIR) / "constants" / "calibrated.json"
                                 : fs::path(output);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream os(path);
  if (!os) throw mfield::Error("cannot write " + path.string());
  os << std::setw(2) << doc << "\n";
  std::cout << std::setw(2) << doc << "\nwritten to " << path.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mean-field vortex density solver and scenario runner"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run a scenario by name or from a JSON config");
  std::string target, out;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
  run->add_option("target", target, "scenario name or config file")->required();
  run->add_option("--seed", seed, "random seed (overrides the config)");
  run->add_option("--jobs", jobs, "concurrent solver runs")->check(CLI::Range(1, 256));
  run->add_option("--out", out, "output directory (default: $MFIELD_OUT_DIR or ./out)");

  auto* list = app.add_subcommand("list", "List the registered scenarios");
  bool as_json = false;
  std::optional<int> section;
  list->add_flag("--json", as_json, "print the registry with defaults as JSON");
  list->add_option("--section", section, "only scenarios of this topic index");

  auto* validate = app.add_subcommand("validate", "Check config files without running them");
  std::vector<std::string> paths;
  validate->add_option("paths", paths, "config files")->required();

  auto* calibrate = app.add_subcommand("calibrate", "Run the pilots and write the constants file");
  std::string cal_out;
  calibrate->add_option("--output", cal_out, "destination (default: constants/calibrated.json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*run) return cmd_run(target, seed, jobs, out);
    if (*list) return cmd_list(as_json, section);
    if (*validate) return cmd_validate(paths);
    if (*calibrate) return cmd_calibrate(cal_out);
  } catch (const mfield::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const mfield::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const mfield::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
