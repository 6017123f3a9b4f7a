#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <set>

#include "doctest.h"
#include "mfield/errors.hpp"
#include "mfield/io.hpp"
#include "mfield/scenarios.hpp"

using namespace mfield;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path source(const std::string& rel) { return fs::path(MFIELD_SOURCE_DIR) / rel; }

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("mfield-unit-" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), {}};
}

}  // namespace

TEST_CASE("registry") {
  const auto& reg = scenario_registry();
  CHECK(reg.size() == 9);
  std::set<std::string> six;
  for (const auto& s : reg)
    if (s.section == 6) six.insert(s.name);
  CHECK(six == std::set<std::string>{"two-patch", "non-comparison", "barenblatt-limit", "vortex-patch"});
  CHECK(find_scenario("asymptotics").name == "asymptotics");
  CHECK_THROWS_AS(find_scenario("nope"), ConfigError);
}

TEST_CASE("parameter merging") {
  const auto& info = find_scenario("vortex-patch");
  const auto merged = merge_params(info, json{{"cells", 32}, {"final_time", 1}});
  CHECK(merged["cells"] == 32);
  CHECK(merged["final_time"].get<double>() == 1.0);
  CHECK_THROWS_AS(merge_params(info, json{{"cellz", 32}}), ConfigError);
  CHECK_THROWS_AS(merge_params(info, json{{"cells", "many"}}), ConfigError);
}

TEST_CASE("config validation") {
  for (const auto& e : fs::directory_iterator(source("configs")))
    CHECK_MESSAGE(validate_config(e.path()).empty(), e.path().string());
  for (const auto& e : fs::directory_iterator(source("tests/data")))
    CHECK_MESSAGE(!validate_config(e.path()).empty(), e.path().string());
  const auto syntax = validate_config(source("tests/data/invalid_syntax.json"));
  REQUIRE(!syntax.empty());
  CHECK(syntax.front().find("line") != std::string::npos);
  const auto box = validate_config(source("tests/data/invalid_box.json"));
  REQUIRE(!box.empty());
  CHECK(box.front().find("support") != std::string::npos);
}

TEST_CASE("constants file") {
  const auto c = load_constants();
  CHECK(c.continuity_constant > 0.0);
  CHECK(c.dirac_linf_constant > 0.0);
  CHECK(c.asymptotic_threshold == doctest::Approx(0.1));
  CHECK_THROWS(load_constants("/nonexistent/constants.json"));
}

TEST_CASE("unknown scenario writes nothing") {
  const auto dir = scratch("unknown");
  ScenarioSpec spec;
  spec.name = "not-a-scenario";
  spec.out_dir = dir;
  CHECK_THROWS_AS(run_scenario(spec), ConfigError);
  CHECK_FALSE(fs::exists(dir));
}

TEST_CASE("quick vortex patch run is deterministic") {
  auto spec = load_scenario_file(source("configs/vortex-patch-quick.json"));
  const auto a = scratch("det-a"), b = scratch("det-b");
  spec.out_dir = a;
  const auto ra = run_scenario(spec);
  spec.out_dir = b;
  const auto rb = run_scenario(spec);
  CHECK(ra.pass());
  CHECK(ra.check("mass_drift").pass);
  const auto csv = slurp(a / "vortex-patch" / "diagnostics.csv");
  CHECK(!csv.empty());
  CHECK(csv == slurp(b / "vortex-patch" / "diagnostics.csv"));
  const auto doc = json::parse(slurp(a / "vortex-patch" / "report.json"));
  for (const char* k : {"scenario", "seed", "pass", "params", "checks", "notes", "data"})
    CHECK(doc.contains(k));
  CHECK(doc["checks"].size() == rb.checks.size());
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("binary round trip") {
  const CartesianGrid g(2, 1.5, 8);
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = 0.1 * i;
  const auto p = scratch("bin") ;
  fs::create_directories(p);
  write_binary(p / "f.bin", DensityField(g, v));
  const auto back = read_binary(p / "f.bin");
  CHECK(back.grid() == g);
  CHECK(std::equal(v.begin(), v.end(), back.values().begin()));
  CHECK(fs::file_size(p / "f.bin") == 8 * 3 + 8 * v.size());
  CHECK(std::stod(format_double(0.1)) == 0.1);
  CHECK(format_double(0.1) == "0.1");
  fs::remove_all(p);
}
