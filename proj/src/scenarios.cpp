#include "mfield/scenarios.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "mfield/errors.hpp"
#include "mfield/io.hpp"
#include "scenario_impl.hpp"

namespace mfield {

using nlohmann::json;

namespace detail {

void Context::check(const std::string& id, const std::string& citation,
                    const std::string& relation, double measured, double tolerance, bool pass,
                    const std::string& detail) {
  report.checks.push_back({id, citation, relation, measured, tolerance, pass, detail});
}

void Context::check_le(const std::string& id, const std::string& citation, double measured,
                       double tolerance, const std::string& detail) {
  check(id, citation, "<=", measured, tolerance, measured <= tolerance, detail);
}

void Context::check_ge(const std::string& id, const std::string& citation, double measured,
                       double tolerance, const std::string& detail) {
  check(id, citation, ">=", measured, tolerance, measured >= tolerance, detail);
}

void Context::write(const std::string& name,
                    const std::function<void(std::ostream&)>& fill) const {
  if (dir.empty()) return;
  std::ofstream os(dir / name);
  if (!os) throw Error("cannot write " + (dir / name).string());
  fill(os);
}

void Context::write_binary_field(const std::string& name, const DensityField& u) const {
  if (dir.empty()) return;
  write_binary(dir / name, u);
}

double num(const json& p, const char* key) {
  const auto& v = p.at(key);
  if (!v.is_number()) throw ConfigError(std::string("parameter '") + key + "' must be a number");
  return v.get<double>();
}

int integer(const json& p, const char* key) {
  const auto& v = p.at(key);
  if (!v.is_number()) throw ConfigError(std::string("parameter '") + key + "' must be an integer");
  const double d = v.get<double>();
  if (d != std::floor(d) || std::abs(d) > 1e9)
    throw ConfigError(std::string("parameter '") + key + "' must be an integer");
  return static_cast<int>(d);
}

std::string str(const json& p, const char* key) {
  const auto& v = p.at(key);
  if (!v.is_string()) throw ConfigError(std::string("parameter '") + key + "' must be a string");
  return v.get<std::string>();
}

std::vector<double> nums(const json& p, const char* key) {
  const auto& v = p.at(key);
  if (!v.is_array()) throw ConfigError(std::string("parameter '") + key + "' must be an array");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number())
      throw ConfigError(std::string("parameter '") + key + "' must hold numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

double resolve_viscosity(const json& v, const CartesianGrid& grid) {
  if (v.is_string()) {
    if (v.get<std::string>() == "h") return grid.h();
    throw ConfigError("viscosity must be a number or \"h\"");
  }
  if (!v.is_number()) throw ConfigError("viscosity must be a number or \"h\"");
  const double e = v.get<double>();
  if (!(e >= 0.0) || !std::isfinite(e)) throw ConfigError("viscosity must be >= 0");
  return e;
}

SolverConfig solver_from(const json& p, const InitialSpec& init, int dim,
                         const std::string& prefix) {
  auto key = [&](const char* k) { return prefix + k; };
  SolverConfig cfg;
  const int cells = integer(p, key("cells").c_str());
  const double L = num(p, key("half_width").c_str());
  if (cells < 4 || cells > 4096) throw ConfigError(key("cells") + " must be in [4, 4096]");
  if (!(L > 0.0)) throw ConfigError(key("half_width") + " must be positive");
  cfg.grid = CartesianGrid(dim, L, cells);
  cfg.final_time = num(p, key("final_time").c_str());
  cfg.output_times = nums(p, key("output_times").c_str());
  cfg.cfl = num(p, "cfl");
  cfg.scheme = transport_scheme_from(str(p, "scheme"));
  cfg.integrator = time_integrator_from(str(p, "integrator"));
  cfg.initial = init;
  return cfg;
}

}  // namespace detail

namespace {

const std::vector<detail::Scenario>& all() { return detail::scenarios(); }

const detail::Scenario& find(const std::string& name) {
  for (const auto& s : all())
    if (s.info.name == name) return s;
  std::string known;
  for (const auto& s : all()) known += (known.empty() ? "" : ", ") + s.info.name;
  throw ConfigError("unknown scenario '" + name + "' (known: " + known + ")");
}

bool same_kind(const json& def, const json& v) {
  if (def.is_null()) return v.is_null() || v.is_number();
  if (def.is_number()) return v.is_number();
  if (def.is_string()) return v.is_string();
  if (def.is_boolean()) return v.is_boolean();
  if (def.is_object()) return v.is_object();
  if (def.is_array()) {
    if (!v.is_array()) return false;
    if (def.empty()) return true;
    for (const auto& e : v) {
      bool ok = false;
      for (const auto& d : def) ok = ok || same_kind(d, e);
      if (!ok) return false;
    }
    return true;
  }
  return false;
}

void merge_into(json& target, const json& overrides, const std::string& path) {
  if (!overrides.is_object()) throw ConfigError("params" + path + " must be an object");
  for (const auto& [k, v] : overrides.items()) {
    const std::string where = path + "." + k;
    if (!target.contains(k)) throw ConfigError("unknown parameter 'params" + where + "'");
    auto& slot = target[k];
    if (!same_kind(slot, v)) throw ConfigError("parameter 'params" + where + "' has the wrong type");
    if (slot.is_object())
      merge_into(slot, v, where);
    else
      slot = v;
  }
}

std::string line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

CalibratedConstants builtin_constants() { return {1.25, 1.0, 0.1, "built-in"}; }

}  // namespace

bool ScenarioReport::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

const CheckResult& ScenarioReport::check(const std::string& id) const {
  for (const auto& c : checks)
    if (c.id == id) return c;
  throw Error("report has no check '" + id + "'");
}

const std::vector<ScenarioInfo>& scenario_registry() {
  static const std::vector<ScenarioInfo> infos = [] {
    std::vector<ScenarioInfo> out;
    for (const auto& s : all()) out.push_back(s.info);
    return out;
  }();
  return infos;
}

const ScenarioInfo& find_scenario(const std::string& name) { return find(name).info; }

json merge_params(const ScenarioInfo& info, const json& overrides) {
  json merged = info.defaults;
  merge_into(merged, overrides, "");
  return merged;
}

ScenarioSpec load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": JSON syntax error at " + line_column(text, e.byte - 1));
  }
  if (!doc.is_object()) throw ConfigError(path.string() + ": top level must be an object");
  ScenarioSpec spec;
  for (const auto& [k, v] : doc.items()) {
    if (k == "scenario") {
      if (!v.is_string()) throw ConfigError(path.string() + ": 'scenario' must be a string");
      spec.name = v.get<std::string>();
    } else if (k == "params") {
      if (!v.is_object()) throw ConfigError(path.string() + ": 'params' must be an object");
      spec.overrides = v;
    } else if (k == "seed") {
      if (!v.is_number_unsigned()) throw ConfigError(path.string() + ": 'seed' must be a nonnegative integer");
      spec.seed = v.get<std::uint64_t>();
    } else {
      throw ConfigError(path.string() + ": unknown key '" + k + "'");
    }
  }
  if (spec.name.empty()) throw ConfigError(path.string() + ": missing 'scenario'");
  return spec;
}

std::vector<std::string> validate_spec(const ScenarioSpec& spec) {
  std::vector<std::string> problems;
  try {
    const auto& sc = find(spec.name);
    const json params = merge_params(sc.info, spec.overrides);
    if (spec.jobs < 1) problems.push_back("jobs must be >= 1");
    for (auto& cfg : sc.plan(params)) {
      cfg.validate();
      const auto u0 = make_initial(cfg.initial, cfg.grid);
      const auto adm = check_admissibility(cfg, u0);
      if (!adm.ok && std::find(problems.begin(), problems.end(), adm.message) == problems.end())
        problems.push_back(adm.message);
    }
  } catch (const Error& e) {
    problems.push_back(e.what());
  } catch (const json::exception& e) {
    problems.push_back(std::string("parameter error: ") + e.what());
  }
  return problems;
}

std::vector<std::string> validate_config(const std::filesystem::path& path) {
  try {
    return validate_spec(load_scenario_file(path));
  } catch (const Error& e) {
    return {e.what()};
  }
}

ScenarioReport run_scenario(const ScenarioSpec& spec) {
  const auto& sc = find(spec.name);
  const auto problems = validate_spec(spec);
  if (!problems.empty()) {
    std::string msg = "invalid configuration for '" + spec.name + "':";
    for (const auto& p : problems) msg += "\n  " + p;
    throw ConfigError(msg);
  }
  ScenarioReport report;
  report.scenario = spec.name;
  report.seed = spec.seed;
  report.params = merge_params(sc.info, spec.overrides);

  std::filesystem::path dir;
  if (spec.write_files) {
    dir = spec.out_dir / spec.name;
    std::filesystem::create_directories(dir);
  }
  detail::Context ctx{report.params, spec.seed, spec.jobs, dir, load_constants(), report};
  const auto start = std::chrono::steady_clock::now();
  sc.execute(ctx);
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (spec.write_files) {
    std::ofstream txt(dir / "report.txt");
    write_report_text(txt, report);
    std::ofstream js(dir / "report.json");
    js << std::setw(2) << report_to_json(report) << "\n";
  }
  return report;
}

void write_report_text(std::ostream& os, const ScenarioReport& report) {
  os << "scenario " << report.scenario << "  seed " << report.seed << "\n";
  std::size_t passed = 0;
  for (const auto& c : report.checks) {
    passed += c.pass;
    os << (c.pass ? "PASS " : "FAIL ") << c.id << "  [" << c.citation << "]  measured "
       << format_double(c.measured) << " " << c.relation << " " << format_double(c.tolerance);
    if (!c.detail.empty()) os << "  (" << c.detail << ")";
    os << "\n";
  }
  for (const auto& n : report.notes) os << "note: " << n << "\n";
  os << "result " << (report.pass() ? "PASS" : "FAIL") << " (" << passed << "/"
     << report.checks.size() << " checks)  wall " << std::fixed << std::setprecision(2)
     << report.wall_seconds << " s\n";
  os << std::defaultfloat;
}

json report_to_json(const ScenarioReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"id", c.id},
                      {"citation", c.citation},
                      {"relation", c.relation},
                      {"measured", number_or_null(c.measured)},
                      {"tolerance", number_or_null(c.tolerance)},
                      {"pass", c.pass},
                      {"detail", c.detail}});
  }
  return {{"scenario", report.scenario},
          {"seed", report.seed},
          {"pass", report.pass()},
          {"params", report.params},
          {"checks", checks},
          {"notes", report.notes},
          {"data", report.data},
          {"wall_seconds", report.wall_seconds}};
}

CalibratedConstants load_constants(const std::filesystem::path& path) {
  std::filesystem::path p = path;
  if (p.empty()) {
    if (const char* env = std::getenv("MFIELD_CONSTANTS")) {
      p = env;
    } else {
      p = std::filesystem::path(MFIELD_SOURCE_DIR) / "constants" / "calibrated.json";
    }
  }
  std::ifstream in(p);
  if (!in) {
    if (!path.empty()) throw ConfigError("cannot read constants file " + p.string());
    return builtin_constants();
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error&) {
    throw ConfigError("constants file " + p.string() + " is not valid JSON");
  }
  CalibratedConstants c = builtin_constants();
  try {
    c.continuity_constant = doc.at("continuity_constant").get<double>();
    c.dirac_linf_constant = doc.at("dirac_linf_constant").get<double>();
    c.asymptotic_threshold = doc.at("asymptotic_threshold").get<double>();
  } catch (const json::exception&) {
    throw ConfigError("constants file " + p.string() + " lacks a required number");
  }
  c.source = p.string();
  return c;
}

}  // namespace mfield
