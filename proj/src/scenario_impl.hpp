#pragma once

// Internal interface between the scenario registry and the scenario bodies.

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "mfield/scenarios.hpp"

namespace mfield::detail {

struct Context {
  const nlohmann::json& params;
  std::uint64_t seed;
  int jobs;
  std::filesystem::path dir;  ///< empty when files are not written
  CalibratedConstants constants;
  ScenarioReport& report;

  void check(const std::string& id, const std::string& citation, const std::string& relation,
             double measured, double tolerance, bool pass, const std::string& detail = "");
  /// measured <= tolerance
  void check_le(const std::string& id, const std::string& citation, double measured,
                double tolerance, const std::string& detail = "");
  /// measured >= tolerance
  void check_ge(const std::string& id, const std::string& citation, double measured,
                double tolerance, const std::string& detail = "");
  void note(const std::string& text) { report.notes.push_back(text); }
  /// Writes dir/name through `fill` when files are enabled.
  void write(const std::string& name, const std::function<void(std::ostream&)>& fill) const;
  void write_binary_field(const std::string& name, const DensityField& u) const;
};

struct Scenario {
  ScenarioInfo info;
  /// Solver runs the scenario will perform; used for box admissibility in validation.
  std::function<std::vector<SolverConfig>(const nlohmann::json&)> plan;
  std::function<void(Context&)> execute;
};

const std::vector<Scenario>& scenarios();

// parameter helpers
double num(const nlohmann::json& p, const char* key);
int integer(const nlohmann::json& p, const char* key);
std::string str(const nlohmann::json& p, const char* key);
std::vector<double> nums(const nlohmann::json& p, const char* key);
/// "h" means the grid spacing; numbers are taken literally (must be >= 0).
double resolve_viscosity(const nlohmann::json& v, const CartesianGrid& grid);
/// Solver settings shared by the Cartesian scenarios; `prefix` selects keys like
/// prefix + "cells".
SolverConfig solver_from(const nlohmann::json& p, const InitialSpec& init, int dim = 2,
                         const std::string& prefix = "");

// scenario bodies
Scenario vortex_patch_scenario();
Scenario two_patch_scenario();
Scenario non_comparison_scenario();
Scenario s_sweep_scenario();
Scenario barenblatt_limit_scenario();
Scenario asymptotics_scenario();
Scenario dirac_fundamental_scenario();
Scenario radial_vs_field_scenario();
Scenario wasserstein_oracle_scenario();

// shared citations
namespace cite {
inline constexpr const char* mass = "conservation of mass";
inline constexpr const char* patch = "vortex patch solutions";
inline constexpr const char* universal = "universal bound u <= 1/(t + tau), tau = 1/sup u0";
inline constexpr const char* support = "support propagation R0 (1 + |u0|_inf t)^{1/n}";
inline constexpr const char* energy = "energy dissipation dE/dt = -2 int u |grad p|^2";
inline constexpr const char* entropy = "entropy dissipation of the renormalised flow";
inline constexpr const char* moment = "second-moment identity of the renormalised flow";
inline constexpr const char* burgers = "Burgers equation for the mass function";
inline constexpr const char* two_patch = "two-patch solution";
inline constexpr const char* benilan = "pointwise inequalities M_t <= 0 and M_t >= -M/t";
inline constexpr const char* largest = "largest solution u = 1/t";
inline constexpr const char* noncomparison = "non-comparison of densities";
inline constexpr const char* barenblatt = "Barenblatt profiles and the limit s -> 1";
inline constexpr const char* s_limit = "limit s -> 1 of solutions";
inline constexpr const char* dirac = "fundamental solution from point-mass data";
inline constexpr const char* decay = "L-infinity decay |u(t)|_inf <= C/t for measure data";
inline constexpr const char* asymptotic = "convergence to the vortex patch after renormalisation";
inline constexpr const char* wasserstein = "Wasserstein distance between radial measures";
inline constexpr const char* continuity = "Wasserstein continuity in time";
inline constexpr const char* loglip = "log-Lipschitz modulus of the velocity";
inline constexpr const char* newton = "radial velocity M / r^{n-1}";
}  // namespace cite

}  // namespace mfield::detail
