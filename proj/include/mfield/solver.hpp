#pragma once

#include <string>
#include <vector>

#include "mfield/grid.hpp"
#include "mfield/initial_data.hpp"
#include "mfield/kernels.hpp"
#include "json.hpp"

namespace mfield {

enum class TransportScheme { DonorCell, Muscl };
enum class TimeIntegrator { Euler, SspRk2 };

std::string to_string(TransportScheme s);
std::string to_string(TimeIntegrator s);
TransportScheme transport_scheme_from(const std::string& name);
TimeIntegrator time_integrator_from(const std::string& name);

struct SolverConfig {
  CartesianGrid grid{2, 4.0, 256};
  double s = 1.0;
  double viscosity = 0.0;  ///< epsilon >= 0
  double cfl = 0.2;        ///< nu in (0, 1]
  double final_time = 1.0;
  std::vector<double> output_times;  ///< subset of (0, T]; T is always appended
  TransportScheme scheme = TransportScheme::Muscl;
  TimeIntegrator integrator = TimeIntegrator::SspRk2;
  InitialSpec initial = PatchInitial{};
  double admissibility_fraction = 0.9;
  double bound_warning = 1.05;  ///< monitor level for max u (t + tau)

  /// Throws ConfigError on any violated field invariant (not the box rule).
  void validate() const;
};

struct AdmissibilityResult {
  bool ok;
  double required;  ///< |c| + rho (1 + |u0|_inf T)^{1/n}
  double limit;     ///< fraction * L
  std::string message;
};

/// Box rule: the support-propagation bound from the initial support ball (centre of mass c,
/// radius rho measured to cell corners) must stay inside fraction * L over [0, T].
AdmissibilityResult check_admissibility(const SolverConfig& cfg, const DensityField& u0);

struct StepResult {
  DensityField u;
  double clipped_mass;  ///< mass added by clipping negative values
  std::size_t clipped_cells;
};

/// Largest dt allowed: nu min(h / |v|_inf, h^2 / (2 n eps)).
double stable_dt(const DensityField& u, const SolverConfig& cfg);

/// One conservative step of u_t = eps Lap u + div(u grad p). Throws NumericalError when
/// dt exceeds stable_dt (1e-12 relative slack) or a non-finite value appears.
StepResult step(const DensityField& u, const SolverConfig& cfg, double dt);

struct Snapshot {
  double t;
  DensityField u;
};

struct StepRecord {
  double t;
  double dt;
  double mass;
  double linf;
  double bound_ratio;
};

struct Trajectory {
  std::vector<Snapshot> snapshots;  ///< t = 0 first, then every output time
  std::vector<StepRecord> steps;
  std::vector<std::string> warnings;
  double tau = 0.0;  ///< 1 / sup u0 (0 for zero data)
  double max_bound_ratio = 0.0;
  double clipped_mass = 0.0;
  std::size_t clipped_cells = 0;
  double wall_seconds = 0.0;

  const DensityField& at(double t) const;
};

/// Builds the initial field and integrates to T. Throws ConfigError when the box rule fails.
Trajectory run(const SolverConfig& cfg);
/// Same from an explicit initial field (the box rule is still enforced).
Trajectory run(const SolverConfig& cfg, const DensityField& u0);

/// Config echo, timings, bound monitor and clipping ledger.
nlohmann::json run_summary(const SolverConfig& cfg, const Trajectory& traj);
nlohmann::json to_json(const SolverConfig& cfg);

struct SweepMember {
  double s;
  double distance;  ///< |u_s(T) - u_1(T)|_1
  Trajectory trajectory;
};

struct SweepReport {
  std::vector<SweepMember> members;  ///< sorted by s
  bool nonincreasing;                ///< distances nonincreasing as s increases
  std::string error;                 ///< first failure, if any (members are then partial)
};

/// Runs the same config for every s in s_list (which must include 1), at most `jobs`
/// concurrently.
SweepReport sweep_s(const SolverConfig& base, std::vector<double> s_list, int jobs = 1);

/// max |x - center| over cell centres with u > floor_fraction |u|_inf; 0 for a zero field.
double support_radius(const DensityField& u, const Point& center, double floor_fraction);

}  // namespace mfield
