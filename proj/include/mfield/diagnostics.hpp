#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mfield/grid.hpp"
#include "mfield/kernels.hpp"

namespace mfield {

/// One row per output time. NaN marks a quantity that is not defined for the run.
struct DiagnosticsRecord {
  double t = 0.0;
  double mass = 0.0;
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
  double energy = 0.0;
  double second_moment = 0.0;
  double support_radius = 0.0;
  double entropy = 0.0;
  double dissipation = 0.0;
  double w2_reference = 0.0;
  double bound_ratio = 0.0;
};

/// Column names in CSV order.
const std::vector<std::string>& diagnostics_columns();
void write_diagnostics_csv(std::ostream& os, const std::vector<DiagnosticsRecord>& rows);

/// y = x / (t+1)^{1/n}, log time log(1+t), U = (t+1) u, on the same box as u.
struct RenormalizedState {
  DensityField U;
  double t;
  double log_time;
  double scale;  ///< (t+1)^{1/n}
};

/// Conservative rebinning of u(., t) onto the y grid through per-axis overlap weights.
RenormalizedState renormalize(const DensityField& u, double t);

/// Radius of the ball of full mass M at unit height: omega_n R0^n = M.
double equilibrium_radius(int dim, double mass);

/// |U - chi_{|y| <= R0}|_1 with omega_n R0^n = M; the indicator is cell-averaged.
double asymptotic_error(const RenormalizedState& state, double mass);

/// C^2 bump A (1 - |y|^2/R0^2)^3_+ of full mass M, rescaled on the grid to carry exactly
/// the mass of `like`.
DensityField entropy_reference(const DensityField& like);

struct EntropyDissipation {
  double entropy;
  double dissipation;
};

/// Ent = 1/2 E(U; U0) + 1/(2n) int U |y|^2 and D = int U |V - y/n|^2, V the s = 1 velocity
/// of U. Ent needs n = 2 and a reference of equal mass; D is computed for n in {1, 2}.
/// Without a reference the entropy is NaN.
EntropyDissipation entropy_and_dissipation(const RenormalizedState& state,
                                           const std::optional<DensityField>& reference);

/// |V - y/n|_{L^2(B_R0)} for the renormalised velocity, R0 from the matched mass.
double velocity_error_on_ball(const RenormalizedState& state, double mass);

struct DiagnosticsOptions {
  Exponent s{1.0};
  Point center{0.0, 0.0};
  double floor_fraction = 0.05;
  double tau = 0.0;                           ///< for bound_ratio and the W_2 reference patch
  std::optional<DensityField> energy_reference;  ///< u0 for the n = 2, s = 1 energy
  bool entropy = true;
};

/// All record fields for one snapshot.
DiagnosticsRecord compute_record(const DensityField& u, double t, const DiagnosticsOptions& opt);

/// Predicted energy decay rate -dE/dt = 2 int u |v|^2 + 2 eps int u^2.
double dissipation_rate(const DensityField& u, Exponent s, double viscosity);

}  // namespace mfield
