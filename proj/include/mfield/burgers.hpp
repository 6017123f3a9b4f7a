#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "mfield/grid.hpp"

namespace mfield {

/// Trapezoidal accumulation M(sigma_j) = int_0^{sigma_j} u d sigma.
MassFunction mass_transform(const RadialProfile& u);
/// u = dM/dsigma by centred differences (one-sided at the ends), clipped at 0.
RadialProfile density_from_mass(const MassFunction& M);

/// Exact solution of M_t + M M_sigma = 0 from monotone piecewise-linear data.
///
/// The data are given as knots (sigma_k, M_k) with nondecreasing sigma; two consecutive
/// knots at the same sigma encode a jump. A positive first value M(0) is an implicit jump
/// from 0 at the origin (point mass). Beyond the last knot M is constant.
class CharacteristicSolution {
 public:
  CharacteristicSolution(int dim, std::vector<std::array<double, 2>> knots);
  /// Knots sampled from a MassFunction's nodes.
  static CharacteristicSolution from_mass(const MassFunction& M);
  /// Point mass of radial mass m at the origin.
  static CharacteristicSolution dirac(int dim, double m);

  int dim() const { return dim_; }
  double total() const { return knots_.back()[1]; }
  const std::vector<std::array<double, 2>>& knots() const { return knots_; }

  /// Initial data M0(sigma), right-continuous.
  double initial(double sigma) const;
  /// M(sigma, t).
  double mass(double sigma, double t) const;
  /// u(sigma, t) = M_sigma.
  double density(double sigma, double t) const;
  /// Position sigma at time t of the characteristic leaving knot k (right value at jumps).
  double knot_image(std::size_t k, double t) const;
  /// Evolved mass function on a radial grid.
  MassFunction sample(const RadialGrid& grid, double t) const;

 private:
  struct Jump {
    double sigma, left, right;
  };
  int dim_;
  std::vector<std::array<double, 2>> knots_;
  std::vector<Jump> jumps_;
  double slope_at(double sigma0) const;
};

/// Largest admissible step for the Godunov scheme at CFL number nu.
double burgers_max_dt(const MassFunction& M, double nu);

/// One upwind (Godunov, M >= 0) step of M_t + (M^2/2)_sigma = 0 with M(0) = 0.
/// Throws NumericalError if dt max(M)/dsigma > nu (nu <= 1) or on non-finite values.
MassFunction step_finite_volume(const MassFunction& M, double dt, double nu = 0.9);

struct InequalityViolation {
  std::size_t step;  ///< index k of the interval [t_k, t_{k+1}]
  int node;
  double rate;       ///< (M_{k+1} - M_k) / dt
  double lower;      ///< -M_k / t_{k+1}
  bool upper_failed;
};

struct InequalityReport {
  double tolerance;
  double max_rate;            ///< max over nodes/steps of dM/dt (want <= tol)
  double min_lower_margin;    ///< min of dM/dt + M_k/t_{k+1} (want >= -tol)
  std::vector<InequalityViolation> violations;  ///< capped at 100 entries
  std::size_t violation_count = 0;
  bool ok() const { return violation_count == 0; }
};

/// Discrete forms of M_t <= 0 and M_t >= -M/t. The lower bound is checked as
/// (M_{k+1} - M_k)/dt >= -M_k/t_{k+1}, which is (t M)_{k+1} >= (t M)_k exactly, so the
/// largest solution gives equality.
InequalityReport check_monotone_inequalities(const std::vector<double>& times,
                                             const std::vector<MassFunction>& masses,
                                             double tol);

/// CSV with columns t,sigma,r,M,u,v for every node at every time.
void write_radial_trajectory(std::ostream& os, const std::vector<double>& times,
                             const std::vector<MassFunction>& masses);

}  // namespace mfield
