#pragma once

#include <array>
#include <vector>

#include "mfield/grid.hpp"

namespace mfield {

/// Expanding ball of height 1/(t+tau) and radius R (t+tau)^{1/n}. Any n >= 1; the
/// point-valued overloads use `center` and need n <= 2.
struct PatchSpec {
  int dim = 2;
  double radius = 1.0;
  double tau = 1.0;
  Point center{0.0, 0.0};

  void validate() const;
  double support_radius(double t) const;
  double height(double t) const;
  /// Radial mass R^n / n (no angular factor).
  double radial_mass() const;
  /// Full mass omega_n R^n.
  double total_mass() const;
};

/// Value and first derivatives of a mass function M(sigma, t).
struct MassSample {
  double M;
  double M_t;
  double M_sigma;
};

double patch_density(const PatchSpec& spec, double r, double t);
double patch_density(const PatchSpec& spec, const Point& x, double t);
/// M = min(r^n, R^n (t+tau)) / (n (t+tau)); derivatives taken in (sigma, t).
MassSample patch_mass(const PatchSpec& spec, double r, double t);

struct LargestSolution {
  double density;
  MassSample mass;
};

/// u = 1/t, M = r^n/(n t).
LargestSolution largest_solution(double r, double t, int dim);

/// t^{-alpha} (C1 - k1 |x|^2 t^{-2 alpha/n})_+^{1-s}, alpha = n/(n+2-2s).
struct BarenblattSpec {
  int dim = 2;
  double s = 0.5;
  double C1 = 1.0;
  double k1 = 1.0;

  void validate() const;
  double alpha() const;
  double beta() const;
  /// Support radius sqrt(C1/k1) t^{beta}.
  double support_radius(double t) const;
};

double barenblatt_density(const BarenblattSpec& spec, double r, double t);
double barenblatt_density(const BarenblattSpec& spec, const Point& x, double t);
/// Full mass omega-weighted, by quadrature; independent of t.
double barenblatt_mass(const BarenblattSpec& spec);
/// Profile with total (full) mass `mass` whose support at t = 1 has radius `radius`.
BarenblattSpec barenblatt_matched(int dim, double s, double mass, double radius);
/// C1 for which the profile with the given k1 has unit full mass.
BarenblattSpec barenblatt_unit_mass(int dim, double s, double k1);

/// Inner patch of height c1 and radius R1 plus an annulus R2 < r < R3 of height c2 with
/// c2 R2^n = c1 R1^n.
struct TwoPatchSpec {
  int dim = 2;
  double c1 = 1.0;
  double c2 = 0.25;
  double R1 = 1.0;
  double R2 = 2.0;
  double R3 = 3.0;

  /// c2 is set by the continuity condition c2 R2^n = c1 R1^n.
  static TwoPatchSpec make(int dim, double c1, double R1, double R2, double R3);
  void validate() const;
  double tau1() const { return 1.0 / c1; }
  double tau2() const { return 1.0 / c2; }
  /// Interface radii S1, S2, S3 at time t.
  std::array<double, 3> interfaces(double t) const;
  double radial_mass() const;
  /// Knots (sigma, M) of the piecewise-linear initial mass function.
  std::vector<std::array<double, 2>> initial_mass_knots() const;
};

struct TwoPatchState {
  double density;
  double mass;
  std::array<double, 3> interfaces;
};

TwoPatchState two_patch_state(const TwoPatchSpec& spec, double r, double t);

}  // namespace mfield
