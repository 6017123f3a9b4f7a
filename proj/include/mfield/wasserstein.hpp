#pragma once

#include <functional>
#include <vector>

#include "mfield/grid.hpp"

namespace mfield {

/// W_p between radial measures with a common centre from their mass functions, by
/// W_p^p = int_0^Mtot |Q_1(m) - Q_2(m)|^p dm, Q_i the generalised inverse of the full mass
/// |S^{n-1}| M_i, with a `quadrature`-point midpoint rule in m.
/// Throws DomainError when the totals differ by more than 1e-8 relative.
double wasserstein_radial(const MassFunction& a, const MassFunction& b, double p,
                          int quadrature = 8192);

/// Quantile of the full mass |S^{n-1}| M at level m (0 <= m <= full total).
double radial_quantile(const MassFunction& M, double m);

/// W_p between a grid field, seen as point masses at cell centres projected onto the radius
/// about `center`, and a radial reference given by its full-mass quantile function.
/// The reference must carry the field's mass.
double wasserstein_field_radial(const DensityField& u, const Point& center,
                                const std::function<double(double)>& reference_quantile,
                                double p = 2.0, int quadrature = 8192);

/// W_2 from a field to the patch of equal mass with height 1/(t + tau) about `center`.
double wasserstein_to_patch(const DensityField& u, const Point& center, double tau, double t);

/// Closed form W_2 between two times of one patch of full mass M:
/// (n/|S|)^{1/n} M^{1/2+1/n} (1 + 2/n)^{-1/2} |(t2+tau)^{1/n} - (t1+tau)^{1/n}|.
double patch_w2_closed_form(int dim, double mass, double tau, double t1, double t2);

struct ContinuityInterval {
  double t0, t1;
  double distance;
  double bound;
  bool ok;
};

struct ContinuityReport {
  double constant;
  double max_ratio;  ///< max distance / (t1^{1/n} - t0^{1/n})
  std::vector<ContinuityInterval> intervals;
  bool ok;
};

/// Checks W_2(u(t_k), u(t_{k+1})) <= C (t_{k+1}^{1/n} - t_k^{1/n}) along a radial trajectory
/// (t_k > 0). Equal times give distance 0 and pass.
ContinuityReport wasserstein_continuity_check(const std::vector<double>& times,
                                              const std::vector<MassFunction>& masses,
                                              double constant);

}  // namespace mfield
