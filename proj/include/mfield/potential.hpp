#pragma once

#include <optional>

#include "mfield/grid.hpp"
#include "mfield/kernels.hpp"

namespace mfield {

/// Velocity v = -grad (-Delta)^{-s} u by free-space convolution.
VectorField velocity(const DensityField& u, Exponent s);

/// Radial speed v = M / r^{n-1}; v(0) = 0.
RadialProfile radial_velocity(const MassFunction& mass);

/// Interaction energy.
///
/// For (n = 2, s = 1) the renormalised energy int |grad w|^2 + 2 int u0 w with
/// w = (-Delta)^{-1}(u - u0) is returned, which needs `reference` of equal mass
/// (relative mismatch <= 1e-8). Otherwise int u p with p = (-Delta)^{-s} u, which is
/// defined here for n = 2, s < 1 and n = 1, s < 1/2. Other combinations throw DomainError.
double energy(const DensityField& u, Exponent s, const std::optional<DensityField>& reference = {});

/// Newtonian energy int |grad p|^2 of a radial density in dimension n >= 3, from its mass
/// function: |S^{n-1}| int M^2 r^{1-n} dr, including the exterior contribution beyond r_max.
double radial_energy(const MassFunction& mass);

/// Double-integral form C_{n,1-s} iint (v(x) - v(y)) (w(x) - w(y)) |x - y|^{-n-2(1-s)},
/// for s < 1. Pairs with one point outside the box are included through the exact
/// lattice sum of the kernel.
double bilinear_form(const DensityField& v, const DensityField& w, Exponent s);

/// sum_{m in Z^n, m != 0} |m|^{-n-2r}, r > 0.
double lattice_power_sum(int dim, double r);

struct LogLipschitzEstimate {
  double constant;  ///< smallest C with |grad p(x) - grad p(y)| <= C (|u|_1 + |u|_inf) omega(|x-y|)
  double modulus;   ///< same bound without the (|u|_1 + |u|_inf) normalisation; linear in u
};

/// Measured log-Lipschitz modulus of grad p, p = (-Delta)^{-1} u, with
/// omega(d) = d (|log d| 1_{d <= 1/e} + 1). Scans all nearest-neighbour pairs and all
/// pairs from a strided subset of cells.
LogLipschitzEstimate log_lipschitz_modulus(const DensityField& u);

}  // namespace mfield
