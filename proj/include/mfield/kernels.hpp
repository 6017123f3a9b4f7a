#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "mfield/grid.hpp"

namespace mfield {

/// Exponent s of the operator (-Delta)^{-s}, 0 < s <= 1.
class Exponent {
 public:
  explicit Exponent(double s);
  double value() const { return s_; }
  bool newtonian() const { return s_ == 1.0; }
  bool operator==(const Exponent&) const = default;

 private:
  double s_;
};

/// Coefficient d with grad (-Delta)^{-s} kernel = -d x |x|^{2s-n-2}.
/// Reduces to 1/|S^{n-1}| for s = 1.
double velocity_constant(int dim, double s);

/// Riesz potential constant c with (-Delta)^{-s} kernel = c |x|^{2s-n}; requires n != 2s.
double riesz_constant(int dim, double s);

/// Normalisation C_{n,s} of the singular-integral form of (-Delta)^s, 0 < s < 1.
double fractional_laplacian_constant(int dim, double s);

/// Linear free-space convolution on a CartesianGrid via zero padding to the doubled grid.
///
/// apply(u, K)_a = h^n sum_b k(x_a - x_b) u_b, where k is sampled at lattice
/// offsets; the offset-zero entry comes from the kernel callback with d = 0.
class FreeSpaceConvolver {
 public:
  using Spectrum = std::vector<std::complex<double>>;
  /// Kernel sampled at integer cell offsets (d0, d1); d1 = 0 for n = 1.
  using KernelFn = std::function<double(int d0, int d1)>;

  explicit FreeSpaceConvolver(const CartesianGrid& grid);
  ~FreeSpaceConvolver();
  FreeSpaceConvolver(const FreeSpaceConvolver&) = delete;
  FreeSpaceConvolver& operator=(const FreeSpaceConvolver&) = delete;

  const CartesianGrid& grid() const { return grid_; }
  Spectrum spectrum(const KernelFn& kernel) const;
  std::vector<double> apply(std::span<const double> values, const Spectrum& kernel) const;
  /// Forward-transforms once and applies several kernels.
  std::vector<std::vector<double>> apply_many(std::span<const double> values,
                                              const std::vector<const Spectrum*>& kernels) const;

 private:
  struct Plans;
  CartesianGrid grid_;
  int padded_;
  std::size_t real_size_;
  std::size_t complex_size_;
  std::unique_ptr<Plans> plans_;
};

/// Precomputed kernel spectra for one (grid, s) pair: the velocity kernel per axis and,
/// lazily, the scalar pressure kernel. Shared read-only once built.
class KernelTable {
 public:
  KernelTable(const CartesianGrid& grid, Exponent s);

  /// Process-wide cache keyed by (grid, s).
  static std::shared_ptr<const KernelTable> shared(const CartesianGrid& grid, Exponent s);

  const CartesianGrid& grid() const { return conv_.grid(); }
  Exponent exponent() const { return s_; }

  /// v = -grad (-Delta)^{-s} u at cell centres; u may be signed.
  VectorField velocity(std::span<const double> u) const;
  /// p = (-Delta)^{-s} u at cell centres; the logarithmic kernel is used when n = 2s.
  std::vector<double> pressure(std::span<const double> u) const;

  /// Sampled velocity kernel component along `axis` at integer offsets.
  double velocity_kernel(int axis, int d0, int d1) const;
  /// Sampled pressure kernel; the self entry is the analytic cell average.
  double pressure_kernel(int d0, int d1) const;

  const FreeSpaceConvolver& convolver() const { return conv_; }

 private:
  FreeSpaceConvolver conv_;
  Exponent s_;
  double vel_const_;
  std::vector<FreeSpaceConvolver::Spectrum> vel_spec_;
  mutable std::once_flag pressure_once_;
  mutable FreeSpaceConvolver::Spectrum pressure_spec_;
  double pressure_self_ = 0.0;
};

/// Cell average of |x|^q over the cell [-h/2, h/2]^n (q > -n).
double cell_average_power(int dim, double h, double q);
/// Cell average of log|x| over the cell [-h/2, h/2]^n.
double cell_average_log(int dim, double h);

}  // namespace mfield
