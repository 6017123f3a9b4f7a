#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace mfield {

/// Point in the plane; for one-dimensional grids only the first coordinate is used.
using Point = std::array<double, 2>;

/// Uniform cell-centred grid on the box [-L, L]^n, n in {1, 2}.
///
/// Fields living on the grid are cell averages and are taken to vanish outside
/// the box. Storage is row-major with axis 0 slowest.
class CartesianGrid {
 public:
  CartesianGrid(int dim, double half_width, int cells);

  int dim() const { return dim_; }
  double half_width() const { return half_width_; }
  int cells() const { return cells_; }
  double h() const { return 2.0 * half_width_ / cells_; }
  double cell_volume() const;
  std::size_t size() const;

  /// Centre coordinate of cell index i along any axis.
  double coord(int i) const { return -half_width_ + (i + 0.5) * h(); }
  Point center(std::size_t flat) const;
  std::size_t flat_index(int i, int j = 0) const;
  /// Index of the cell containing x, clamped to the box.
  std::size_t locate(const Point& x) const;

  bool operator==(const CartesianGrid& other) const = default;

 private:
  int dim_;
  double half_width_;
  int cells_;
};

/// Nonnegative cell-averaged density on a CartesianGrid.
class DensityField {
 public:
  explicit DensityField(CartesianGrid grid);
  DensityField(CartesianGrid grid, std::vector<double> values);

  const CartesianGrid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }

  /// Moves the storage out; the field is left empty.
  std::vector<double> release() && { return std::move(values_); }

 private:
  CartesianGrid grid_;
  std::vector<double> values_;
};

/// Vector field with one component array per axis.
struct VectorField {
  CartesianGrid grid;
  std::vector<std::vector<double>> components;

  explicit VectorField(CartesianGrid g);
  /// max over cells of the Euclidean norm.
  double sup_norm() const;
};

/// Radial nodes uniformly spaced in sigma = r^n / n.
class RadialGrid {
 public:
  RadialGrid(int dim, int nodes, double r_max);

  int dim() const { return dim_; }
  int nodes() const { return nodes_; }
  double r_max() const { return r_max_; }
  double sigma_max() const { return sigma_max_; }
  double dsigma() const { return sigma_max_ / (nodes_ - 1); }
  double sigma(int j) const { return j * dsigma(); }
  double r(int j) const;

  bool operator==(const RadialGrid& other) const = default;

 private:
  int dim_;
  int nodes_;
  double r_max_;
  double sigma_max_;
};

/// sigma = r^n / n and its inverse.
double sigma_of_r(int dim, double r);
double r_of_sigma(int dim, double sigma);

/// Radial density values u(r_j) >= 0 at RadialGrid nodes.
struct RadialProfile {
  RadialGrid grid;
  std::vector<double> values;

  RadialProfile(RadialGrid g, std::vector<double> v);
};

/// Cumulative radial mass M(sigma_j) = int_0^{r_j} s^{n-1} u ds (no angular factor).
struct MassFunction {
  RadialGrid grid;
  std::vector<double> values;

  MassFunction(RadialGrid g, std::vector<double> v);
  double total() const { return values.back(); }
  /// Piecewise-linear interpolation in sigma; constant beyond the last node.
  double at_sigma(double sigma) const;
};

/// Surface measure of the unit sphere S^{n-1} (2 for n = 1).
double sphere_area(int dim);
/// Volume of the unit ball in R^n.
double ball_volume(int dim);

}  // namespace mfield
