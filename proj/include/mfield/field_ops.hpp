#pragma once

#include <functional>
#include <limits>

#include "mfield/grid.hpp"

namespace mfield {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// h^n * sum of values.
double total_mass(const DensityField& field);

/// Discrete L^p norm with cell-volume weights; p = kInfinity gives the max value.
/// Throws DomainError for p < 1.
double lp_norm(const DensityField& field, double p);

/// h^n * sum u_i |x_i - center|^2.
double second_moment(const DensityField& field, const Point& center = {0.0, 0.0});

/// L^1 distance between two fields on the same grid.
double l1_distance(const DensityField& a, const DensityField& b);

/// Bin-averaged radial profile about `center` at the nodes of `rgrid`.
///
/// Node j collects the area of the annulus sigma in [sigma_j - dsigma/2, sigma_j + dsigma/2]
/// (clipped at 0); each cell is split into sub-cells so that bins thinner than a cell still
/// receive a fractional share. Bins with no coverage fall back to the value of the cell
/// containing the node. Throws DomainError when rgrid.r_max exceeds the distance from
/// `center` to the box boundary.
RadialProfile radial_average(const DensityField& field, const Point& center,
                             const RadialGrid& rgrid);

/// Cell averages of a pointwise function, from a `sub` x `sub` midpoint rule per cell.
/// Negative samples are clamped to zero.
DensityField sample_cell_average(const CartesianGrid& grid,
                                 const std::function<double(const Point&)>& f, int sub = 8);

/// Field value at the cell containing x (zero outside the box).
double value_at(const DensityField& field, const Point& x);

/// Radius of the smallest ball about `center` containing every cell with positive value,
/// measured to the farthest cell corner.
double support_extent(const DensityField& field, const Point& center = {0.0, 0.0});

/// Mass-weighted centroid.
Point center_of_mass(const DensityField& field);

}  // namespace mfield
