#include "mfield/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "mfield/errors.hpp"

namespace mfield {

CartesianGrid::CartesianGrid(int dim, double half_width, int cells)
    : dim_(dim), half_width_(half_width), cells_(cells) {
  if (dim != 1 && dim != 2) {
    throw DomainError("CartesianGrid: dimension must be 1 or 2, got " + std::to_string(dim));
  }
  if (cells < 8 || cells % 2 != 0) {
    throw DomainError("CartesianGrid: cells per axis must be even and >= 8, got " +
                      std::to_string(cells));
  }
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw DomainError("CartesianGrid: half-width must be positive and finite");
  }
}

double CartesianGrid::cell_volume() const { return std::pow(h(), dim_); }

std::size_t CartesianGrid::size() const {
  const auto n = static_cast<std::size_t>(cells_);
  return dim_ == 1 ? n : n * n;
}

Point CartesianGrid::center(std::size_t flat) const {
  const auto n = static_cast<std::size_t>(cells_);
  if (dim_ == 1) return {coord(static_cast<int>(flat)), 0.0};
  return {coord(static_cast<int>(flat / n)), coord(static_cast<int>(flat % n))};
}

std::size_t CartesianGrid::flat_index(int i, int j) const {
  if (dim_ == 1) return static_cast<std::size_t>(i);
  return static_cast<std::size_t>(i) * static_cast<std::size_t>(cells_) +
         static_cast<std::size_t>(j);
}

std::size_t CartesianGrid::locate(const Point& x) const {
  auto axis = [&](double c) {
    const int i = static_cast<int>(std::floor((c + half_width_) / h()));
    return std::clamp(i, 0, cells_ - 1);
  };
  return dim_ == 1 ? flat_index(axis(x[0])) : flat_index(axis(x[0]), axis(x[1]));
}

DensityField::DensityField(CartesianGrid grid)
    : grid_(grid), values_(grid.size(), 0.0) {}

DensityField::DensityField(CartesianGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw DomainError("DensityField: value count does not match grid");
  }
  for (double v : values_) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw DomainError("DensityField: values must be finite and nonnegative");
    }
  }
}

VectorField::VectorField(CartesianGrid g)
    : grid(g), components(static_cast<std::size_t>(g.dim()), std::vector<double>(g.size(), 0.0)) {}

double VectorField::sup_norm() const {
  double best = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double s = 0.0;
    for (const auto& c : components) s += c[i] * c[i];
    best = std::max(best, s);
  }
  return std::sqrt(best);
}

double sigma_of_r(int dim, double r) { return std::pow(r, dim) / dim; }

double r_of_sigma(int dim, double sigma) {
  if (sigma <= 0.0) return 0.0;
  return std::pow(dim * sigma, 1.0 / dim);
}

RadialGrid::RadialGrid(int dim, int nodes, double r_max)
    : dim_(dim), nodes_(nodes), r_max_(r_max), sigma_max_(sigma_of_r(dim, r_max)) {
  if (dim < 1) throw DomainError("RadialGrid: dimension must be >= 1");
  if (nodes < 16) throw DomainError("RadialGrid: need at least 16 nodes");
  if (!(r_max > 0.0) || !std::isfinite(r_max)) {
    throw DomainError("RadialGrid: r_max must be positive and finite");
  }
}

double RadialGrid::r(int j) const { return r_of_sigma(dim_, sigma(j)); }

RadialProfile::RadialProfile(RadialGrid g, std::vector<double> v)
    : grid(g), values(std::move(v)) {
  if (values.size() != static_cast<std::size_t>(grid.nodes())) {
    throw DomainError("RadialProfile: value count does not match grid");
  }
  for (double x : values) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw DomainError("RadialProfile: values must be finite and nonnegative");
    }
  }
}

MassFunction::MassFunction(RadialGrid g, std::vector<double> v)
    : grid(g), values(std::move(v)) {
  if (values.size() != static_cast<std::size_t>(grid.nodes())) {
    throw DomainError("MassFunction: value count does not match grid");
  }
  const double scale = std::max(1.0, std::abs(values.back()));
  const double slack = 1e-12 * scale;
  if (std::abs(values.front()) > slack) throw DomainError("MassFunction: M(0) must vanish");
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (!std::isfinite(values[j]) || values[j] < -slack) {
      throw DomainError("MassFunction: values must be finite and nonnegative");
    }
    if (j > 0 && values[j] < values[j - 1] - slack) {
      throw DomainError("MassFunction: values must be nondecreasing in sigma");
    }
  }
}

double MassFunction::at_sigma(double sigma) const {
  if (sigma <= 0.0) return values.front();
  const double x = sigma / grid.dsigma();
  const auto j = static_cast<std::size_t>(x);
  if (j + 1 >= values.size()) return values.back();
  const double w = x - static_cast<double>(j);
  return (1.0 - w) * values[j] + w * values[j + 1];
}

double sphere_area(int dim) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * dim) / std::tgamma(0.5 * dim);
}

double ball_volume(int dim) { return sphere_area(dim) / dim; }

}  // namespace mfield
