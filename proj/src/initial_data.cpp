#include "mfield/initial_data.hpp"

#include <cmath>
#include <numbers>

#include "mfield/errors.hpp"
#include "mfield/field_ops.hpp"
#include "mfield/io.hpp"

namespace mfield {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

double distance(const Point& x, const Point& c, int dim) {
  return dim == 1 ? std::abs(x[0] - c[0]) : std::hypot(x[0] - c[0], x[1] - c[1]);
}

}  // namespace

void GaussianSpec::validate() const {
  if (dim < 1) throw DomainError("GaussianSpec: dimension must be >= 1");
  if (!(peak > 0.0) || !(mass > 0.0)) throw DomainError("GaussianSpec: peak and mass must be positive");
  if (!(truncation > 0.0)) throw DomainError("GaussianSpec: truncation must be positive");
}

double GaussianSpec::width() const {
  validate();
  // mass = peak (2 pi w^2)^{n/2} P(chi^2_n <= truncation^2)
  double frac;
  if (dim == 1) {
    frac = std::erf(truncation / std::numbers::sqrt2);
  } else if (dim == 2) {
    frac = 1.0 - std::exp(-0.5 * truncation * truncation);
  } else {
    throw DomainError("GaussianSpec: only n <= 2 is supported");
  }
  const double w2pi = std::pow(mass / (peak * frac), 2.0 / dim);
  return std::sqrt(w2pi / (2.0 * std::numbers::pi));
}

double GaussianSpec::density(double r) const {
  const double w = width();
  if (r > truncation * w) return 0.0;
  return peak * std::exp(-0.5 * r * r / (w * w));
}

std::string initial_kind(const InitialSpec& spec) {
  return std::visit(overloaded{[](const PatchInitial&) { return std::string("patch"); },
                               [](const TwoPatchInitial&) { return std::string("two-patch"); },
                               [](const GaussianSpec&) { return std::string("gaussian"); },
                               [](const DiracInitial&) { return std::string("dirac"); },
                               [](const BarenblattInitial&) { return std::string("barenblatt"); },
                               [](const FileInitial&) { return std::string("file"); }},
                    spec);
}

int initial_dim(const InitialSpec& spec) {
  return std::visit(overloaded{[](const PatchInitial& p) { return p.spec.dim; },
                               [](const TwoPatchInitial& p) { return p.spec.dim; },
                               [](const GaussianSpec& g) { return g.dim; },
                               [](const DiracInitial& d) { return d.dim; },
                               [](const BarenblattInitial& b) { return b.spec.dim; },
                               [](const FileInitial& f) { return read_binary(f.path).grid().dim(); }},
                    spec);
}

DensityField make_initial(const InitialSpec& spec, const CartesianGrid& grid) {
  auto check_dim = [&](int d) {
    if (d != grid.dim()) throw ConfigError("initial data dimension does not match the grid");
  };
  return std::visit(
      overloaded{
          [&](const PatchInitial& p) {
            check_dim(p.spec.dim);
            return sample_cell_average(grid, [&](const Point& x) {
              return patch_density(p.spec, x, p.time);
            });
          },
          [&](const TwoPatchInitial& p) {
            check_dim(p.spec.dim);
            return sample_cell_average(grid, [&](const Point& x) {
              return two_patch_state(p.spec, distance(x, {0.0, 0.0}, grid.dim()), p.time).density;
            });
          },
          [&](const GaussianSpec& g) {
            check_dim(g.dim);
            return sample_cell_average(
                grid, [&](const Point& x) { return g.density(distance(x, g.center, g.dim)); });
          },
          [&](const DiracInitial& d) {
            check_dim(d.dim);
            if (!(d.mass > 0.0)) throw DomainError("dirac: mass must be positive");
            std::vector<double> v(grid.size(), 0.0);
            v[grid.locate(d.center)] = d.mass / grid.cell_volume();
            return DensityField(grid, std::move(v));
          },
          [&](const BarenblattInitial& b) {
            check_dim(b.spec.dim);
            return sample_cell_average(
                grid, [&](const Point& x) { return barenblatt_density(b.spec, x, b.time); });
          },
          [&](const FileInitial& f) {
            auto u = read_binary(f.path);
            if (!(u.grid() == grid)) throw ConfigError("initial file grid does not match the config grid");
            return u;
          }},
      spec);
}

double initial_radial_density(const InitialSpec& spec, double r) {
  return std::visit(
      overloaded{[&](const PatchInitial& p) { return patch_density(p.spec, r, p.time); },
                 [&](const TwoPatchInitial& p) { return two_patch_state(p.spec, r, p.time).density; },
                 [&](const GaussianSpec& g) { return g.density(r); },
                 [&](const DiracInitial&) -> double {
                   throw DomainError("dirac data has no radial density; use a point mass");
                 },
                 [&](const BarenblattInitial& b) { return barenblatt_density(b.spec, r, b.time); },
                 [&](const FileInitial&) -> double {
                   throw DomainError("file data has no radial form");
                 }},
      spec);
}

}  // namespace mfield
