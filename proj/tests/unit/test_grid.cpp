#include <cmath>
#include <numbers>

#include "doctest.h"
#include "mfield/errors.hpp"
#include "mfield/field_ops.hpp"
#include "mfield/grid.hpp"

using namespace mfield;
using std::numbers::pi;

namespace {

DensityField disk(int cells, double L, double R, Point c = {0.0, 0.0}) {
  const CartesianGrid g(2, L, cells);
  return sample_cell_average(g, [&](const Point& x) {
    return std::hypot(x[0] - c[0], x[1] - c[1]) <= R ? 1.0 : 0.0;
  });
}

}  // namespace

TEST_CASE("grid geometry") {
  const CartesianGrid g(2, 2.0, 8);
  CHECK(g.h() == doctest::Approx(0.5));
  CHECK(g.size() == 64);
  CHECK(g.coord(0) == doctest::Approx(-1.75));
  const auto c = g.center(g.flat_index(3, 5));
  CHECK(c[0] == doctest::Approx(g.coord(3)));
  CHECK(c[1] == doctest::Approx(g.coord(5)));
  CHECK(g.locate({0.1, -0.1}) == g.flat_index(4, 3));
  CHECK(g.locate({100.0, 100.0}) == g.flat_index(7, 7));
  CHECK_THROWS_AS(CartesianGrid(3, 1.0, 8), DomainError);
  CHECK_THROWS_AS(CartesianGrid(2, -1.0, 8), DomainError);
}

TEST_CASE("radial grid and sigma") {
  const RadialGrid rg(2, 101, 2.0);
  CHECK(rg.sigma_max() == doctest::Approx(2.0));
  CHECK(rg.r(100) == doctest::Approx(2.0));
  CHECK(r_of_sigma(3, sigma_of_r(3, 1.7)) == doctest::Approx(1.7));
  CHECK(sphere_area(1) == doctest::Approx(2.0));
  CHECK(sphere_area(2) == doctest::Approx(2 * pi));
  CHECK(sphere_area(3) == doctest::Approx(4 * pi));
  CHECK(ball_volume(3) == doctest::Approx(4 * pi / 3));
}

TEST_CASE("total_mass") {
  const CartesianGrid g(2, 2.0, 64);
  CHECK(total_mass(DensityField(g)) == 0.0);
  for (int n : {64, 128, 256}) {
    const double h = 4.0 / n;
    CHECK(std::abs(total_mass(disk(n, 2.0, 1.0)) - pi) < h);
  }
}

TEST_CASE("lp_norm") {
  const CartesianGrid g(2, 2.0, 32);
  CHECK(lp_norm(DensityField(g), 2.0) == 0.0);
  CHECK(lp_norm(DensityField(g), kInfinity) == 0.0);
  const auto u = disk(256, 2.0, 1.0);
  CHECK(lp_norm(u, kInfinity) == doctest::Approx(1.0));
  CHECK(lp_norm(u, 2.0) == doctest::Approx(std::sqrt(pi)).epsilon(0.005));
  CHECK(lp_norm(u, 1.0) == doctest::Approx(total_mass(u)));
  CHECK_THROWS_AS(lp_norm(u, 0.5), DomainError);
}

TEST_CASE("second_moment") {
  CHECK(second_moment(DensityField(CartesianGrid(2, 2.0, 16))) == 0.0);
  const double R = 0.8;
  const auto u = disk(256, 2.0, R);
  CHECK(second_moment(u) == doctest::Approx(pi * std::pow(R, 4) / 2).epsilon(0.01));
  // parallel axis: moment about 0 of a field centred at d
  const Point d{0.5, -0.25};
  const auto v = disk(256, 2.0, R, d);
  const double m = total_mass(v);
  CHECK(second_moment(v) == doctest::Approx(second_moment(v, d) + m * (d[0] * d[0] + d[1] * d[1])));
}

TEST_CASE("radial_average") {
  const CartesianGrid g(2, 2.0, 128);
  const DensityField c(g, std::vector<double>(g.size(), 0.7));
  const RadialGrid rg(2, 33, 1.8);
  for (double v : radial_average(c, {0.0, 0.0}, rg).values) CHECK(v == doctest::Approx(0.7));

  const auto u = disk(128, 2.0, 1.0);
  const auto prof = radial_average(u, {0.0, 0.0}, rg);
  const double h = g.h();
  for (int j = 0; j < rg.nodes(); ++j) {
    const double r = rg.r(j);
    if (r < 1.0 - 2 * h) CHECK(prof.values[j] == doctest::Approx(1.0).epsilon(1e-6));
    if (r > 1.0 + 2 * h) CHECK(prof.values[j] < 1e-12);
  }
  CHECK_THROWS_AS(radial_average(u, {0.0, 0.0}, RadialGrid(2, 33, 2.5)), DomainError);
}

TEST_CASE("support_extent and centroid") {
  const auto u = disk(64, 2.0, 0.5, {0.5, 0.0});
  const auto c = center_of_mass(u);
  CHECK(c[0] == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(std::abs(c[1]) < 1e-12);
  CHECK(support_extent(u, c) >= 0.5);
  CHECK(support_extent(u, c) <= 0.5 + 2 * u.grid().h());
  CHECK(value_at(u, {5.0, 5.0}) == 0.0);
}
