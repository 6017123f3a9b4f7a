#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "mfield/closed_forms.hpp"
#include "mfield/errors.hpp"
#include "mfield/field_ops.hpp"
#include "mfield/kernels.hpp"
#include "mfield/potential.hpp"

using namespace mfield;
using std::numbers::pi;

namespace {

DensityField disk(int cells, double L, double R, double height = 1.0) {
  return sample_cell_average(CartesianGrid(2, L, cells), [&](const Point& x) {
    return std::hypot(x[0], x[1]) <= R ? height : 0.0;
  });
}

// O(N^4) direct sum of (1/2pi) (x - y)/|x - y|^2 u(y) h^2 over cells y != x.
VectorField brute_velocity(const DensityField& u) {
  const auto& g = u.grid();
  VectorField v(g);
  const double w = g.cell_volume() / (2 * pi);
  for (std::size_t a = 0; a < g.size(); ++a) {
    const auto xa = g.center(a);
    double vx = 0.0, vy = 0.0;
    for (std::size_t b = 0; b < g.size(); ++b) {
      if (a == b || u[b] == 0.0) continue;
      const auto xb = g.center(b);
      const double dx = xa[0] - xb[0], dy = xa[1] - xb[1];
      const double d2 = dx * dx + dy * dy;
      vx += w * u[b] * dx / d2;
      vy += w * u[b] * dy / d2;
    }
    v.components[0][a] = vx;
    v.components[1][a] = vy;
  }
  return v;
}

}  // namespace

TEST_CASE("kernel constants") {
  CHECK(velocity_constant(2, 1.0) == doctest::Approx(1.0 / (2 * pi)));
  CHECK(velocity_constant(3, 1.0) == doctest::Approx(1.0 / (4 * pi)));
  CHECK(riesz_constant(3, 1.0) == doctest::Approx(1.0 / (4 * pi)));
  CHECK_THROWS_AS(Exponent(0.0), DomainError);
  CHECK_THROWS_AS(Exponent(1.5), DomainError);
}

TEST_CASE("velocity of zero is zero") {
  const DensityField u(CartesianGrid(2, 2.0, 32));
  CHECK(velocity(u, Exponent(1.0)).sup_norm() == 0.0);
  CHECK(velocity(u, Exponent(0.6)).sup_norm() == 0.0);
}

TEST_CASE("Newtonian velocity matches direct summation and the disk field") {
  const auto u = disk(32, 2.0, 1.0);
  const auto v = velocity(u, Exponent(1.0));
  const auto b = brute_velocity(u);
  double diff = 0.0;
  for (int k = 0; k < 2; ++k)
    for (std::size_t a = 0; a < u.size(); ++a)
      diff = std::max(diff, std::abs(v.components[k][a] - b.components[k][a]));
  CHECK(diff < 1e-10);

  const auto fine = disk(128, 2.0, 1.0);
  const auto vf = velocity(fine, Exponent(1.0));
  const auto& g = fine.grid();
  for (double r : {0.3, 0.6, 1.4, 1.8}) {
    const auto a = g.locate({r, 0.0});
    const double x = g.center(a)[0];
    const double expect = x < 1.0 ? x / 2 : 1.0 / (2 * x);
    CHECK(vf.components[0][a] == doctest::Approx(expect).epsilon(0.03));
  }
}

TEST_CASE("radial velocity") {
  const RadialGrid g(2, 65, 2.0);
  for (double v : radial_velocity(MassFunction(g, std::vector<double>(65, 0.0))).values) CHECK(v == 0.0);
  const double t = 2.0;
  std::vector<double> M(65);
  for (int j = 0; j < 65; ++j) M[j] = std::min(g.sigma(j) / t, 0.5);
  const auto v = radial_velocity(MassFunction(g, M));
  CHECK(v.values[0] == 0.0);
  for (int j = 1; j < 65; ++j) {
    const double r = g.r(j);
    if (g.sigma(j) <= 0.5 * t) CHECK(v.values[j] == doctest::Approx(r / (2 * t)));
    else CHECK(v.values[j] == doctest::Approx(0.5 / r));
  }
}

TEST_CASE("energy") {
  const auto u = disk(64, 3.0, 1.0);
  CHECK(energy(u, Exponent(1.0), u) == doctest::Approx(0.0));
  CHECK_THROWS_AS(energy(u, Exponent(1.0)), DomainError);
  const auto half = disk(64, 3.0, 1.0, 0.5);
  CHECK_THROWS(energy(half, Exponent(1.0), u));

  const double e1 = energy(u, Exponent(0.7));
  CHECK(e1 > 0.0);
  std::vector<double> scaled(u.values().begin(), u.values().end());
  for (double& x : scaled) x *= 3.0;
  CHECK(energy(DensityField(u.grid(), scaled), Exponent(0.7)) == doctest::Approx(9.0 * e1));

  // unit ball in R^3: 8 pi R^5 / 15
  for (double R : {1.0, 0.7}) {
    const RadialGrid rg(3, 4001, 1.2 * R);
    std::vector<double> M(4001);
    for (int j = 0; j < 4001; ++j) M[j] = std::min(rg.sigma(j), R * R * R / 3);
    CHECK(radial_energy(MassFunction(rg, M)) == doctest::Approx(8 * pi * std::pow(R, 5) / 15).epsilon(1e-4));
  }
}

TEST_CASE("bilinear form") {
  const CartesianGrid g(2, 2.0, 16);
  const DensityField zero(g);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<double> a(g.size()), b(g.size());
  for (auto& x : a) x = U(rng);
  for (auto& x : b) x = U(rng);
  const DensityField va(g, a), vb(g, b);
  CHECK(bilinear_form(zero, va, Exponent(0.5)) == doctest::Approx(0.0));
  CHECK(bilinear_form(va, vb, Exponent(0.5)) ==
        doctest::Approx(bilinear_form(vb, va, Exponent(0.5))).epsilon(1e-12));
  CHECK_THROWS_AS(bilinear_form(va, vb, Exponent(1.0)), DomainError);

  // smooth bump: B_s(v, v) approaches 2 |v|_2^2 as s -> 1
  const auto v = sample_cell_average(CartesianGrid(2, 2.0, 32), [](const Point& x) {
    return std::exp(-4.0 * (x[0] * x[0] + x[1] * x[1]));
  });
  const double limit = 2.0 * std::pow(lp_norm(v, 2.0), 2);
  double prev = kInfinity;
  for (double s : {0.8, 0.9, 0.95}) {
    const double gap = std::abs(bilinear_form(v, v, Exponent(s)) - limit);
    CHECK(gap < prev);
    prev = gap;
  }
  CHECK(bilinear_form(v, v, Exponent(0.95)) == doctest::Approx(limit).epsilon(0.10));
}

TEST_CASE("log-Lipschitz modulus") {
  const DensityField zero(CartesianGrid(2, 2.0, 32));
  CHECK(log_lipschitz_modulus(zero).constant == 0.0);
  const auto u = disk(64, 2.0, 1.0);
  const auto base = log_lipschitz_modulus(u);
  CHECK(std::isfinite(base.constant));
  CHECK(base.constant > 0.0);
  std::vector<double> s(u.values().begin(), u.values().end());
  for (double& x : s) x *= 2.5;
  CHECK(log_lipschitz_modulus(DensityField(u.grid(), s)).modulus == doctest::Approx(2.5 * base.modulus));
  const auto fine = log_lipschitz_modulus(disk(128, 2.0, 1.0));
  CHECK(fine.constant == doctest::Approx(base.constant).epsilon(0.2));
}
