#include <cmath>
#include <numbers>

#include "doctest.h"
#include "mfield/closed_forms.hpp"
#include "mfield/errors.hpp"
#include "mfield/transport_lp.hpp"
#include "mfield/wasserstein.hpp"

using namespace mfield;
using std::numbers::pi;

namespace {

MassFunction patch_mass_function(const RadialGrid& g, double tau, double t) {
  const PatchSpec ps{g.dim(), 1.0, tau, {0.0, 0.0}};
  std::vector<double> M(g.nodes());
  for (int j = 0; j < g.nodes(); ++j) M[j] = patch_mass(ps, g.r(j), t).M;
  return {g, M};
}

MassFunction bump_mass(const RadialGrid& g, double c, double w) {
  std::vector<double> M(g.nodes(), 0.0);
  for (int j = 1; j < g.nodes(); ++j) {
    const double r = g.r(j);
    M[j] = M[j - 1] + g.dsigma() * std::exp(-std::pow((r - c) / w, 2));
  }
  const double total = M.back();
  for (double& m : M) m *= 0.5 / total;
  return {g, M};
}

}  // namespace

TEST_CASE("transport simplex on tiny problems") {
  const auto a = solve_transport({1, 1}, {1, 1}, {0, 1, 1, 0});
  CHECK(a.optimal);
  CHECK(a.cost == doctest::Approx(0.0));
  const auto b = solve_transport({0.5, 0.5}, {0.5, 0.5}, {1, 2, 3, 1});
  CHECK(b.cost == doctest::Approx(1.0));
  CHECK_THROWS_AS(solve_transport({1, 1}, {1, 3}, {0, 1, 1, 0}), DomainError);
  const std::vector<Atom> p{{{0.0, 0.0}, 1.0}}, q{{{3.0, 4.0}, 1.0}};
  CHECK(lp_wasserstein_points(p, q, 2.0) == doctest::Approx(5.0));
  CHECK(lp_wasserstein_points(p, q, 1.0) == doctest::Approx(5.0));
}

TEST_CASE("quantile W2 basics") {
  const RadialGrid g(2, 129, 2.0);
  const auto a = bump_mass(g, 0.5, 0.2);
  const auto b = bump_mass(g, 1.2, 0.3);
  const auto c = bump_mass(g, 0.9, 0.1);
  CHECK(wasserstein_radial(a, a, 2.0) == 0.0);
  const double ab = wasserstein_radial(a, b, 2.0), bc = wasserstein_radial(b, c, 2.0),
               ac = wasserstein_radial(a, c, 2.0);
  CHECK(ab == doctest::Approx(wasserstein_radial(b, a, 2.0)));
  CHECK(ac <= ab + bc + 1e-12);
  std::vector<double> heavier(a.values);
  for (double& m : heavier) m *= 1.1;
  CHECK_THROWS_AS(wasserstein_radial(a, MassFunction(g, heavier), 2.0), DomainError);
}

TEST_CASE("quantile agrees with the LP oracle") {
  const RadialGrid g(2, 48, 1.5);
  const auto a = bump_mass(g, 0.4, 0.15);
  const auto b = bump_mass(g, 1.0, 0.25);
  const double q = wasserstein_radial(a, b, 2.0);
  const double lp = lp_wasserstein_radial(a, b, 2.0, 4, 5);
  CHECK(std::abs(q - lp) / lp <= 0.01);
}

TEST_CASE("point mass against a disk") {
  const double t = 2.0, R = 1.0;
  const RadialGrid g(2, 200001, 1.5);
  const auto disk = patch_mass_function(g, 0.0, t);
  const double m = 2 * pi * disk.total();
  std::vector<double> point(g.nodes(), disk.total());
  point[0] = 0.0;
  const double w = wasserstein_radial(MassFunction(g, point), disk, 2.0, 1 << 16);
    // disk radius is R sqrt(t); W2^2 is the second moment m R^2 t / 2
  CHECK(w * w == doctest::Approx(m * R * R * t / 2).epsilon(0.01));
}

TEST_CASE("patch closed form") {
  const RadialGrid g(2, 4097, 3.0);
  const auto a = patch_mass_function(g, 1.0, 0.5);
  const auto b = patch_mass_function(g, 1.0, 2.0);
  CHECK(wasserstein_radial(a, b, 2.0) == doctest::Approx(patch_w2_closed_form(2, pi, 1.0, 0.5, 2.0)).epsilon(1e-3));
}

TEST_CASE("continuity check") {
  const RadialGrid g(2, 1025, 3.0);
  std::vector<double> times{1.0, 1.0, 2.0, 4.0};
  std::vector<MassFunction> ms;
  for (double t : times) ms.push_back(patch_mass_function(g, 0.0, t));
  const auto rep = wasserstein_continuity_check(times, ms, 10.0);
  CHECK(rep.ok);
  CHECK(rep.intervals[0].distance == 0.0);
  CHECK_FALSE(wasserstein_continuity_check(times, ms, 1e-3).ok);
}
