#include <cmath>
#include <numbers>

#include "doctest.h"
#include "mfield/burgers.hpp"
#include "mfield/closed_forms.hpp"
#include "mfield/errors.hpp"

using namespace mfield;

TEST_CASE("mass transform and inverse") {
  const RadialGrid g(2, 201, 2.0);
  const RadialProfile zero(g, std::vector<double>(201, 0.0));
  for (double m : mass_transform(zero).values) CHECK(m == 0.0);

  std::vector<double> ind(201);
  for (int j = 0; j < 201; ++j) ind[j] = g.r(j) <= 1.0 ? 1.0 : 0.0;
  const auto M = mass_transform(RadialProfile(g, ind));
  for (int j = 0; j < 201; ++j)
    CHECK(M.values[j] == doctest::Approx(std::min(g.sigma(j), 0.5)).epsilon(2 * g.dsigma()));

  const MassFunction c(g, std::vector<double>(201, 0.0));
  for (double u : density_from_mass(c).values) CHECK(u == 0.0);

  const double t = 2.0;
  std::vector<double> patch(201);
  for (int j = 0; j < 201; ++j) patch[j] = std::min(g.sigma(j) / t, 0.5);
  const auto u = density_from_mass(MassFunction(g, patch));
  const double cap = 0.5 * t;  // sigma at the cap
  for (int j = 0; j < 201; ++j) {
    if (g.sigma(j) < cap - g.dsigma()) CHECK(u.values[j] == doctest::Approx(1.0 / t));
    if (g.sigma(j) > cap + g.dsigma()) CHECK(u.values[j] == doctest::Approx(0.0));
  }
}

TEST_CASE("characteristics") {
  const auto tp = TwoPatchSpec::make(2, 1.0, 1.0, 2.0, 3.0);
  const CharacteristicSolution cs(2, tp.initial_mass_knots());
  for (double sg : {0.0, 0.3, 0.5, 1.2, 2.0, 3.7, 4.5, 9.0})
    CHECK(cs.mass(sg, 0.0) == cs.initial(sg));
  double worst = 0.0;
  for (double t : {1.0, 3.0})
    for (int k = 0; k <= 400; ++k) {
      const double r = 6.0 * k / 400;
      worst = std::max(worst, std::abs(cs.mass(sigma_of_r(2, r), t) - two_patch_state(tp, r, t).mass));
    }
  CHECK(worst <= 1e-10);

  const auto d = CharacteristicSolution::dirac(2, 0.5);
  for (double t : {0.5, 2.0})
    for (double sg : {0.1, 0.4, 0.9, 3.0}) {
      CHECK(d.mass(sg, t) == doctest::Approx(std::min(sg / t, 0.5)));
      CHECK(d.density(sg, t) == doctest::Approx(sg < 0.5 * t ? 1.0 / t : 0.0));
    }
}

TEST_CASE("godunov step") {
  const RadialGrid g(2, 101, 2.0);
  std::vector<double> c(101, 0.3);
  c[0] = 0.0;
  // constant away from the pinned origin stays constant
  const auto out = step_finite_volume(MassFunction(g, c), 0.5 * g.dsigma() / 0.3);
  for (int j = 2; j < 101; ++j) CHECK(out.values[j] == doctest::Approx(0.3));

  std::vector<double> big(101, 1.0);
  big[0] = 0.0;
  CHECK_THROWS_AS(step_finite_volume(MassFunction(g, big), 2.0 * g.dsigma()), NumericalError);

  // patch to t = 1 from tau = 1: first-order convergence against characteristics
  PatchSpec ps{2, 1.0, 1.0, {0.0, 0.0}};
  double prev = 1.0;
  for (int nodes : {129, 257, 513}) {
    const RadialGrid rg(2, nodes, 2.5);
    std::vector<double> M(nodes);
    for (int j = 0; j < nodes; ++j) M[j] = patch_mass(ps, rg.r(j), 0.0).M;
    MassFunction mf(rg, M);
    double t = 0.0;
    while (t < 1.0) {
      const double dt = std::min(burgers_max_dt(mf, 0.9), 1.0 - t);
      const auto next = step_finite_volume(mf, dt);
      for (int j = 1; j < nodes; ++j) REQUIRE(next.values[j] >= next.values[j - 1] - 1e-15);
      mf = next;
      t += dt;
    }
    double err = 0.0;
    for (int j = 0; j < nodes; ++j) err = std::max(err, std::abs(mf.values[j] - patch_mass(ps, rg.r(j), 1.0).M));
    CHECK(err < 3.0 * rg.dsigma());
    CHECK(err < prev);
    prev = err;
  }
}

TEST_CASE("monotone inequalities") {
  const RadialGrid g(2, 65, 2.0);
  std::vector<double> times{0.5, 1.0, 2.0, 4.0};
  std::vector<MassFunction> largest, constant, patch;
  PatchSpec ps{2, 1.0, 1.0, {0.0, 0.0}};
  for (double t : times) {
    std::vector<double> a(65), b(65), c(65);
    for (int j = 0; j < 65; ++j) {
      a[j] = largest_solution(g.r(j), t, 2).mass.M;
      b[j] = std::min(g.sigma(j), 0.7);
      c[j] = patch_mass(ps, g.r(j), t).M;
    }
    largest.emplace_back(g, a);
    constant.emplace_back(g, b);
    patch.emplace_back(g, c);
  }
  const auto rl = check_monotone_inequalities(times, largest, 1e-12);
  CHECK(rl.ok());
  CHECK(std::abs(rl.min_lower_margin) <= 1e-12);
  CHECK(check_monotone_inequalities(times, constant, 0.0).ok());
  const auto rp = check_monotone_inequalities(times, patch, 1e-12);
  CHECK(rp.ok());
  CHECK(rp.max_rate <= 0.0);

  auto bad = constant;
  bad.back().values[10] += 0.1;
  CHECK_FALSE(check_monotone_inequalities(times, bad, 1e-3).ok());
}
