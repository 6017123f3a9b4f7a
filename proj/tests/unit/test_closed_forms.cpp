#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "mfield/closed_forms.hpp"
#include "mfield/errors.hpp"

using namespace mfield;
using std::numbers::pi;

TEST_CASE("patch density") {
  const PatchSpec ps{2, 1.0, 1.0, {0.0, 0.0}};
  CHECK(patch_density(ps, 0.0, 0.0) == 1.0);
  CHECK(ps.support_radius(0.0) == doctest::Approx(1.0));
  CHECK(patch_density(ps, 0.0, 1.0) == doctest::Approx(0.5));
  CHECK(ps.support_radius(1.0) == doctest::Approx(std::sqrt(2.0)));
  CHECK(ps.total_mass() == doctest::Approx(pi));
  CHECK(patch_density(ps, 2.0 * ps.support_radius(2.0), 2.0) == 0.0);
  CHECK(patch_density(ps, Point{0.3, 0.4}, 0.0) == 1.0);
  CHECK_THROWS_AS(patch_density(ps, 0.0, -1.0), DomainError);
}

TEST_CASE("patch mass and Burgers residual") {
  const PatchSpec ps{2, 1.0, 1.0, {0.0, 0.0}};
  CHECK(patch_mass(ps, 0.0, 1.0).M == 0.0);
  CHECK(patch_mass(ps, 1e6, 1.0).M == doctest::Approx(0.5));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ur(0.0, 3.0), ut(0.0, 5.0);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const auto m = patch_mass(ps, ur(rng), ut(rng));
    worst = std::max(worst, std::abs(m.M_t + m.M * m.M_sigma));
  }
  CHECK(worst <= 1e-12);
  // inside the support M = r^2 / (2 (t + tau))
  CHECK(patch_mass(ps, 0.5, 3.0).M == doctest::Approx(0.25 / 8));
}

TEST_CASE("largest solution") {
  for (int n : {1, 2, 3}) {
    const auto s = largest_solution(1.3, 1.0, n);
    CHECK(s.density == 1.0);
    CHECK(s.mass.M_t == doctest::Approx(-s.mass.M));
    CHECK(s.mass.M_sigma == doctest::Approx(1.0));
    CHECK(s.mass.M_t + s.mass.M * s.mass.M_sigma == doctest::Approx(0.0));
  }
  CHECK_THROWS_AS(largest_solution(1.0, 0.0, 2), DomainError);
}

TEST_CASE("barenblatt") {
  BarenblattSpec b{2, 0.5, 1.7, 0.4};
  CHECK(b.alpha() == doctest::Approx(2.0 / 3.0));
  CHECK(barenblatt_density(b, 0.0, 1.0) == doctest::Approx(std::sqrt(1.7)));
  const double t = 2.5;
  const double edge = std::sqrt(b.C1 * std::pow(t, 2 * b.alpha() / 2) / b.k1);
  CHECK(b.support_radius(t) == doctest::Approx(edge));
  CHECK(barenblatt_density(b, edge * (1 + 1e-12), t) == 0.0);
  CHECK_THROWS_AS(barenblatt_density(b, 0.0, 0.0), DomainError);

  // mass by an independent midpoint rule at t = 1 and t = 4
  auto quad = [&](double tt) {
    const double R = b.support_radius(tt);
    const int K = 200000;
    double sum = 0.0;
    for (int i = 0; i < K; ++i) {
      const double r = (i + 0.5) * R / K;
      sum += barenblatt_density(b, r, tt) * 2 * pi * r;
    }
    return sum * R / K;
  };
  CHECK(quad(1.0) == doctest::Approx(barenblatt_mass(b)).epsilon(1e-5));
  CHECK(quad(4.0) == doctest::Approx(barenblatt_mass(b)).epsilon(1e-5));

  const auto m = barenblatt_matched(2, 0.8, pi, 1.0);
  CHECK(barenblatt_mass(m) == doctest::Approx(pi));
  CHECK(m.support_radius(1.0) == doctest::Approx(1.0));
  CHECK(barenblatt_mass(barenblatt_unit_mass(2, 0.7, 2.0)) == doctest::Approx(1.0));
}

TEST_CASE("two patch") {
  const auto tp = TwoPatchSpec::make(2, 1.0, 1.0, 2.0, 3.0);
  CHECK(tp.c2 == doctest::Approx(0.25));
  CHECK(tp.tau1() == doctest::Approx(1.0));
  CHECK(tp.tau2() == doctest::Approx(4.0));
  auto s0 = tp.interfaces(0.0);
  CHECK(s0[0] == doctest::Approx(1.0));
  CHECK(s0[1] == doctest::Approx(2.0));
  CHECK(s0[2] == doctest::Approx(3.0));
  auto s3 = tp.interfaces(3.0);
  CHECK(s3[0] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(s3[1] == doctest::Approx(std::sqrt(7.0)).epsilon(1e-14));
  CHECK(s3[2] == doctest::Approx(1.5 * std::sqrt(7.0)).epsilon(1e-14));

  CHECK(two_patch_state(tp, 0.5, 0.0).density == 1.0);
  CHECK(two_patch_state(tp, 1.5, 0.0).density == 0.0);
  CHECK(two_patch_state(tp, 2.5, 0.0).density == doctest::Approx(0.25));
  CHECK(two_patch_state(tp, 10.0, 3.0).mass == doctest::Approx(tp.radial_mass()));
  CHECK(tp.radial_mass() == doctest::Approx(0.5 + 0.25 * (9 - 4) / 2));

  // the gap S2 - S1 decays like t^{-1/2}
  auto gap = [&](double t) {
    const auto s = tp.interfaces(t);
    return s[1] - s[0];
  };
  const double slope = std::log(gap(1e4) / gap(1e3)) / std::log(10.0);
  CHECK(slope == doctest::Approx(-0.5).epsilon(0.05));
  CHECK_THROWS_AS(TwoPatchSpec::make(2, 1.0, 2.0, 1.0, 3.0), DomainError);
}
