#include <cmath>
#include <numbers>

#include "doctest.h"
#include "mfield/closed_forms.hpp"
#include "mfield/errors.hpp"
#include "mfield/field_ops.hpp"
#include "mfield/solver.hpp"

using namespace mfield;
using std::numbers::pi;

namespace {

SolverConfig patch_config(int cells, double L, double T) {
  SolverConfig cfg;
  cfg.grid = CartesianGrid(2, L, cells);
  cfg.final_time = T;
  cfg.initial = PatchInitial{PatchSpec{2, 1.0, 1.0, {0.0, 0.0}}, 0.0};
  return cfg;
}

}  // namespace

TEST_CASE("scheme names") {
  CHECK(transport_scheme_from("donor-cell") == TransportScheme::DonorCell);
  CHECK(to_string(TimeIntegrator::SspRk2) == "ssp-rk2");
  CHECK_THROWS_AS(transport_scheme_from("weno"), ConfigError);
}

TEST_CASE("config validation") {
  auto cfg = patch_config(32, 4.0, 1.0);
  CHECK_NOTHROW(cfg.validate());
  cfg.viscosity = -1.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = patch_config(32, 4.0, 1.0);
  cfg.cfl = 1.5;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = patch_config(32, 1.2, 3.0);
  const auto adm = check_admissibility(cfg, make_initial(cfg.initial, cfg.grid));
  CHECK_FALSE(adm.ok);
  CHECK(adm.required > adm.limit);
  CHECK_THROWS_AS(run(cfg), ConfigError);
}

TEST_CASE("step basics") {
  const auto cfg = patch_config(32, 4.0, 1.0);
  const DensityField zero(cfg.grid);
  const auto z = step(zero, cfg, 0.1);
  for (double v : z.u.values()) CHECK(v == 0.0);

  std::vector<double> one(cfg.grid.size(), 0.0);
  const double m = 0.3;
  one[cfg.grid.locate({0.0, 0.0})] = m / cfg.grid.cell_volume();
  const DensityField spike(cfg.grid, one);
  const double dt = stable_dt(spike, cfg);
  const auto out = step(spike, cfg, dt);
  CHECK(total_mass(out.u) == doctest::Approx(m).epsilon(1e-13));
  CHECK_THROWS_AS(step(spike, cfg, 2.0 * dt), NumericalError);

  auto heat = cfg;
  heat.viscosity = 0.05;
  const auto dh = stable_dt(spike, heat);
  const auto smooth = step(spike, heat, dh);
  CHECK(lp_norm(smooth.u, kInfinity) <= lp_norm(spike, kInfinity));
}

TEST_CASE("zero data stays zero") {
  auto cfg = patch_config(32, 4.0, 0.5);
  cfg.initial = PatchInitial{PatchSpec{2, 1.0, 1.0, {0.0, 0.0}}, 0.0};
  const DensityField zero(cfg.grid);
  const auto tr = run(cfg, zero);
  for (const auto& s : tr.snapshots)
    for (double v : s.u.values()) CHECK(v == 0.0);
}

TEST_CASE("patch run at low resolution") {
  auto cfg = patch_config(64, 4.0, 1.0);
  cfg.output_times = {0.5};
  const auto tr = run(cfg);
  REQUIRE(tr.snapshots.size() == 3);
  CHECK(tr.tau == doctest::Approx(1.0));
  const double m0 = total_mass(tr.snapshots.front().u);
  for (const auto& s : tr.snapshots) CHECK(std::abs(total_mass(s.u) - m0) <= 1e-9 * m0);
  CHECK(tr.max_bound_ratio <= 1.05);
  const PatchSpec ps{2, 1.0, 1.0, {0.0, 0.0}};
  const auto exact = sample_cell_average(cfg.grid, [&](const Point& x) { return patch_density(ps, x, 1.0); });
  CHECK(l1_distance(tr.at(1.0), exact) / total_mass(exact) < 0.12);
  const double h = cfg.grid.h();
  CHECK(support_radius(tr.at(1.0), {0.0, 0.0}, 0.05) <= std::sqrt(2.0) * (1 + 3 * h));
}

TEST_CASE("gaussian run conserves mass") {
  SolverConfig cfg;
  cfg.grid = CartesianGrid(2, 4.0, 64);
  cfg.final_time = 0.5;
  cfg.initial = GaussianSpec{};
  const auto tr = run(cfg);
  CHECK(tr.tau == doctest::Approx(1.0 / lp_norm(tr.snapshots.front().u, kInfinity)));
  const double m0 = total_mass(tr.snapshots.front().u);
  CHECK(m0 == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::abs(total_mass(tr.snapshots.back().u) - m0) <= 1e-9 * m0);
}

TEST_CASE("support radius") {
  const CartesianGrid g(2, 4.0, 256);
  const PatchSpec ps{2, 1.0, 1.0, {0.0, 0.0}};
  const auto u = sample_cell_average(g, [&](const Point& x) { return patch_density(ps, x, 3.0); });
  CHECK(support_radius(u, {0.0, 0.0}, 0.05) == doctest::Approx(2.0).epsilon(g.h()));
  CHECK(support_radius(DensityField(g), {0.0, 0.0}, 0.05) == 0.0);
}

TEST_CASE("s sweep with only s = 1") {
  auto cfg = patch_config(32, 4.0, 0.25);
  const auto rep = sweep_s(cfg, {1.0});
  REQUIRE(rep.members.size() == 1);
  CHECK(rep.members[0].distance == 0.0);
  CHECK(rep.nonincreasing);
  CHECK(rep.error.empty());
}
