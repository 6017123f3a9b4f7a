#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "mfield/closed_forms.hpp"
#include "mfield/diagnostics.hpp"
#include "mfield/field_ops.hpp"

using namespace mfield;
using std::numbers::pi;

namespace {

DensityField patch_at(const CartesianGrid& g, double t) {
  const PatchSpec ps{2, 1.0, 1.0, {0.0, 0.0}};
  return sample_cell_average(g, [&](const Point& x) { return patch_density(ps, x, t); });
}

}  // namespace

TEST_CASE("renormalize") {
  const CartesianGrid g(2, 4.0, 64);
  const auto u = patch_at(g, 0.5);
  const auto id = renormalize(u, 0.0);
  CHECK(id.scale == 1.0);
  CHECK(id.log_time == 0.0);
  for (std::size_t i = 0; i < u.size(); ++i) CHECK(id.U[i] == doctest::Approx(u[i]));

  const auto st = renormalize(patch_at(g, 2.0), 2.0);
  CHECK(st.log_time == doctest::Approx(std::log(3.0)));
  CHECK(total_mass(st.U) == doctest::Approx(total_mass(patch_at(g, 2.0))).epsilon(1e-6));
}

TEST_CASE("patch is already at equilibrium") {
  const CartesianGrid g(2, 4.0, 128);
  const double m = pi;
  CHECK(equilibrium_radius(2, m) == doctest::Approx(1.0));
  for (double t : {0.0, 1.0, 3.0}) {
    const auto st = renormalize(patch_at(g, t), t);
    CHECK(asymptotic_error(st, m) / m < 0.05);
  }
}

TEST_CASE("dissipation vanishes at the stationary state") {
  const CartesianGrid g(2, 4.0, 128);
  const auto st = renormalize(patch_at(g, 0.0), 0.0);
  const auto ed = entropy_and_dissipation(st, entropy_reference(st.U));
  CHECK(std::isfinite(ed.entropy));
  // compare against int U |y/2|^2, the size of either term
  double scale = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto y = g.center(i);
    scale += st.U[i] * (y[0] * y[0] + y[1] * y[1]) / 4 * g.cell_volume();
  }
  CHECK(ed.dissipation < 0.02 * scale);
  CHECK(std::isnan(entropy_and_dissipation(st, std::nullopt).entropy));
}

TEST_CASE("entropy reference carries the mass") {
  const CartesianGrid g(2, 4.0, 64);
  const auto u = patch_at(g, 1.0);
  CHECK(total_mass(entropy_reference(u)) == doctest::Approx(total_mass(u)).epsilon(1e-12));
}

TEST_CASE("diagnostics csv") {
  const auto& cols = diagnostics_columns();
  REQUIRE(!cols.empty());
  CHECK(cols.front() == "t");
  std::ostringstream os;
  write_diagnostics_csv(os, {DiagnosticsRecord{}});
  const auto text = os.str();
  const auto header = text.substr(0, text.find('\n'));
  CHECK(std::count(header.begin(), header.end(), ',') + 1 == static_cast<long>(cols.size()));

  const CartesianGrid g(2, 4.0, 64);
  CHECK(dissipation_rate(DensityField(g), Exponent(1.0), 0.0) == 0.0);
  DiagnosticsOptions opt;
  opt.tau = 1.0;
  const auto u = patch_at(g, 1.0);
  opt.energy_reference = u;
  const auto rec = compute_record(u, 1.0, opt);
  CHECK(rec.mass == doctest::Approx(pi).epsilon(0.01));
  CHECK(rec.energy == doctest::Approx(0.0));
  CHECK(rec.bound_ratio == doctest::Approx(1.0));
}
