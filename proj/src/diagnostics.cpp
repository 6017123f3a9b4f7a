#include "mfield/diagnostics.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "mfield/errors.hpp"
#include "mfield/field_ops.hpp"
#include "mfield/io.hpp"
#include "mfield/potential.hpp"
#include "mfield/solver.hpp"
#include "mfield/wasserstein.hpp"

namespace mfield {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Overlap {
  int target;
  double weight;
};

// For each source cell k: target cells of [a_k, a_k + h] / scale with weight
// scale * |overlap| / h, so that sum_i weight_ik h = h (mass of a unit source).
std::vector<std::vector<Overlap>> overlap_weights(const CartesianGrid& g, double scale) {
  const int N = g.cells();
  const double h = g.h(), L = g.half_width();
  std::vector<std::vector<Overlap>> w(static_cast<std::size_t>(N));
  for (int k = 0; k < N; ++k) {
    const double lo = (-L + k * h) / scale, hi = (-L + (k + 1) * h) / scale;
    const int i0 = std::max(0, static_cast<int>(std::floor((lo + L) / h)));
    const int i1 = std::min(N - 1, static_cast<int>(std::floor((hi + L) / h)));
    for (int i = i0; i <= i1; ++i) {
      const double a = std::max(lo, -L + i * h), b = std::min(hi, -L + (i + 1) * h);
      if (b > a) w[k].push_back({i, scale * (b - a) / h});
    }
  }
  return w;
}

}  // namespace

const std::vector<std::string>& diagnostics_columns() {
  static const std::vector<std::string> cols{
      "t",       "mass",          "l1",           "l2",          "linf",         "energy",
      "second_moment", "support_radius", "entropy", "dissipation", "w2_reference", "bound_ratio"};
  return cols;
}

void write_diagnostics_csv(std::ostream& os, const std::vector<DiagnosticsRecord>& rows) {
  const auto& cols = diagnostics_columns();
  for (std::size_t c = 0; c < cols.size(); ++c) os << (c ? "," : "") << cols[c];
  os << '\n';
  for (const auto& r : rows) {
    const double v[] = {r.t,      r.mass,          r.l1,           r.l2,
                        r.linf,   r.energy,        r.second_moment, r.support_radius,
                        r.entropy, r.dissipation,  r.w2_reference, r.bound_ratio};
    for (std::size_t c = 0; c < std::size(v); ++c) {
      os << (c ? "," : "") << (std::isnan(v[c]) ? std::string("nan") : format_double(v[c]));
    }
    os << '\n';
  }
}

RenormalizedState renormalize(const DensityField& u, double t) {
  if (!(t >= 0.0)) throw DomainError("renormalize: need t >= 0");
  const auto& g = u.grid();
  const double scale = std::pow(1.0 + t, 1.0 / g.dim());
  if (t == 0.0) return {u, 0.0, 0.0, 1.0};
  const auto w = overlap_weights(g, scale);
  const int N = g.cells();
  const auto n = static_cast<std::size_t>(N);
  std::vector<double> out(u.size(), 0.0);
  if (g.dim() == 1) {
    for (int k = 0; k < N; ++k)
      for (const auto& o : w[k]) out[o.target] += o.weight * u[k];
  } else {
    std::vector<double> tmp(u.size(), 0.0);
    for (int k = 0; k < N; ++k)
      for (const auto& o : w[k])
        for (std::size_t l = 0; l < n; ++l) tmp[o.target * n + l] += o.weight * u[k * n + l];
    for (std::size_t i = 0; i < n; ++i)
      for (int l = 0; l < N; ++l)
        for (const auto& o : w[l]) out[i * n + o.target] += o.weight * tmp[i * n + l];
  }
  return {DensityField(g, std::move(out)), t, std::log1p(t), scale};
}

double equilibrium_radius(int dim, double mass) {
  if (!(mass > 0.0)) throw DomainError("equilibrium_radius: mass must be positive");
  return std::pow(mass / ball_volume(dim), 1.0 / dim);
}

double asymptotic_error(const RenormalizedState& state, double mass) {
  const auto& g = state.U.grid();
  const double R0 = equilibrium_radius(g.dim(), mass);
  const auto chi = sample_cell_average(g, [&](const Point& y) {
    const double r = g.dim() == 1 ? std::abs(y[0]) : std::hypot(y[0], y[1]);
    return r <= R0 ? 1.0 : 0.0;
  });
  return l1_distance(state.U, chi);
}

DensityField entropy_reference(const DensityField& like) {
  const auto& g = like.grid();
  const double mass = total_mass(like);
  if (!(mass > 0.0)) throw DomainError("entropy_reference: field has no mass");
  const double R0 = equilibrium_radius(g.dim(), mass);
  auto bump = sample_cell_average(g, [&](const Point& y) {
    const double r2 = (g.dim() == 1 ? y[0] * y[0] : y[0] * y[0] + y[1] * y[1]) / (R0 * R0);
    return r2 < 1.0 ? std::pow(1.0 - r2, 3) : 0.0;
  });
  const double scale = mass / total_mass(bump);
  auto v = std::move(bump).release();
  for (double& x : v) x *= scale;
  return DensityField(g, std::move(v));
}

EntropyDissipation entropy_and_dissipation(const RenormalizedState& state,
                                           const std::optional<DensityField>& reference) {
  const auto& U = state.U;
  const auto& g = U.grid();
  const int n = g.dim();
  const Exponent one(1.0);
  const auto V = velocity(U, one);
  double D = 0.0;
  for (std::size_t i = 0; i < U.size(); ++i) {
    if (U[i] == 0.0) continue;
    const Point y = g.center(i);
    double d2 = 0.0;
    for (int a = 0; a < n; ++a) {
      const double e = V.components[a][i] - y[a] / n;
      d2 += e * e;
    }
    D += U[i] * d2;
  }
  D *= g.cell_volume();
  double ent = kNaN;
  if (reference && n == 2) {
    ent = 0.5 * energy(U, one, reference) + second_moment(U) / (2.0 * n);
  }
  return {ent, D};
}

double velocity_error_on_ball(const RenormalizedState& state, double mass) {
  const auto& g = state.U.grid();
  const int n = g.dim();
  const double R0 = equilibrium_radius(n, mass);
  const auto V = velocity(state.U, Exponent(1.0));
  double acc = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Point y = g.center(i);
    const double r = n == 1 ? std::abs(y[0]) : std::hypot(y[0], y[1]);
    if (r > R0) continue;
    for (int a = 0; a < n; ++a) {
      const double e = V.components[a][i] - y[a] / n;
      acc += e * e;
    }
  }
  return std::sqrt(acc * g.cell_volume());
}

double dissipation_rate(const DensityField& u, Exponent s, double viscosity) {
  const auto v = velocity(u, s);
  double a = 0.0, b = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    double v2 = 0.0;
    for (const auto& c : v.components) v2 += c[i] * c[i];
    a += u[i] * v2;
    b += u[i] * u[i];
  }
  const double vol = u.grid().cell_volume();
  return 2.0 * a * vol + 2.0 * viscosity * b * vol;
}

DiagnosticsRecord compute_record(const DensityField& u, double t, const DiagnosticsOptions& opt) {
  const auto& g = u.grid();
  const int n = g.dim();
  DiagnosticsRecord r;
  r.t = t;
  r.mass = total_mass(u);
  r.l1 = lp_norm(u, 1.0);
  r.l2 = lp_norm(u, 2.0);
  r.linf = lp_norm(u, kInfinity);
  const double s = opt.s.value();
  if (n == 2 && opt.s.newtonian()) {
    r.energy = opt.energy_reference ? energy(u, opt.s, opt.energy_reference) : kNaN;
  } else if ((n == 2 && s < 1.0) || (n == 1 && s < 0.5)) {
    r.energy = energy(u, opt.s);
  } else {
    r.energy = kNaN;
  }
  r.second_moment = second_moment(u, opt.center);
  r.support_radius = support_radius(u, opt.center, opt.floor_fraction);
  r.entropy = kNaN;
  r.dissipation = kNaN;
  if (opt.entropy && r.mass > 0.0) {
    const auto st = renormalize(u, t);
    const std::optional<DensityField> ref =
        n == 2 ? std::optional<DensityField>(entropy_reference(st.U)) : std::nullopt;
    const auto ed = entropy_and_dissipation(st, ref);
    r.entropy = ed.entropy;
    r.dissipation = ed.dissipation;
  }
  r.w2_reference = (r.mass > 0.0 && t + opt.tau > 0.0)
                       ? wasserstein_to_patch(u, opt.center, opt.tau, t)
                       : kNaN;
  r.bound_ratio = r.linf * (t + opt.tau);
  return r;
}

}  // namespace mfield
