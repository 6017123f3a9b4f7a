#include "mfield/potential.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <cmath>
#include <numbers>

#include "mfield/errors.hpp"
#include "mfield/field_ops.hpp"

namespace mfield {

VectorField velocity(const DensityField& u, Exponent s) {
  return KernelTable::shared(u.grid(), s)->velocity(u.values());
}

RadialProfile radial_velocity(const MassFunction& mass) {
  const auto& g = mass.grid;
  std::vector<double> v(mass.values.size(), 0.0);
  for (int j = 1; j < g.nodes(); ++j) {
    v[j] = std::max(0.0, mass.values[j]) / std::pow(g.r(j), g.dim() - 1);
  }
  if (g.dim() == 1) v[0] = std::max(0.0, mass.values[0]);
  return RadialProfile(g, std::move(v));
}

double energy(const DensityField& u, Exponent s, const std::optional<DensityField>& reference) {
  const auto& g = u.grid();
  const int n = g.dim();
  const double vol = g.cell_volume();
  if (n == 2 && s.newtonian()) {
    if (!reference) throw DomainError("energy: n = 2, s = 1 needs a reference density");
    const auto& u0 = *reference;
    if (!(u0.grid() == g)) throw DomainError("energy: reference lives on a different grid");
    const double m = total_mass(u);
    const double m0 = total_mass(u0);
    if (std::abs(m - m0) > 1e-8 * std::max(std::abs(m), std::abs(m0))) {
      throw DomainError("energy: reference mass differs from the field mass");
    }
    std::vector<double> diff(u.size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = u[i] - u0[i];
    const auto w = KernelTable::shared(g, s)->pressure(diff);
    // int |grad w|^2 = int w (u - u0), so E = int w (u + u0).
    double e = 0.0;
    for (std::size_t i = 0; i < diff.size(); ++i) e += w[i] * (u[i] + u0[i]);
    return e * vol;
  }
  const bool positive_kernel = (n == 2 && s.value() < 1.0) || (n == 1 && s.value() < 0.5);
  if (!positive_kernel) {
    throw DomainError("energy: int u p is not defined for this (n, s) on the grid");
  }
  const auto p = KernelTable::shared(g, s)->pressure(u.values());
  double e = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) e += u[i] * p[i];
  return e * vol;
}

double radial_energy(const MassFunction& mass) {
  const auto& g = mass.grid;
  const int n = g.dim();
  if (n < 3) throw DomainError("radial_energy: needs n >= 3");
  const double ds = g.dsigma();
  auto integrand = [&](int j) {
    if (j == 0) return 0.0;
    const double M = mass.values[j];
    return M * M / std::pow(g.r(j), 2.0 * (n - 1));
  };
  double acc = 0.0;
  for (int j = 0; j + 1 < g.nodes(); ++j) acc += 0.5 * (integrand(j) + integrand(j + 1)) * ds;
  const double mt = mass.total();
  acc += mt * mt * std::pow(g.r_max(), 2.0 - n) / (n - 2.0);
  return sphere_area(n) * acc;
}

double lattice_power_sum(int dim, double r) {
  if (!(r > 0.0)) throw DomainError("lattice_power_sum: r must be positive");
  const double p = dim + 2.0 * r;
  if (dim == 1) return 2.0 * boost::math::zeta(p);
  if (dim != 2) throw DomainError("lattice_power_sum: dimension must be 1 or 2");
  constexpr int K = 400;
  double direct = 0.0;
  for (int i = -K; i <= K; ++i) {
    for (int j = -K; j <= K; ++j) {
      if (i == 0 && j == 0) continue;
      direct += std::pow(static_cast<double>(i) * i + static_cast<double>(j) * j, -0.5 * p);
    }
  }
  // Remaining lattice points each own a unit cell; integrate |x|^{-p} outside the square.
  const double a = K + 0.5;
  auto f = [&](double th) { return std::pow(a / std::cos(th), -2.0 * r) / (2.0 * r); };
  const double tail =
      8.0 * boost::math::quadrature::gauss<double, 30>::integrate(f, 0.0, std::numbers::pi / 4);
  return direct + tail;
}

double bilinear_form(const DensityField& v, const DensityField& w, Exponent s) {
  if (s.newtonian()) throw DomainError("bilinear_form: degenerate for s = 1");
  if (!(v.grid() == w.grid())) throw DomainError("bilinear_form: grids differ");
  const auto& g = v.grid();
  const int n = g.dim();
  const double r = 1.0 - s.value();
  const double h = g.h();
  const double vol = g.cell_volume();
  const double C = fractional_laplacian_constant(n, r);

  FreeSpaceConvolver conv(g);
  const auto spec = conv.spectrum([&](int d0, int d1) {
    if (d0 == 0 && d1 == 0) return 0.0;
    const double rr = h * std::sqrt(static_cast<double>(d0) * d0 + static_cast<double>(d1) * d1);
    return std::pow(rr, -n - 2.0 * r);
  });
  const auto kw = conv.apply(w.values(), spec);
  const double lattice = std::pow(h, -2.0 * r) * lattice_power_sum(n, r);

  double diag = 0.0, cross = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    diag += v[i] * w[i];
    cross += v[i] * kw[i];
  }
  return 2.0 * C * vol * (lattice * diag - cross);
}

LogLipschitzEstimate log_lipschitz_modulus(const DensityField& u) {
  const auto& g = u.grid();
  const auto vel = velocity(u, Exponent(1.0));
  const auto& comps = vel.components;
  auto omega = [](double d) {
    const double lg = d <= std::exp(-1.0) ? std::abs(std::log(d)) : 0.0;
    return d * (lg + 1.0);
  };
  auto ratio = [&](std::size_t a, std::size_t b) {
    const Point xa = g.center(a), xb = g.center(b);
    const double dx = xa[0] - xb[0], dy = xa[1] - xb[1];
    const double d = std::sqrt(dx * dx + dy * dy);
    double diff = 0.0;
    for (const auto& c : comps) diff += (c[a] - c[b]) * (c[a] - c[b]);
    return std::sqrt(diff) / omega(d);
  };

  double best = 0.0;
  const int N = g.cells();
  // nearest neighbours along each axis
  for (std::size_t a = 0; a < g.size(); ++a) {
    if (g.dim() == 1) {
      if (static_cast<int>(a) + 1 < N) best = std::max(best, ratio(a, a + 1));
    } else {
      const int i = static_cast<int>(a) / N, j = static_cast<int>(a) % N;
      if (i + 1 < N) best = std::max(best, ratio(a, g.flat_index(i + 1, j)));
      if (j + 1 < N) best = std::max(best, ratio(a, g.flat_index(i, j + 1)));
    }
  }
  // strided subset, all pairs
  const int stride = g.dim() == 1 ? std::max(1, N / 256) : std::max(1, N / 20);
  std::vector<std::size_t> subset;
  for (int i = stride / 2; i < N; i += stride) {
    if (g.dim() == 1) {
      subset.push_back(static_cast<std::size_t>(i));
    } else {
      for (int j = stride / 2; j < N; j += stride) subset.push_back(g.flat_index(i, j));
    }
  }
  for (std::size_t a = 0; a < subset.size(); ++a)
    for (std::size_t b = a + 1; b < subset.size(); ++b)
      best = std::max(best, ratio(subset[a], subset[b]));

  const double norm = lp_norm(u, 1.0) + lp_norm(u, kInfinity);
  return {norm > 0.0 ? best / norm : 0.0, best};
}

}  // namespace mfield
