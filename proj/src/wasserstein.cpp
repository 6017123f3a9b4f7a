#include "mfield/wasserstein.hpp"

#include <algorithm>
#include <cmath>

#include "mfield/errors.hpp"
#include "mfield/field_ops.hpp"

namespace mfield {

double radial_quantile(const MassFunction& M, double m) {
  const auto& g = M.grid;
  const double target = m / sphere_area(g.dim());
  const auto& v = M.values;
  if (target <= v.front()) return 0.0;
  if (target >= v.back()) {
    // first node reaching the total
    auto it = std::lower_bound(v.begin(), v.end(), v.back());
    return g.r(static_cast<int>(it - v.begin()));
  }
  const auto it = std::lower_bound(v.begin(), v.end(), target);
  const int j = static_cast<int>(it - v.begin());
  const double frac = (target - v[j - 1]) / (v[j] - v[j - 1]);
  return r_of_sigma(g.dim(), g.sigma(j - 1) + frac * g.dsigma());
}

double wasserstein_radial(const MassFunction& a, const MassFunction& b, double p, int quadrature) {
  if (a.grid.dim() != b.grid.dim()) throw DomainError("wasserstein_radial: dimensions differ");
  if (!(p >= 1.0)) throw DomainError("wasserstein_radial: need p >= 1");
  if (quadrature < 1) throw DomainError("wasserstein_radial: quadrature must be positive");
  const double ma = a.total(), mb = b.total();
  if (std::abs(ma - mb) > 1e-8 * std::max(std::abs(ma), std::abs(mb))) {
    throw DomainError("wasserstein_radial: total masses differ");
  }
  const double full = sphere_area(a.grid.dim()) * 0.5 * (ma + mb);
  if (full <= 0.0) return 0.0;
  const double dm = full / quadrature;
  double acc = 0.0;
  for (int k = 0; k < quadrature; ++k) {
    const double m = (k + 0.5) * dm;
    acc += std::pow(std::abs(radial_quantile(a, m) - radial_quantile(b, m)), p);
  }
  return std::pow(acc * dm, 1.0 / p);
}

double wasserstein_field_radial(const DensityField& u, const Point& center,
                                const std::function<double(double)>& reference_quantile,
                                double p, int quadrature) {
  if (!(p >= 1.0)) throw DomainError("wasserstein_field_radial: need p >= 1");
  const auto& g = u.grid();
  const double vol = g.cell_volume();
  std::vector<std::pair<double, double>> atoms;  // (radius, mass)
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] <= 0.0) continue;
    const Point x = g.center(i);
    const double r = g.dim() == 1 ? std::abs(x[0] - center[0])
                                  : std::hypot(x[0] - center[0], x[1] - center[1]);
    atoms.push_back({r, u[i] * vol});
  }
  if (atoms.empty()) return 0.0;
  std::sort(atoms.begin(), atoms.end());
  std::vector<double> cuts;
  double total = 0.0;
  for (const auto& a : atoms) cuts.push_back(total += a.second);

  // Pieces between atom boundaries and a uniform grid in m; the field quantile is constant
  // on each piece, so 2-point Gauss handles the smooth reference.
  const double gl = 0.5 / std::sqrt(3.0);
  const double step = total / quadrature;
  double acc = 0.0, lo = 0.0;
  std::size_t k = 0;
  int j = 1;
  while (k < atoms.size()) {
    const double uniform = j < quadrature ? j * step : total;
    const double hi = std::min(cuts[k], uniform);
    if (hi > lo) {
      const double mid = 0.5 * (lo + hi), len = hi - lo;
      for (double off : {-gl, gl}) {
        acc += 0.5 * len * std::pow(std::abs(atoms[k].first - reference_quantile(mid + off * len)), p);
      }
    }
    lo = std::max(lo, hi);
    if (hi >= cuts[k]) ++k;
    if (j < quadrature && hi >= uniform) ++j;
  }
  return std::pow(acc, 1.0 / p);
}

double wasserstein_to_patch(const DensityField& u, const Point& center, double tau, double t) {
  if (!(t + tau > 0.0)) throw DomainError("wasserstein_to_patch: need t + tau > 0");
  const int n = u.grid().dim();
  const double area = sphere_area(n);
  auto q = [&](double m) { return std::pow(n * (t + tau) * m / area, 1.0 / n); };
  return wasserstein_field_radial(u, center, q, 2.0);
}

double patch_w2_closed_form(int dim, double mass, double tau, double t1, double t2) {
  const double n = dim;
  const double c = std::pow(n / sphere_area(dim), 1.0 / n) * std::pow(mass, 0.5 + 1.0 / n) /
                   std::sqrt(1.0 + 2.0 / n);
  return c * std::abs(std::pow(t2 + tau, 1.0 / n) - std::pow(t1 + tau, 1.0 / n));
}

ContinuityReport wasserstein_continuity_check(const std::vector<double>& times,
                                              const std::vector<MassFunction>& masses,
                                              double constant) {
  if (times.size() != masses.size()) throw DomainError("continuity check: size mismatch");
  ContinuityReport rep{constant, 0.0, {}, true};
  for (std::size_t k = 0; k + 1 < times.size(); ++k) {
    const double t0 = times[k], t1 = times[k + 1];
    if (!(t0 > 0.0) || t1 < t0) throw DomainError("continuity check: need 0 < t_k <= t_{k+1}");
    const int n = masses[k].grid.dim();
    const double gap = std::pow(t1, 1.0 / n) - std::pow(t0, 1.0 / n);
    const double d = t1 == t0 ? 0.0 : wasserstein_radial(masses[k], masses[k + 1], 2.0);
    const double bound = constant * gap;
    const bool ok = d <= bound || (gap == 0.0 && d == 0.0);
    if (gap > 0.0) rep.max_ratio = std::max(rep.max_ratio, d / gap);
    rep.ok = rep.ok && ok;
    rep.intervals.push_back({t0, t1, d, bound, ok});
  }
  return rep;
}

}  // namespace mfield
