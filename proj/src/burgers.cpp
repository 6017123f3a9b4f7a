#include "mfield/burgers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "mfield/errors.hpp"
#include "mfield/io.hpp"
#include "mfield/potential.hpp"

namespace mfield {

MassFunction mass_transform(const RadialProfile& u) {
  const auto& g = u.grid;
  std::vector<double> M(u.values.size(), 0.0);
  const double ds = g.dsigma();
  for (std::size_t j = 1; j < M.size(); ++j) {
    M[j] = M[j - 1] + 0.5 * (u.values[j - 1] + u.values[j]) * ds;
  }
  return MassFunction(g, std::move(M));
}

RadialProfile density_from_mass(const MassFunction& M) {
  const auto& g = M.grid;
  const auto& m = M.values;
  const std::size_t J = m.size();
  const double ds = g.dsigma();
  std::vector<double> u(J, 0.0);
  u[0] = (m[1] - m[0]) / ds;
  u[J - 1] = (m[J - 1] - m[J - 2]) / ds;
  for (std::size_t j = 1; j + 1 < J; ++j) u[j] = (m[j + 1] - m[j - 1]) / (2.0 * ds);
  for (double& v : u) v = std::max(0.0, v);
  return RadialProfile(g, std::move(u));
}

CharacteristicSolution::CharacteristicSolution(int dim, std::vector<std::array<double, 2>> knots)
    : dim_(dim), knots_(std::move(knots)) {
  if (dim < 1) throw DomainError("CharacteristicSolution: dimension must be >= 1");
  if (knots_.empty()) throw DomainError("CharacteristicSolution: no knots");
  if (knots_.front()[0] != 0.0) throw DomainError("CharacteristicSolution: first knot must be at 0");
  if (!(knots_.front()[1] >= 0.0)) throw DomainError("CharacteristicSolution: M0(0) must be >= 0");
  for (std::size_t k = 1; k < knots_.size(); ++k) {
    if (knots_[k][0] < knots_[k - 1][0] || knots_[k][1] < knots_[k - 1][1]) {
      throw DomainError("CharacteristicSolution: knots must be nondecreasing in sigma and M");
    }
  }
  if (knots_.front()[1] > 0.0) jumps_.push_back({0.0, 0.0, knots_.front()[1]});
  for (std::size_t k = 1; k < knots_.size(); ++k) {
    if (knots_[k][0] == knots_[k - 1][0] && knots_[k][1] > knots_[k - 1][1]) {
      if (!jumps_.empty() && jumps_.back().sigma == knots_[k][0]) {
        jumps_.back().right = knots_[k][1];
      } else {
        jumps_.push_back({knots_[k][0], knots_[k - 1][1], knots_[k][1]});
      }
    }
  }
}

CharacteristicSolution CharacteristicSolution::from_mass(const MassFunction& M) {
  std::vector<std::array<double, 2>> knots;
  knots.reserve(M.values.size());
  double prev = 0.0;
  for (int j = 0; j < M.grid.nodes(); ++j) {
    prev = std::max(prev, M.values[j]);  // absorb rounding-level decreases
    knots.push_back({M.grid.sigma(j), prev});
  }
  return CharacteristicSolution(M.grid.dim(), std::move(knots));
}

CharacteristicSolution CharacteristicSolution::dirac(int dim, double m) {
  if (!(m > 0.0)) throw DomainError("dirac: mass must be positive");
  return CharacteristicSolution(dim, {{0.0, m}});
}

double CharacteristicSolution::initial(double sigma) const {
  if (sigma < 0.0) return 0.0;
  auto it = std::upper_bound(knots_.begin(), knots_.end(), sigma,
                             [](double s, const std::array<double, 2>& k) { return s < k[0]; });
  const std::size_t k = static_cast<std::size_t>(it - knots_.begin()) - 1;
  if (k + 1 >= knots_.size()) return knots_.back()[1];
  const auto& a = knots_[k];
  const auto& b = knots_[k + 1];
  return a[1] + (b[1] - a[1]) * (sigma - a[0]) / (b[0] - a[0]);
}

double CharacteristicSolution::slope_at(double sigma0) const {
  auto it = std::upper_bound(knots_.begin(), knots_.end(), sigma0,
                             [](double s, const std::array<double, 2>& k) { return s < k[0]; });
  const std::size_t k = static_cast<std::size_t>(it - knots_.begin()) - 1;
  if (k + 1 >= knots_.size()) return 0.0;
  return (knots_[k + 1][1] - knots_[k][1]) / (knots_[k + 1][0] - knots_[k][0]);
}

double CharacteristicSolution::mass(double sigma, double t) const {
  if (t < 0.0) throw DomainError("evolve_characteristics: need t >= 0");
  if (sigma < 0.0) return 0.0;
  if (t == 0.0) return initial(sigma);
  for (const auto& j : jumps_) {
    const double lo = j.sigma + t * j.left, hi = j.sigma + t * j.right;
    if (sigma >= lo && sigma <= hi) return std::clamp((sigma - j.sigma) / t, j.left, j.right);
  }
  // sigma0 + t M0(sigma0) is increasing; its root lies in [0, sigma].
  double lo = 0.0, hi = sigma;
  const double tol = 1e-12 * std::max(1.0, sigma);
  int it = 0;
  for (; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid + t * initial(mid) <= sigma) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (hi - lo > tol) throw NumericalError("evolve_characteristics: bisection did not converge");
  // Polish inside the linear piece that contains the bracket.
  auto seg = std::upper_bound(knots_.begin(), knots_.end(), lo,
                              [](double s, const std::array<double, 2>& k) { return s < k[0]; });
  const std::size_t k = static_cast<std::size_t>(seg - knots_.begin()) - 1;
  if (k + 1 >= knots_.size()) return knots_.back()[1];
  const auto& a = knots_[k];
  const auto& b = knots_[k + 1];
  if (hi <= b[0]) {
    const double slope = (b[1] - a[1]) / (b[0] - a[0]);
    const double s0 = (sigma - t * (a[1] - slope * a[0])) / (1.0 + t * slope);
    if (s0 >= a[0] && s0 <= b[0]) return a[1] + slope * (s0 - a[0]);
  }
  return initial(0.5 * (lo + hi));
}

double CharacteristicSolution::density(double sigma, double t) const {
  if (t < 0.0) throw DomainError("evolve_characteristics: need t >= 0");
  if (t == 0.0) return slope_at(sigma);
  for (const auto& j : jumps_) {
    if (sigma >= j.sigma + t * j.left && sigma <= j.sigma + t * j.right) return 1.0 / t;
  }
  double lo = 0.0, hi = std::max(sigma, 0.0);
  for (int it = 0; it < 200 && hi - lo > 1e-12 * std::max(1.0, sigma); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid + t * initial(mid) <= sigma) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double s0 = slope_at(0.5 * (lo + hi));
  return s0 / (1.0 + t * s0);
}

double CharacteristicSolution::knot_image(std::size_t k, double t) const {
  if (k >= knots_.size()) throw DomainError("knot_image: index out of range");
  return knots_[k][0] + t * knots_[k][1];
}

MassFunction CharacteristicSolution::sample(const RadialGrid& grid, double t) const {
  if (grid.dim() != dim_) throw DomainError("sample: dimension mismatch");
  std::vector<double> v(grid.nodes());
  for (int j = 1; j < grid.nodes(); ++j) v[j] = mass(grid.sigma(j), t);
  v[0] = 0.0;
  return MassFunction(grid, std::move(v));
}

double burgers_max_dt(const MassFunction& M, double nu) {
  const double mmax = *std::max_element(M.values.begin(), M.values.end());
  if (mmax <= 0.0) return std::numeric_limits<double>::infinity();
  return nu * M.grid.dsigma() / mmax;
}

MassFunction step_finite_volume(const MassFunction& M, double dt, double nu) {
  if (!(nu > 0.0 && nu <= 1.0)) throw DomainError("step_finite_volume: CFL number must be in (0, 1]");
  if (!(dt >= 0.0)) throw DomainError("step_finite_volume: dt must be >= 0");
  const double ds = M.grid.dsigma();
  const auto& m = M.values;
  const double mmax = *std::max_element(m.begin(), m.end());
  if (dt * mmax / ds > nu * (1.0 + 1e-12)) {
    throw NumericalError("step_finite_volume: CFL violation (dt max M / dsigma = " +
                         format_double(dt * mmax / ds) + ")");
  }
  const double lam = dt / ds;
  std::vector<double> out(m.size());
  out[0] = 0.0;
  for (std::size_t j = 1; j < m.size(); ++j) {
    out[j] = m[j] - lam * 0.5 * (m[j] * m[j] - m[j - 1] * m[j - 1]);
    if (!std::isfinite(out[j])) throw NumericalError("step_finite_volume: non-finite value");
  }
  return MassFunction(M.grid, std::move(out));
}

InequalityReport check_monotone_inequalities(const std::vector<double>& times,
                                             const std::vector<MassFunction>& masses,
                                             double tol) {
  if (times.size() != masses.size()) throw DomainError("check_monotone_inequalities: size mismatch");
  InequalityReport rep{tol, -std::numeric_limits<double>::infinity(),
                       std::numeric_limits<double>::infinity(), {}, 0};
  for (std::size_t k = 0; k + 1 < times.size(); ++k) {
    const double t0 = times[k], t1 = times[k + 1];
    if (!(t0 > 0.0) || !(t1 > t0)) {
      throw DomainError("check_monotone_inequalities: times must be positive and increasing");
    }
    if (!(masses[k].grid == masses[k + 1].grid)) {
      throw DomainError("check_monotone_inequalities: grids differ");
    }
    const double dt = t1 - t0;
    const auto& a = masses[k].values;
    const auto& b = masses[k + 1].values;
    for (std::size_t j = 0; j < a.size(); ++j) {
      const double rate = (b[j] - a[j]) / dt;
      const double lower = -a[j] / t1;
      rep.max_rate = std::max(rep.max_rate, rate);
      rep.min_lower_margin = std::min(rep.min_lower_margin, rate - lower);
      const bool up = rate > tol;
      const bool low = rate - lower < -tol;
      if (up || low) {
        ++rep.violation_count;
        if (rep.violations.size() < 100) {
          rep.violations.push_back({k, static_cast<int>(j), rate, lower, up});
        }
      }
    }
  }
  return rep;
}

void write_radial_trajectory(std::ostream& os, const std::vector<double>& times,
                             const std::vector<MassFunction>& masses) {
  if (times.size() != masses.size()) throw DomainError("write_radial_trajectory: size mismatch");
  os << "t,sigma,r,M,u,v\n";
  for (std::size_t k = 0; k < times.size(); ++k) {
    const auto& M = masses[k];
    const auto u = density_from_mass(M);
    const auto v = radial_velocity(M);
    for (int j = 0; j < M.grid.nodes(); ++j) {
      os << format_double(times[k]) << ',' << format_double(M.grid.sigma(j)) << ','
         << format_double(M.grid.r(j)) << ',' << format_double(M.values[j]) << ','
         << format_double(u.values[j]) << ',' << format_double(v.values[j]) << '\n';
    }
  }
}

}  // namespace mfield
