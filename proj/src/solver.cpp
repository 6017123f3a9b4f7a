#include "mfield/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <optional>

#include "mfield/errors.hpp"
#include "mfield/field_ops.hpp"
#include "mfield/io.hpp"
#include "mfield/potential.hpp"

namespace mfield {

std::string to_string(TransportScheme s) {
  return s == TransportScheme::Muscl ? "muscl" : "donor-cell";
}

std::string to_string(TimeIntegrator s) { return s == TimeIntegrator::SspRk2 ? "ssp-rk2" : "euler"; }

TransportScheme transport_scheme_from(const std::string& name) {
  if (name == "muscl") return TransportScheme::Muscl;
  if (name == "donor-cell") return TransportScheme::DonorCell;
  throw ConfigError("unknown transport scheme '" + name + "' (expected muscl or donor-cell)");
}

TimeIntegrator time_integrator_from(const std::string& name) {
  if (name == "ssp-rk2") return TimeIntegrator::SspRk2;
  if (name == "euler") return TimeIntegrator::Euler;
  throw ConfigError("unknown time integrator '" + name + "' (expected ssp-rk2 or euler)");
}

void SolverConfig::validate() const {
  if (!(s > 0.0 && s <= 1.0)) throw ConfigError("s must lie in (0, 1]");
  if (!(viscosity >= 0.0) || !std::isfinite(viscosity)) throw ConfigError("viscosity must be >= 0");
  if (!(cfl > 0.0 && cfl <= 1.0)) throw ConfigError("cfl must lie in (0, 1]");
  if (!(final_time > 0.0) || !std::isfinite(final_time)) throw ConfigError("final_time must be > 0");
  for (double t : output_times) {
    if (!(t > 0.0 && t <= final_time)) throw ConfigError("output times must lie in (0, final_time]");
  }
  if (!(admissibility_fraction > 0.0 && admissibility_fraction <= 1.0)) {
    throw ConfigError("admissibility_fraction must lie in (0, 1]");
  }
  if (!std::holds_alternative<FileInitial>(initial) && initial_dim(initial) != grid.dim()) {
    throw ConfigError("initial data dimension does not match the grid");
  }
}

AdmissibilityResult check_admissibility(const SolverConfig& cfg, const DensityField& u0) {
  const double L = cfg.grid.half_width();
  const double limit = cfg.admissibility_fraction * L;
  const double sup = lp_norm(u0, kInfinity);
  if (sup == 0.0) return {true, 0.0, limit, "zero initial data"};
  const Point c = center_of_mass(u0);
  const double rho = support_extent(u0, c);
  const double cn = cfg.grid.dim() == 1 ? std::abs(c[0]) : std::hypot(c[0], c[1]);
  const double required = cn + rho * std::pow(1.0 + sup * cfg.final_time, 1.0 / cfg.grid.dim());
  AdmissibilityResult res{required <= limit, required, limit, ""};
  res.message = "support-propagation bound |c| + R0 (1 + |u0|_inf T)^{1/n} = " +
                format_double(required) + (res.ok ? " <= " : " exceeds ") +
                format_double(cfg.admissibility_fraction) + " L = " + format_double(limit);
  return res;
}

namespace {

double mc_slope(double ul, double u, double ur) {
  const double dl = u - ul, dr = ur - u;
  if (dl * dr <= 0.0) return 0.0;
  const double m = std::min({2.0 * std::abs(dl), 2.0 * std::abs(dr), 0.5 * std::abs(dl + dr)});
  return dl > 0.0 ? m : -m;
}

// du/dt = -div(u v) + eps Lap u with zero flux through the box boundary.
std::vector<double> rhs(const CartesianGrid& g, std::span<const double> u, const VectorField& v,
                        double eps, TransportScheme scheme) {
  const int N = g.cells();
  const double h = g.h();
  std::vector<double> du(u.size(), 0.0);
  std::vector<double> slope(static_cast<std::size_t>(N));
  const bool muscl = scheme == TransportScheme::Muscl;

  auto line = [&](std::size_t start, std::size_t stride, const std::vector<double>& a) {
    auto at = [&](int k) { return start + static_cast<std::size_t>(k) * stride; };
    if (muscl) {
      for (int k = 0; k < N; ++k) {
        const double ul = k > 0 ? u[at(k - 1)] : 0.0;
        const double ur = k + 1 < N ? u[at(k + 1)] : 0.0;
        slope[k] = mc_slope(ul, u[at(k)], ur);
      }
    }
    for (int k = 0; k + 1 < N; ++k) {
      const std::size_t p = at(k), q = at(k + 1);
      const double af = 0.5 * (a[p] + a[q]);
      double up;
      if (af > 0.0) {
        up = muscl ? u[p] + 0.5 * slope[k] : u[p];
      } else {
        up = muscl ? u[q] - 0.5 * slope[k + 1] : u[q];
      }
      const double F = (af * up - eps * (u[q] - u[p]) / h) / h;
      du[p] -= F;
      du[q] += F;
    }
  };

  if (g.dim() == 1) {
    line(0, 1, v.components[0]);
  } else {
    const auto n = static_cast<std::size_t>(N);
    for (std::size_t j = 0; j < n; ++j) line(j, n, v.components[0]);
    for (std::size_t i = 0; i < n; ++i) line(i * n, 1, v.components[1]);
  }
  return du;
}

double dt_bound(const CartesianGrid& g, double vmax, double eps, double nu) {
  double dt = std::numeric_limits<double>::infinity();
  if (vmax > 0.0) dt = std::min(dt, g.h() / vmax);
  if (eps > 0.0) dt = std::min(dt, g.h() * g.h() / (2.0 * g.dim() * eps));
  return nu * dt;
}

struct Clip {
  double mass = 0.0;
  std::size_t cells = 0;
};

void clip_negative(std::vector<double>& u, double vol, Clip& c) {
  for (double& x : u) {
    if (!std::isfinite(x)) throw NumericalError("solver: non-finite density");
    if (x < 0.0) {
      c.mass -= x * vol;
      ++c.cells;
      x = 0.0;
    }
  }
}

StepResult advance(const DensityField& u, const SolverConfig& cfg, double dt, const VectorField& v0) {
  const auto& g = u.grid();
  const Exponent s(cfg.s);
  const double vol = g.cell_volume();
  Clip clip;
  const auto un = u.values();
  auto L0 = rhs(g, un, v0, cfg.viscosity, cfg.scheme);
  std::vector<double> u1(un.begin(), un.end());
  for (std::size_t i = 0; i < u1.size(); ++i) u1[i] += dt * L0[i];
  clip_negative(u1, vol, clip);
  if (cfg.integrator == TimeIntegrator::SspRk2) {
    const auto v1 = KernelTable::shared(g, s)->velocity(u1);
    const auto L1 = rhs(g, u1, v1, cfg.viscosity, cfg.scheme);
    for (std::size_t i = 0; i < u1.size(); ++i) u1[i] = 0.5 * un[i] + 0.5 * (u1[i] + dt * L1[i]);
    clip_negative(u1, vol, clip);
  }
  return {DensityField(g, std::move(u1)), clip.mass, clip.cells};
}

}  // namespace

double stable_dt(const DensityField& u, const SolverConfig& cfg) {
  const auto v = velocity(u, Exponent(cfg.s));
  return dt_bound(u.grid(), v.sup_norm(), cfg.viscosity, cfg.cfl);
}

StepResult step(const DensityField& u, const SolverConfig& cfg, double dt) {
  if (!(u.grid() == cfg.grid)) throw DomainError("step: field grid differs from config grid");
  if (!(dt >= 0.0)) throw DomainError("step: dt must be >= 0");
  const auto v = velocity(u, Exponent(cfg.s));
  const double bound = dt_bound(u.grid(), v.sup_norm(), cfg.viscosity, cfg.cfl);
  if (dt > bound * (1.0 + 1e-12)) {
    throw NumericalError("step: CFL violation, dt = " + format_double(dt) +
                         " > " + format_double(bound));
  }
  return advance(u, cfg, dt, v);
}

const DensityField& Trajectory::at(double t) const {
  for (const auto& s : snapshots) {
    if (std::abs(s.t - t) <= 1e-9 * std::max(1.0, std::abs(t))) return s.u;
  }
  throw DomainError("trajectory has no snapshot at t = " + format_double(t));
}

Trajectory run(const SolverConfig& cfg) {
  cfg.validate();
  return run(cfg, make_initial(cfg.initial, cfg.grid));
}

Trajectory run(const SolverConfig& cfg, const DensityField& u0) {
  cfg.validate();
  if (!(u0.grid() == cfg.grid)) throw ConfigError("initial field grid differs from config grid");
  if (const auto adm = check_admissibility(cfg, u0); !adm.ok) throw ConfigError(adm.message);

  const auto start = std::chrono::steady_clock::now();
  const auto& g = cfg.grid;
  const Exponent s(cfg.s);
  const auto table = KernelTable::shared(g, s);

  std::vector<double> targets = cfg.output_times;
  targets.push_back(cfg.final_time);
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end(),
                            [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, b); }),
                targets.end());

  Trajectory traj;
  const double sup0 = lp_norm(u0, kInfinity);
  traj.tau = sup0 > 0.0 ? 1.0 / sup0 : 0.0;
  traj.snapshots.push_back({0.0, u0});
  traj.max_bound_ratio = sup0 > 0.0 ? 1.0 : 0.0;
  bool warned = false;

  DensityField u = u0;
  double t = 0.0;
  for (double target : targets) {
    while (t < target) {
      const auto v = table->velocity(u.values());
      double dt = dt_bound(g, v.sup_norm(), cfg.viscosity, cfg.cfl);
      bool hit = false;
      if (!(t + dt < target - 1e-12 * std::max(1.0, target))) {
        dt = target - t;
        hit = true;
      }
      auto res = advance(u, cfg, dt, v);
      u = std::move(res.u);
      traj.clipped_mass += res.clipped_mass;
      traj.clipped_cells += res.clipped_cells;
      t = hit ? target : t + dt;
      const double linf = lp_norm(u, kInfinity);
      const double ratio = linf * (t + traj.tau);
      traj.max_bound_ratio = std::max(traj.max_bound_ratio, ratio);
      traj.steps.push_back({t, dt, total_mass(u), linf, ratio});
      if (sup0 > 0.0 && ratio > cfg.bound_warning && !warned) {
        warned = true;
        traj.warnings.push_back("universal bound monitor: max u (t + tau) = " + format_double(ratio) +
                                " at t = " + format_double(t));
      }
    }
    traj.snapshots.push_back({t, u});
  }
  if (traj.clipped_mass > 1e-12 * std::max(1.0, total_mass(u0))) {
    traj.warnings.push_back("clipping added mass " + format_double(traj.clipped_mass));
  }
  traj.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return traj;
}

nlohmann::json to_json(const SolverConfig& cfg) {
  return {{"dim", cfg.grid.dim()},
          {"half_width", cfg.grid.half_width()},
          {"cells", cfg.grid.cells()},
          {"s", cfg.s},
          {"viscosity", cfg.viscosity},
          {"cfl", cfg.cfl},
          {"final_time", cfg.final_time},
          {"output_times", cfg.output_times},
          {"scheme", to_string(cfg.scheme)},
          {"integrator", to_string(cfg.integrator)},
          {"initial", initial_kind(cfg.initial)}};
}

nlohmann::json run_summary(const SolverConfig& cfg, const Trajectory& traj) {
  nlohmann::json snaps = nlohmann::json::array();
  for (const auto& s : traj.snapshots) {
    snaps.push_back({{"t", s.t}, {"mass", total_mass(s.u)}, {"linf", lp_norm(s.u, kInfinity)}});
  }
  const double m0 = total_mass(traj.snapshots.front().u);
  const double m1 = total_mass(traj.snapshots.back().u);
  return {{"config", to_json(cfg)},
          {"steps", traj.steps.size()},
          {"wall_seconds", traj.wall_seconds},
          {"tau", traj.tau},
          {"mass_drift", m0 > 0.0 ? std::abs(m1 - m0) / m0 : 0.0},
          {"max_bound_ratio", traj.max_bound_ratio},
          {"clipping", {{"mass", traj.clipped_mass}, {"cells", traj.clipped_cells}}},
          {"warnings", traj.warnings},
          {"snapshots", snaps}};
}

SweepReport sweep_s(const SolverConfig& base, std::vector<double> s_list, int jobs) {
  std::sort(s_list.begin(), s_list.end());
  s_list.erase(std::unique(s_list.begin(), s_list.end()), s_list.end());
  if (s_list.empty() || s_list.back() != 1.0) throw ConfigError("sweep_s: s_list must include 1");
  for (double s : s_list) {
    if (!(s > 0.0 && s <= 1.0)) throw ConfigError("sweep_s: every s must lie in (0, 1]");
  }
  jobs = std::max(1, jobs);

  SweepReport rep{{}, true, ""};
  std::vector<std::optional<Trajectory>> runs(s_list.size());
  for (std::size_t first = 0; first < s_list.size() && rep.error.empty();
       first += static_cast<std::size_t>(jobs)) {
    const std::size_t last = std::min(s_list.size(), first + static_cast<std::size_t>(jobs));
    std::vector<std::future<Trajectory>> futs;
    for (std::size_t k = first; k < last; ++k) {
      SolverConfig cfg = base;
      cfg.s = s_list[k];
      futs.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred,
                                [cfg] { return run(cfg); }));
    }
    for (std::size_t k = first; k < last; ++k) {
      try {
        runs[k] = futs[k - first].get();
      } catch (const std::exception& e) {
        if (rep.error.empty()) rep.error = "s = " + format_double(s_list[k]) + ": " + e.what();
      }
    }
  }
  const Trajectory* ref = runs.back() ? &*runs.back() : nullptr;
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < s_list.size(); ++k) {
    if (!runs[k]) continue;
    const double d = ref ? l1_distance(runs[k]->snapshots.back().u, ref->snapshots.back().u)
                         : std::numeric_limits<double>::quiet_NaN();
    if (!(d <= prev)) rep.nonincreasing = false;
    prev = d;
    rep.members.push_back({s_list[k], d, std::move(*runs[k])});
  }
  if (!rep.error.empty()) rep.nonincreasing = false;
  return rep;
}

double support_radius(const DensityField& u, const Point& center, double floor_fraction) {
  if (!(floor_fraction > 0.0 && floor_fraction <= 0.1)) {
    throw DomainError("support_radius: floor_fraction must lie in (0, 0.1]");
  }
  const double sup = lp_norm(u, kInfinity);
  if (sup == 0.0) return 0.0;
  const auto& g = u.grid();
  const double floor = floor_fraction * sup;
  double best = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] <= floor) continue;
    const Point x = g.center(i);
    const double d = g.dim() == 1 ? std::abs(x[0] - center[0])
                                  : std::hypot(x[0] - center[0], x[1] - center[1]);
    best = std::max(best, d);
  }
  return best;
}

}  // namespace mfield
