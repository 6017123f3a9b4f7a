// Acceptance suite: one PASS/FAIL line per criterion.
//
// Inputs and tolerances are pinned here rather than taken from scenario defaults. Criteria in
// kKnownFailures are reported faithfully but do not change the exit status unless --strict
// is given.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mfield/burgers.hpp"
#include "mfield/closed_forms.hpp"
#include "mfield/scenarios.hpp"

using namespace mfield;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

namespace {

// Criterion 7 asks for a constant second moment, but the moment of a spreading solution grows
// linearly at rate M^2 / (2 pi). See the second_moment_growth_rate line printed with it.
const std::set<int> kKnownFailures{7};

struct Cond {
  std::string label;
  double measured;
  std::string relation;
  double bound;
  bool ok;
};

Cond le(const std::string& l, double m, double b) { return {l, m, "<=", b, m <= b}; }
Cond lt(const std::string& l, double m, double b) { return {l, m, "<", b, m < b}; }
Cond ge(const std::string& l, double m, double b) { return {l, m, ">=", b, m >= b}; }

struct Criterion {
  int id;
  std::string title;
  std::vector<Cond> conds;
  double seconds = 0.0;
  double budget = 0.0;
  std::string note;
};

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Runner {
  int jobs;
  std::map<std::string, ScenarioReport> reports;
  std::map<std::string, double> seconds;

  const ScenarioReport& get(const std::string& name, const json& overrides) {
    auto it = reports.find(name);
    if (it != reports.end()) return it->second;
    ScenarioSpec spec;
    spec.name = name;
    spec.overrides = overrides;
    spec.jobs = jobs;
    spec.seed = 7;
    spec.write_files = false;
    const auto t0 = Clock::now();
    auto rep = run_scenario(spec);
    seconds[name] = since(t0);
    return reports.emplace(name, std::move(rep)).first->second;
  }
  double measured(const std::string& name, const std::string& id) {
    return reports.at(name).check(id).measured;
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

bool passed(const Criterion& c) {
  bool ok = c.budget <= 0.0 || c.seconds <= c.budget;
  for (const auto& k : c.conds) ok = ok && k.ok;
  return ok;
}

void print(const Criterion& c) {
  const bool ok = passed(c);
  std::ostringstream os;
  os << (ok ? "PASS" : "FAIL") << "  criterion " << (c.id < 10 ? " " : "") << c.id << "  "
     << c.title << "  |";
  for (std::size_t i = 0; i < c.conds.size(); ++i) {
    const auto& k = c.conds[i];
    os << (i ? ";" : "") << " " << k.label << " " << fmt(k.measured) << " " << k.relation << " "
       << fmt(k.bound) << (k.ok ? "" : " (violated)");
  }
  os << " | " << fmt(c.seconds) << " s";
  if (c.budget > 0.0) os << " of " << fmt(c.budget) << " s";
  if (!c.note.empty()) os << " | " << c.note;
  std::printf("%s\n", os.str().c_str());
  std::fflush(stdout);
}

Criterion residuals() {
  Criterion c{1, "exact-solution Burgers residuals"};
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> us(0.0, 4.0), ut(0.05, 5.0);
  const PatchSpec ps{2, 1.0, 1.0, {0.0, 0.0}};
  double patch = 0.0, largest = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const double sigma = us(rng), t = ut(rng);
    const double r = r_of_sigma(2, sigma);
    const auto m = patch_mass(ps, r, t);
    patch = std::max(patch, std::abs(m.M_t + m.M * m.M_sigma));
    const auto l = largest_solution(r, t, 2).mass;
    largest = std::max(largest, std::abs(l.M_t + l.M * l.M_sigma));
  }
  c.seconds = since(t0);
  c.budget = 1.0;
  c.conds = {le("patch residual", patch, 1e-12), le("largest-solution residual", largest, 1e-12)};
  return c;
}

Criterion characteristics() {
  Criterion c{2, "characteristics vs two-patch closed form"};
  const auto t0 = Clock::now();
  const auto tp = TwoPatchSpec::make(2, 1.0, 1.0, 2.0, 3.0);
  const CharacteristicSolution cs(2, tp.initial_mass_knots());
  double worst = 0.0;
  for (double t : {1.0, 3.0})
    for (int k = 0; k <= 2000; ++k) {
      const double r = 6.0 * k / 2000;
      worst = std::max(worst, std::abs(cs.mass(sigma_of_r(2, r), t) - two_patch_state(tp, r, t).mass));
    }
  // interfaces from the characteristics: images of the knots at R1, R2, R3
  const auto& kn = cs.knots();
  auto image = [&](double R) {
    const double sg = sigma_of_r(2, R);
    for (std::size_t k = 0; k < kn.size(); ++k)
      if (std::abs(kn[k][0] - sg) < 1e-14) return r_of_sigma(2, cs.knot_image(k, 3.0));
    return std::nan("");
  };
  const double e1 = std::abs(image(1.0) - 2.0);
  const double e2 = std::abs(image(2.0) - std::sqrt(7.0));
  const double e3 = std::abs(image(3.0) - 1.5 * std::sqrt(7.0));
  c.seconds = since(t0);
  c.budget = 5.0;
  c.conds = {le("max |M - M_exact| at t=1,3", worst, 1e-10), le("|S1 - 2|", e1, 1e-8),
             le("|S2 - sqrt7|", e2, 1e-8), le("|S3 - 1.5 sqrt7|", e3, 1e-8)};
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  bool strict = false;
  int jobs = 2;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--strict") == 0) strict = true;
    else if (std::strcmp(argv[i], "--jobs") == 0 && i + 1 < argc) jobs = std::max(1, std::atoi(argv[++i]));
  }

  Runner run{jobs, {}, {}};
  std::vector<Criterion> out;
  auto emit = [&](Criterion c) {
    print(c);
    out.push_back(std::move(c));
  };

  try {
    emit(residuals());
    emit(characteristics());

    {
      run.get("two-patch", {{"dim", 2}, {"c1", 1.0}, {"R1", 1.0}, {"R2", 2.0}, {"R3", 3.0},
                            {"fv_nodes", {257, 513, 1025}}});
      Criterion c{3, "Godunov radial convergence"};
      c.conds = {ge("observed order", run.measured("two-patch", "godunov_order"), 0.8),
                 le("interface offset (cells)", run.measured("two-patch", "godunov_interfaces"), 2.0)};
      c.seconds = run.seconds["two-patch"];
      c.budget = 30.0;
      emit(c);
    }

    const json patch_run{{"dim", 2}, {"cells", 256}, {"half_width", 4.0}, {"radius", 1.0},
                         {"tau", 1.0}, {"final_time", 3.0}, {"support_cells", 3.0}};
    run.get("vortex-patch", patch_run);
    {
      Criterion c{4, "field-solver patch test"};
      c.conds = {le("mass drift", run.measured("vortex-patch", "mass_drift"), 1e-9),
                 le("relative L1 error", run.measured("vortex-patch", "l1_error_final"), 0.05),
                 le("support / (1+t)^{1/2}(1+3h)", run.measured("vortex-patch", "support_radius"), 1.0)};
      c.seconds = run.seconds["vortex-patch"];
      c.budget = 300.0;
      emit(c);
    }

    const json gaussian_run{{"field_cells", 256}, {"field_half_width", 4.0}, {"field_final_time", 3.0},
                            {"gaussian_peak", 2.0}, {"gaussian_mass", 1.0},
                            {"radial_times", {1.0, 2.0, 5.0, 10.0, 20.0, 50.0}}};
    run.get("asymptotics", gaussian_run);
    {
      Criterion c{5, "universal bound"};
      c.conds = {le("patch max u(t+tau)", run.measured("vortex-patch", "universal_bound"), 1.05),
                 le("gaussian max u(t+tau)", run.measured("asymptotics", "universal_bound"), 1.05)};
      c.seconds = run.seconds["vortex-patch"] + run.seconds["asymptotics"];
      emit(c);
    }
    {
      Criterion c{6, "energy and entropy monotonicity"};
      c.conds = {le("patch energy increase", run.measured("vortex-patch", "energy_nonincreasing"), 1e-3),
                 le("patch entropy increase", run.measured("vortex-patch", "entropy_nonincreasing"), 1e-3),
                 le("gaussian energy increase", run.measured("asymptotics", "energy_nonincreasing"), 1e-3),
                 le("gaussian entropy increase", run.measured("asymptotics", "entropy_nonincreasing"), 1e-3),
                 le("patch energy identity", run.measured("vortex-patch", "energy_dissipation_identity"), 0.15),
                 le("gaussian energy identity", run.measured("asymptotics", "energy_dissipation_identity"), 0.15),
                 le("gaussian entropy identity", run.measured("asymptotics", "entropy_dissipation_identity"), 0.15)};
      c.seconds = run.seconds["vortex-patch"] + run.seconds["asymptotics"];
      emit(c);
    }
    {
      Criterion c{7, "second moment constant"};
      c.conds = {le("max relative change on [0,3]", run.measured("asymptotics", "second_moment_constant"), 0.01)};
      c.seconds = run.seconds["asymptotics"];
      c.note = "known failure; growth rate vs M^2/(2 pi) + 4 eps M off by " +
               fmt(run.measured("asymptotics", "second_moment_growth_rate"));
      emit(c);
    }
    {
      Criterion c{8, "non-comparison reproduction"};
      const auto tp = TwoPatchSpec::make(2, 1.0, 1.0, 2.0, 3.0);
      const PatchSpec small{2, 0.2 * std::sqrt(0.25), 4.0, {2.5, 0.0}};
      const double u1_0 = two_patch_state(tp, 2.5, 0.0).density;
      const double u2_0 = patch_density(small, Point{2.5, 0.0}, 0.0);
      const double u1_3 = two_patch_state(tp, 2.5, 3.0).density;
      const double u2_3 = patch_density(small, Point{2.5, 0.0}, 3.0);
      run.get("non-comparison", {{"cells", 256}, {"half_width", 7.0}, {"final_time", 3.0},
                                 {"small_center", {2.5, 0.0}}});
      c.conds = {le("|u1(x0,0) - 1/4|", std::abs(u1_0 - 0.25), 1e-15),
                 ge("u1(x0,0) - u2(x0,0)", u1_0 - u2_0, 0.0),
                 le("|u1(x0,3)|", std::abs(u1_3), 0.0),
                 le("|u2(x0,3) - 1/7|", std::abs(u2_3 - 1.0 / 7.0), 1e-15),
                 ge("solver u2 - u1 at x0, t=3", run.measured("non-comparison", "solver_reversal_T"), 0.05)};
      c.seconds = run.seconds["non-comparison"];
      c.budget = 300.0;
      emit(c);
    }
    {
      run.get("barenblatt-limit", {{"s_values", {0.6, 0.7, 0.8, 0.9, 0.95}}, {"radial_nodes", 512}});
      run.get("s-sweep", {{"s_list", {0.7, 0.85, 1.0}}});
      Criterion c{9, "Barenblatt and solver limit s -> 1"};
      c.conds = {lt("max step of closed-form L1 distance",
                    run.measured("barenblatt-limit", "l1_to_patch_strictly_decreasing"), 0.0),
                 le("max step of solver distance", run.measured("s-sweep", "distances_nonincreasing"), 0.0)};
      c.seconds = run.seconds["barenblatt-limit"] + run.seconds["s-sweep"];
      c.budget = 600.0;
      emit(c);
    }
    {
      run.get("wasserstein-oracle", {{"pairs", 20}, {"nodes", 64}, {"triples", 50}});
      Criterion c{10, "Wasserstein quantile vs LP oracle"};
      c.conds = {le("max relative difference (20 pairs)", run.measured("wasserstein-oracle", "quantile_vs_lp"), 0.01),
                 le("identity", run.measured("wasserstein-oracle", "metric_identity"), 1e-6),
                 le("symmetry", run.measured("wasserstein-oracle", "metric_symmetry"), 1e-6),
                 le("triangle excess", run.measured("wasserstein-oracle", "metric_triangle"), 1e-6)};
      c.seconds = run.seconds["wasserstein-oracle"];
      c.budget = 60.0;
      emit(c);
    }
    {
      Criterion c{11, "radial asymptotics"};
      c.conds = {lt("max step of sup error", run.measured("asymptotics", "radial_sup_error_decreasing"), 0.0),
                 le("sup error / M0 at t=50", run.measured("asymptotics", "radial_sup_error_final"), 0.1),
                 le("rescaled density L1", run.measured("asymptotics", "rescaled_density_l1"), 0.1)};
      c.seconds = run.seconds["asymptotics"];
      c.budget = 120.0;
      emit(c);
    }
    {
      Criterion c{12, "Benilan inequalities"};
      c.conds = {le("max M_t", run.measured("asymptotics", "benilan_upper"), 1e-3),
                 ge("min M_t + M/t", run.measured("asymptotics", "benilan_lower"), -1e-3),
                 le("largest-solution lower-bound gap", run.measured("asymptotics", "largest_solution_saturation"), 1e-12)};
      c.seconds = run.seconds["asymptotics"];
      emit(c);
    }
    {
      run.get("dirac-fundamental", {{"mass", 3.141592653589793}, {"check_times", {1.0, 3.0}}});
      Criterion c{13, "Dirac fundamental solution"};
      c.conds = {le("L1 to patch t=1", run.measured("dirac-fundamental", "l1_to_patch_t1"), 0.08),
                 le("L1 to patch t=3", run.measured("dirac-fundamental", "l1_to_patch_t3"), 0.08),
                 le("t |u|_inf / C at t=1", run.measured("dirac-fundamental", "linf_decay_t1"), 1.05),
                 le("t |u|_inf / C at t=3", run.measured("dirac-fundamental", "linf_decay_t3"), 1.05)};
      c.seconds = run.seconds["dirac-fundamental"];
      c.budget = 300.0;
      c.note = "C = " + fmt(load_constants().dirac_linf_constant);
      emit(c);
    }
  } catch (const std::exception& e) {
    std::printf("FAIL  acceptance aborted: %s\n", e.what());
    return 3;
  }

  int failed = 0, known = 0;
  for (const auto& c : out) {
    if (passed(c)) continue;
    if (kKnownFailures.count(c.id) && !strict) ++known;
    else ++failed;
  }
  std::printf("summary: %zu criteria, %d failed, %d known failures\n", out.size(), failed, known);
  return failed == 0 ? 0 : 1;
}
