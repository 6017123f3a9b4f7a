#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mfield/burgers.hpp"
#include "mfield/closed_forms.hpp"
#include "mfield/diagnostics.hpp"
#include "mfield/errors.hpp"
#include "mfield/field_ops.hpp"
#include "mfield/potential.hpp"
#include "mfield/scenarios.hpp"
#include "mfield/solver.hpp"
#include "mfield/wasserstein.hpp"

namespace py = pybind11;
using namespace mfield;
using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

namespace {

std::vector<double> to_vector(const Array& a) { return {a.data(), a.data() + a.size()}; }

Array to_array(const std::vector<double>& v) {
  Array out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

Array field_array(const DensityField& u) {
  const auto& g = u.grid();
  std::vector<py::ssize_t> shape(static_cast<std::size_t>(g.dim()), g.cells());
  Array out(shape);
  std::copy(u.values().begin(), u.values().end(), out.mutable_data());
  return out;
}

DensityField field_from(const Array& a, double half_width) {
  if (a.ndim() != 1 && a.ndim() != 2) throw DomainError("field must be 1-D or 2-D");
  if (a.ndim() == 2 && a.shape(0) != a.shape(1)) throw DomainError("field must be square");
  const CartesianGrid g(static_cast<int>(a.ndim()), half_width, static_cast<int>(a.shape(0)));
  return DensityField(g, to_vector(a));
}

template <class F>
Array map(const Array& r, F f) {
  Array out(r.request().shape);
  const double* in = r.data();
  double* o = out.mutable_data();
  for (py::ssize_t i = 0; i < r.size(); ++i) o[i] = f(in[i]);
  return out;
}

std::vector<double> mass_values(const Array& M) { return to_vector(M); }

MassFunction mass_function(const Array& M, int dim, double r_max) {
  return MassFunction(RadialGrid(dim, static_cast<int>(M.size()), r_max), mass_values(M));
}

InitialSpec initial_from(const py::dict& d) {
  const auto kind = d.contains("kind") ? d["kind"].cast<std::string>() : std::string("patch");
  const int dim = d.contains("dim") ? d["dim"].cast<int>() : 2;
  if (kind == "patch") {
    PatchSpec ps;
    ps.dim = dim;
    if (d.contains("radius")) ps.radius = d["radius"].cast<double>();
    if (d.contains("tau")) ps.tau = d["tau"].cast<double>();
    return PatchInitial{ps, 0.0};
  }
  if (kind == "gaussian") {
    GaussianSpec gs;
    gs.dim = dim;
    if (d.contains("peak")) gs.peak = d["peak"].cast<double>();
    if (d.contains("mass")) gs.mass = d["mass"].cast<double>();
    return gs;
  }
  if (kind == "two-patch") {
    return TwoPatchInitial{TwoPatchSpec::make(dim, d["c1"].cast<double>(), d["R1"].cast<double>(),
                                              d["R2"].cast<double>(), d["R3"].cast<double>()),
                           0.0};
  }
  if (kind == "dirac") {
    DiracInitial di;
    di.dim = dim;
    di.mass = d["mass"].cast<double>();
    return di;
  }
  throw ConfigError("unsupported initial kind '" + kind + "'");
}

py::object json_to_py(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

nlohmann::json py_to_json(const py::object& o) {
  return nlohmann::json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Solvers and diagnostics for u_t = div(u grad p), p = (-Delta)^{-s} u";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  m.def("patch_density", [](const Array& r, double t, double radius, double tau, int dim) {
    PatchSpec ps{dim, radius, tau, {0.0, 0.0}};
    return map(r, [&](double x) { return patch_density(ps, x, t); });
  }, py::arg("r"), py::arg("t"), py::arg("radius") = 1.0, py::arg("tau") = 1.0, py::arg("dim") = 2);

  m.def("patch_mass", [](double r, double t, double radius, double tau, int dim) {
    const auto s = patch_mass(PatchSpec{dim, radius, tau, {0.0, 0.0}}, r, t);
    return py::make_tuple(s.M, s.M_t, s.M_sigma);
  }, py::arg("r"), py::arg("t"), py::arg("radius") = 1.0, py::arg("tau") = 1.0, py::arg("dim") = 2,
     "(M, M_t, M_sigma) of the patch mass function");

  m.def("largest_solution", [](double r, double t, int dim) {
    const auto s = largest_solution(r, t, dim);
    return py::make_tuple(s.density, s.mass.M, s.mass.M_t, s.mass.M_sigma);
  }, py::arg("r"), py::arg("t"), py::arg("dim") = 2);

  m.def("two_patch_state", [](double r, double t, double c1, double R1, double R2, double R3, int dim) {
    const auto st = two_patch_state(TwoPatchSpec::make(dim, c1, R1, R2, R3), r, t);
    return py::make_tuple(st.density, st.mass, st.interfaces);
  }, py::arg("r"), py::arg("t"), py::arg("c1") = 1.0, py::arg("R1") = 1.0, py::arg("R2") = 2.0,
     py::arg("R3") = 3.0, py::arg("dim") = 2);

  m.def("barenblatt_density", [](const Array& r, double t, double s, double mass, double radius, int dim) {
    const auto b = barenblatt_matched(dim, s, mass, radius);
    return map(r, [&](double x) { return barenblatt_density(b, x, t); });
  }, py::arg("r"), py::arg("t"), py::arg("s"), py::arg("mass"), py::arg("radius"), py::arg("dim") = 2,
     "profile of the given mass whose support at t = 1 has the given radius");

  py::class_<CharacteristicSolution>(m, "CharacteristicSolution")
      .def(py::init([](int dim, const std::vector<std::array<double, 2>>& knots) {
             return CharacteristicSolution(dim, knots);
           }), py::arg("dim"), py::arg("knots"))
      .def_static("dirac", &CharacteristicSolution::dirac, py::arg("dim"), py::arg("mass"))
      .def_static("two_patch", [](double c1, double R1, double R2, double R3, int dim) {
             const auto spec = TwoPatchSpec::make(dim, c1, R1, R2, R3);
             return CharacteristicSolution(dim, spec.initial_mass_knots());
           }, py::arg("c1") = 1.0, py::arg("R1") = 1.0, py::arg("R2") = 2.0, py::arg("R3") = 3.0,
           py::arg("dim") = 2)
      .def("mass", [](const CharacteristicSolution& c, const Array& sigma, double t) {
             return map(sigma, [&](double s) { return c.mass(s, t); });
           }, py::arg("sigma"), py::arg("t"))
      .def("density", [](const CharacteristicSolution& c, const Array& sigma, double t) {
             return map(sigma, [&](double s) { return c.density(s, t); });
           }, py::arg("sigma"), py::arg("t"))
      .def("knot_image", &CharacteristicSolution::knot_image, py::arg("k"), py::arg("t"))
      .def_property_readonly("total", &CharacteristicSolution::total)
      .def_property_readonly("dim", &CharacteristicSolution::dim);

  m.def("step_finite_volume", [](const Array& M, double r_max, double dt, int dim, double nu) {
    return to_array(step_finite_volume(mass_function(M, dim, r_max), dt, nu).values);
  }, py::arg("M"), py::arg("r_max"), py::arg("dt"), py::arg("dim") = 2, py::arg("nu") = 0.9,
     "one Godunov step; M holds node values on a grid uniform in sigma = r^n/n");

  m.def("density_from_mass", [](const Array& M, double r_max, int dim) {
    return to_array(density_from_mass(mass_function(M, dim, r_max)).values);
  }, py::arg("M"), py::arg("r_max"), py::arg("dim") = 2);

  m.def("wasserstein_radial", [](const Array& a, const Array& b, double r_max, double p, int dim) {
    return wasserstein_radial(mass_function(a, dim, r_max), mass_function(b, dim, r_max), p);
  }, py::arg("a"), py::arg("b"), py::arg("r_max"), py::arg("p") = 2.0, py::arg("dim") = 2);

  m.def("patch_w2_closed_form", &patch_w2_closed_form, py::arg("dim"), py::arg("mass"),
        py::arg("tau"), py::arg("t1"), py::arg("t2"));

  m.def("velocity", [](const Array& u, double half_width, double s) {
    const auto v = velocity(field_from(u, half_width), Exponent(s));
    py::list out;
    for (const auto& c : v.components) {
      Array a(u.request().shape);
      std::copy(c.begin(), c.end(), a.mutable_data());
      out.append(a);
    }
    return out;
  }, py::arg("u"), py::arg("half_width"), py::arg("s") = 1.0);

  m.def("energy", [](const Array& u, double half_width, double s, std::optional<Array> ref) {
    std::optional<DensityField> r;
    if (ref) r = field_from(*ref, half_width);
    return energy(field_from(u, half_width), Exponent(s), r);
  }, py::arg("u"), py::arg("half_width"), py::arg("s") = 1.0, py::arg("reference") = py::none());

  m.def("total_mass", [](const Array& u, double half_width) {
    return total_mass(field_from(u, half_width));
  }, py::arg("u"), py::arg("half_width"));

  m.def("sample_patch", [](int cells, double half_width, double t, double radius, double tau, int dim) {
    const CartesianGrid g(dim, half_width, cells);
    PatchSpec ps{dim, radius, tau, {0.0, 0.0}};
    return field_array(sample_cell_average(g, [&](const Point& x) { return patch_density(ps, x, t); }));
  }, py::arg("cells"), py::arg("half_width"), py::arg("t"), py::arg("radius") = 1.0,
     py::arg("tau") = 1.0, py::arg("dim") = 2, "cell averages of the patch on the grid");

  m.def("run_solver", [](const py::dict& initial, int cells, double half_width, double final_time,
                         const std::vector<double>& output_times, double s, double viscosity,
                         double cfl, const std::string& scheme, const std::string& integrator) {
    SolverConfig cfg;
    const auto init = initial_from(initial);
    cfg.grid = CartesianGrid(initial_dim(init), half_width, cells);
    cfg.initial = init;
    cfg.final_time = final_time;
    cfg.output_times = output_times;
    cfg.s = s;
    cfg.viscosity = viscosity;
    cfg.cfl = cfl;
    cfg.scheme = transport_scheme_from(scheme);
    cfg.integrator = time_integrator_from(integrator);
    Trajectory tr;
    {
      py::gil_scoped_release release;
      tr = run(cfg);
    }
    py::list times, fields;
    for (const auto& snap : tr.snapshots) {
      times.append(snap.t);
      fields.append(field_array(snap.u));
    }
    py::dict out;
    out["times"] = times;
    out["fields"] = fields;
    out["tau"] = tr.tau;
    out["summary"] = json_to_py(run_summary(cfg, tr));
    return out;
  }, py::arg("initial"), py::arg("cells") = 128, py::arg("half_width") = 4.0,
     py::arg("final_time") = 1.0, py::arg("output_times") = std::vector<double>{},
     py::arg("s") = 1.0, py::arg("viscosity") = 0.0, py::arg("cfl") = 0.2,
     py::arg("scheme") = "muscl", py::arg("integrator") = "ssp-rk2");

  m.def("list_scenarios", [] {
    py::list out;
    for (const auto& info : scenario_registry()) {
      py::dict d;
      d["name"] = info.name;
      d["section"] = info.section;
      d["anchor"] = info.anchor;
      d["summary"] = info.summary;
      d["defaults"] = json_to_py(info.defaults);
      out.append(d);
    }
    return out;
  });

  m.def("run_scenario", [](const std::string& name, const py::object& params, std::uint64_t seed,
                           int jobs, const std::string& out_dir) {
    ScenarioSpec spec;
    spec.name = name;
    spec.overrides = params.is_none() ? nlohmann::json::object() : py_to_json(params);
    spec.seed = seed;
    spec.jobs = jobs;
    spec.write_files = !out_dir.empty();
    if (!out_dir.empty()) spec.out_dir = out_dir;
    ScenarioReport rep;
    {
      py::gil_scoped_release release;
      rep = run_scenario(spec);
    }
    return json_to_py(report_to_json(rep));
  }, py::arg("name"), py::arg("params") = py::none(), py::arg("seed") = 1, py::arg("jobs") = 1,
     py::arg("out_dir") = "", "runs a scenario; files are written only when out_dir is given");

  m.def("validate_config", [](const std::string& path) { return validate_config(path); },
        py::arg("path"));
}
