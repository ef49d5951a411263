#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "rds/commands.hpp"
#include "rds/diagnostics.hpp"
#include "rds/errors.hpp"
#include "rds/grid.hpp"
#include "rds/kinetics.hpp"
#include "rds/regimes.hpp"
#include "rds/scenario.hpp"
#include "rds/stepper.hpp"
#include "rds/studies.hpp"

namespace py = pybind11;
using namespace rds;

namespace {

ScenarioConfig scenario_from_text(const std::string& text, const std::string& base_dir) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(e.what());
  }
  return parse_scenario(j, base_dir);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Conservative reaction-diffusion solver for alpha U + beta V <=> gamma W";

  py::register_exception<ContractError>(m, "ContractError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<InfeasibleInvariants>(m, "InfeasibleInvariants", PyExc_ValueError);
  py::register_exception<DivisionDomainError>(m, "DivisionDomainError", PyExc_ZeroDivisionError);
  py::register_exception<OracleStepTooLarge>(m, "OracleStepTooLarge", PyExc_RuntimeError);

  py::enum_<Boundary>(m, "Boundary")
      .value("Neumann", Boundary::Neumann)
      .value("Dirichlet", Boundary::Dirichlet);

  py::class_<Grid>(m, "Grid")
      .def(py::init<int, int, double, Boundary>(), py::arg("dimension"),
           py::arg("cells_per_axis"), py::arg("length") = 1.0,
           py::arg("bc") = Boundary::Neumann)
      .def_property_readonly("dimension", &Grid::dimension)
      .def_property_readonly("cells_per_axis", &Grid::cells_per_axis)
      .def_property_readonly("length", &Grid::length)
      .def_property_readonly("spacing", &Grid::spacing)
      .def_property_readonly("bc", &Grid::bc)
      .def_property_readonly("cell_count", &Grid::cell_count)
      .def("center", &Grid::center);

  py::class_<Params>(m, "Params")
      .def(py::init([](double d1, double d2, double d3, double alpha, double beta, double gamma,
                       int dim) {
             Params p{d1, d2, d3, alpha, beta, gamma, dim};
             p.validate();
             return p;
           }),
           py::arg("d1"), py::arg("d2"), py::arg("d3"), py::arg("alpha"), py::arg("beta"),
           py::arg("gamma"), py::arg("dim") = 1)
      .def_readwrite("d1", &Params::d1)
      .def_readwrite("d2", &Params::d2)
      .def_readwrite("d3", &Params::d3)
      .def_readwrite("alpha", &Params::alpha)
      .def_readwrite("beta", &Params::beta)
      .def_readwrite("gamma", &Params::gamma)
      .def_readwrite("dim", &Params::dim);

  m.def("laplacian_apply",
        [](const std::vector<double>& f, const Grid& g, double d) { return laplacian_apply(f, g, d); },
        py::arg("f"), py::arg("grid"), py::arg("d"));
  m.def("heat_step_implicit",
        [](const std::vector<double>& f, const Grid& g, double d, double dt) {
          return heat_step_implicit(f, g, d, dt);
        },
        py::arg("f"), py::arg("grid"), py::arg("d"), py::arg("dt"));
  m.def("heat_semigroup",
        [](const std::vector<double>& f, const Grid& g, double d, double t, int substeps) {
          return heat_semigroup(f, g, d, t, substeps);
        },
        py::arg("f"), py::arg("grid"), py::arg("d"), py::arg("t"), py::arg("substeps"));
  m.def("smoothing_ratio",
        [](const std::vector<double>& y, const Grid& g, double d, double t, double p, double q,
           int substeps) { return smoothing_ratio(y, g, d, t, p, q, substeps); },
        py::arg("y"), py::arg("grid"), py::arg("d"), py::arg("t"), py::arg("p"), py::arg("q"),
        py::arg("substeps") = kDefaultSemigroupSubsteps);
  m.def("norm_p",
        [](const std::vector<double>& f, const Grid& g, double p) { return norm_p(f, g, p); },
        py::arg("f"), py::arg("grid"), py::arg("p"));

  m.def("reaction_rate", &reaction_rate, py::arg("u"), py::arg("v"), py::arg("w"),
        py::arg("params"));
  m.def("equilibrium",
        [](const Params& p, double m1, double m2) {
          const Equilibrium e = equilibrium(p, m1, m2);
          return py::make_tuple(e.u_bar, e.v_bar, e.w_bar);
        },
        py::arg("params"), py::arg("m1"), py::arg("m2"));
  m.def("ode_oracle",
        [](double u0, double v0, double w0, const Params& p, double T, double dt) {
          const Concentrations c = ode_oracle({u0, v0, w0}, p, T, dt);
          return py::make_tuple(c.u, c.v, c.w);
        },
        py::arg("u0"), py::arg("v0"), py::arg("w0"), py::arg("params"), py::arg("T"),
        py::arg("dt"));

  m.def("classify",
        [](const Params& p) {
          const RegimeVerdict v = classify(p);
          py::dict out;
          out["verdict"] = std::string(to_string(v.tag));
          out["rationale"] = v.rationale;
          out["gamma_star"] = v.gamma_star;
          return out;
        },
        py::arg("params"));

  m.def("run_scenario",
        [](const std::string& config_json, const std::string& base_dir) {
          const ScenarioConfig cfg = scenario_from_text(config_json, base_dir);
          RunResult r;
          {
            py::gil_scoped_release release;
            r = run_scenario(cfg);
          }
          py::list records;
          for (const auto& rec : r.records) {
            py::dict d;
            d["t"] = rec.t;
            d["dt"] = rec.dt;
            d["linf_u"] = rec.linf_u;
            d["linf_v"] = rec.linf_v;
            d["linf_w"] = rec.linf_w;
            d["l1_mass"] = rec.l1_mass;
            d["mass_drift"] = rec.mass_drift;
            d["uv_drift"] = rec.uv_drift;
            d["min_uvw"] = rec.min_uvw;
            records.append(d);
          }
          py::dict out;
          out["status"] = std::string(to_string(r.status));
          out["t_stop"] = r.t_stop;
          out["records"] = records;
          out["u"] = r.final_state.u;
          out["v"] = r.final_state.v;
          out["w"] = r.final_state.w;
          out["sup_linf_total"] = r.extrema.sup_linf_total;
          out["min_uvw"] = r.extrema.min_uvw;
          return out;
        },
        py::arg("config_json"), py::arg("base_dir") = "",
        "Run a scenario given as JSON text; returns status, records and final fields.");

  m.def("normalize_config",
        [](const std::string& config_json) {
          return to_json(scenario_from_text(config_json, "")).dump();
        },
        py::arg("config_json"));

  // Subcommands with their textual output captured.
  const auto wrap = [](int (*fn)(const std::filesystem::path&, CommandIo)) {
    return [fn](const std::filesystem::path& path, bool quiet) {
      std::ostringstream out, err;
      int code;
      {
        py::gil_scoped_release release;
        code = fn(path, CommandIo{out, err, quiet});
      }
      return py::make_tuple(code, out.str(), err.str());
    };
  };
  m.def("cmd_run", wrap(cmd_run), py::arg("config"), py::arg("quiet") = false);
  m.def("cmd_classify", wrap(cmd_classify), py::arg("config"), py::arg("quiet") = false);
  m.def("cmd_verify_lemmas", wrap(cmd_verify_lemmas), py::arg("config"), py::arg("quiet") = false);
  m.def("cmd_sweep", wrap(cmd_sweep), py::arg("config"), py::arg("quiet") = false);
  m.def("cmd_convergence", wrap(cmd_convergence), py::arg("config"), py::arg("quiet") = false);
}
