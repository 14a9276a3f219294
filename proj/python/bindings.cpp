#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qpcnoise/analytic.hpp"
#include "qpcnoise/config.hpp"
#include "qpcnoise/errors.hpp"
#include "qpcnoise/observables.hpp"
#include "qpcnoise/scenarios.hpp"

namespace py = pybind11;
using namespace qpcnoise;

namespace {

py::dict diagnostics_dict(const RunDiagnostics& d) {
  py::dict out;
  out["max_trace_drift"] = d.max_trace_drift;
  out["max_hermiticity_deviation"] = d.max_hermiticity_deviation;
  out["max_leakage"] = d.max_leakage;
  out["min_eigenvalue"] = d.min_eigenvalue;
  return out;
}

SolverConfig solver_config(double dt, double t_final, int n_max, std::optional<int> n_min, int samples) {
  SolverConfig c;
  c.dt = dt;
  c.t_final = t_final;
  c.n_max = n_max;
  c.n_min = n_min;
  c.samples = samples;
  return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Count-resolved master equation for a charge qubit read out by a quantum point contact.";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

  py::class_<QubitParams>(m, "QubitParams")
      .def(py::init<>())
      .def(py::init([](double epsilon, double omega) { return QubitParams{epsilon, omega}; }), py::arg("epsilon"),
           py::arg("omega"))
      .def_readwrite("epsilon", &QubitParams::epsilon)
      .def_readwrite("omega", &QubitParams::omega);

  py::class_<DetectorParams>(m, "DetectorParams")
      .def(py::init([](double t_amp, double chi, double g_l, double g_r, double v, double temp) {
             return DetectorParams{t_amp, chi, g_l, g_r, v, temp};
           }),
           py::arg("t_amp") = 1.0, py::arg("chi") = 0.1, py::arg("g_l") = 2.5, py::arg("g_r") = 2.5, py::arg("v") = 2.0,
           py::arg("temp") = 1.0)
      .def_readwrite("t_amp", &DetectorParams::t_amp)
      .def_readwrite("chi", &DetectorParams::chi)
      .def_readwrite("g_l", &DetectorParams::g_l)
      .def_readwrite("g_r", &DetectorParams::g_r)
      .def_readwrite("v", &DetectorParams::v)
      .def_readwrite("temp", &DetectorParams::temp)
      .def_property_readonly("eta", &DetectorParams::eta);

  py::enum_<FilterMode>(m, "FilterMode").value("FULL", FilterMode::Full).value("FROZEN", FilterMode::Frozen);

  py::class_<Model>(m, "Model")
      .def(py::init([](const QubitParams& q, const DetectorParams& d, FilterMode mode) { return make_model(q, d, mode); }),
           py::arg("qubit"), py::arg("detector"), py::arg("mode") = FilterMode::Full)
      .def_property_readonly("delta", [](const Model& self) { return self.basis.delta; })
      .def_property_readonly("cos_theta", [](const Model& self) { return self.basis.cos_theta; })
      .def_property_readonly("hamiltonian", [](const Model& self) { return Matrix2c(self.hamiltonian); })
      .def_property_readonly("coupling", [](const Model& self) { return Matrix2c(self.q); })
      .def_property_readonly("q_minus", [](const Model& self) { return Matrix2c(self.ops.q_minus); })
      .def_property_readonly("q_plus", [](const Model& self) { return Matrix2c(self.ops.q_plus); })
      .def("liouvillian", [](const Model& self) { return liouvillian_matrix(self); })
      .def("unconditional_rhs", [](const Model& self, const Matrix2c& rho) { return unconditional_rhs(rho, self); })
      .def("steady_state", [](const Model& self, double tol) { return steady_state(self, tol); }, py::arg("tol") = 1e-10)
      .def("current", [](const Model& self, const Matrix2c& rho) { return current(rho, self); });

  m.def(
      "spectrum",
      [](const Model& model, const std::vector<double>& omegas, std::optional<Matrix2c> rho0, double dt,
         double t_final) {
        const auto s = macdonald_spectrum(model, solver_config(dt, t_final, 0, std::nullopt, 100), omegas, rho0);
        py::dict out;
        out["omega"] = s.spectrum.omegas;
        out["s"] = s.spectrum.values;
        out["i_bar"] = s.i_bar;
        out["g_inf"] = s.g_inf;
        out["dt"] = s.grid.dt;
        out["t_final"] = s.grid.t_final();
        out["diagnostics"] = diagnostics_dict(s.diagnostics);
        return out;
      },
      py::arg("model"), py::arg("omegas"), py::arg("rho0") = py::none(), py::arg("dt") = 0.0, py::arg("t_final") = 0.0,
      "Numeric noise spectrum S(omega) from MacDonald's formula.");

  m.def(
      "counting_distribution",
      [](const Model& model, const Matrix2c& rho0, double t_final, double dt, int n_max, std::optional<int> n_min) {
        const auto run = evolve_conditional(rho0, solver_config(dt, t_final, n_max, n_min, 1), model);
        const auto& last = run.states.back();
        std::vector<int> n;
        for (int k = last.n_min; k <= last.n_max(); ++k) n.push_back(k);
        py::dict out;
        out["n"] = n;
        out["p"] = last.distribution();
        out["t"] = run.times.back();
        out["diagnostics"] = diagnostics_dict(run.diagnostics);
        return out;
      },
      py::arg("model"), py::arg("rho0"), py::arg("t_final"), py::arg("dt") = 0.0, py::arg("n_max") = 0,
      py::arg("n_min") = py::none(), "P(n, t_final) from the count-resolved hierarchy.");

  m.def(
      "analytic_current",
      [](const DetectorParams& d) { return stationary_current_symmetric(d, diagonalize({0.0, 0.5})); },
      py::arg("detector"), "Stationary current of the symmetric qubit (delta = 1).");
  m.def(
      "analytic_spectrum",
      [](const DetectorParams& d, const std::vector<double>& omegas) {
        const auto s = analytic_spectrum(d, diagonalize({0.0, 0.5}), omegas);
        py::dict out;
        out["omega"] = s.omegas;
        out["s"] = s.values;
        out["s0"] = s.components->s0;
        out["s1"] = s.components->s1;
        out["s2"] = s.components->s2;
        return out;
      },
      py::arg("detector"), py::arg("omegas"), "Closed-form spectrum of the symmetric qubit (delta = 1).");
  m.def(
      "analytic_peak_to_pedestal",
      [](const DetectorParams& d) { return analytic_peak_to_pedestal(d, diagonalize({0.0, 0.5})); },
      py::arg("detector"));
  m.def(
      "s1_prefactor", [](const DetectorParams& d) { return s1_prefactor(d, diagonalize({0.0, 0.5})); },
      py::arg("detector"));

  m.def(
      "run_config",
      [](const std::string& text, int threads) {
        const RunConfig cfg = build_config(parse_key_values(text));
        const ScenarioResult r = run_scenario(cfg, threads);
        py::dict out;
        out["columns"] = r.columns;
        out["rows"] = r.rows;
        out["notes"] = r.notes;
        out["warnings"] = r.warnings;
        out["header"] = render_header(cfg, r);
        return out;
      },
      py::arg("text"), py::arg("threads") = 1, "Run a scenario given as config text; returns columns and string rows.");

  m.attr("__version__") = version();
}
