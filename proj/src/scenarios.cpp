#include "qpcnoise/scenarios.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "qpcnoise/analytic.hpp"
#include "qpcnoise/errors.hpp"
#include "qpcnoise/observables.hpp"

#ifndef QPCNOISE_VERSION
#define QPCNOISE_VERSION "dev"
#endif

namespace qpcnoise {

namespace {

// Evaluates fn(i) for i in [0, n) on up to `threads` workers; results keep index order.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t n, int threads, Fn fn) {
  std::vector<T> out(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t pool = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), 1, std::max<std::size_t>(n, 1));
  if (pool == 1) {
    worker();
  } else {
    std::vector<std::jthread> workers;
    for (std::size_t t = 0; t < pool; ++t) workers.emplace_back(worker);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::vector<double> omegas_of(const RunConfig& cfg) {
  return uniform_grid(cfg.omega_grid.min, cfg.omega_grid.max, cfg.omega_grid.count);
}

bool has_closed_form(const Model& m) { return m.basis.symmetric() && m.detector.v >= 0.0; }

void note_diagnostics(ScenarioResult& r, const RunDiagnostics& d, const std::string& label) {
  r.notes.push_back(label + ".max_trace_drift = " + format_number(d.max_trace_drift));
  r.notes.push_back(label + ".max_hermiticity_deviation = " + format_number(d.max_hermiticity_deviation));
  r.notes.push_back(label + ".min_eigenvalue = " + format_number(d.min_eigenvalue));
  if (d.positivity_violated()) {
    r.warnings.push_back(label + ": qubit state eigenvalue dropped to " + format_number(d.min_eigenvalue) +
                         " (below -1e-8); the generator is not of Lindblad form at this coupling");
  }
}

std::optional<DensityMatrix> spectrum_start(const RunConfig& cfg, const Model& m) {
  if (cfg.initial == InitialState::Steady) return std::nullopt;
  return initial_density(cfg.initial, m);
}

ScenarioResult run_spectrum(const RunConfig& cfg) {
  const Model m = make_model(cfg);
  const auto omegas = omegas_of(cfg);
  const NumericSpectrum num = macdonald_spectrum(m, cfg.solver, omegas, spectrum_start(cfg, m));

  ScenarioResult r;
  r.columns = {"omega", "s_numeric", "s0", "s1", "s2", "s_analytic_total"};
  std::optional<Spectrum> ana;
  if (has_closed_form(m)) ana = analytic_spectrum(m.detector, m.basis, omegas);
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    std::vector<std::string> row = {format_number(omegas[i]), format_number(num.spectrum.values[i])};
    if (ana) {
      const auto& c = *ana->components;
      for (double x : {c.s0[i], c.s1[i], c.s2[i], ana->values[i]}) row.push_back(format_number(x));
    } else {
      row.insert(row.end(), 4, "");
    }
    r.rows.push_back(std::move(row));
  }

  r.notes.push_back("i_bar = " + format_number(num.i_bar));
  r.notes.push_back("g_inf = " + format_number(num.g_inf));
  r.notes.push_back("grid.dt = " + format_number(num.grid.dt));
  r.notes.push_back("grid.t_final = " + format_number(num.grid.t_final()));
  try {
    r.notes.push_back("peak_to_pedestal.plateau = " + format_number(peak_to_pedestal(num.spectrum, m.basis.delta)));
    if (ana) {
      r.notes.push_back("peak_to_pedestal.s0 = " +
                        format_number(peak_to_pedestal(num.spectrum, m.basis.delta, ana->components->s0.front())));
    }
  } catch (const ConfigError&) {
    // grid does not reach omega = delta
  }
  note_diagnostics(r, num.diagnostics, "auxiliary");
  return r;
}

ScenarioResult run_sweep(const RunConfig& cfg, int threads) {
  const SweepAxis& axis = *cfg.sweep;
  const auto spectra = parallel_map<NumericSpectrum>(axis.values.size(), threads, [&](std::size_t i) {
    const RunConfig point = with_value(cfg, axis.key, axis.values[i]);
    const Model m = make_model(point);
    const auto omegas = omegas_of(point);
    return macdonald_spectrum(m, point.solver, omegas, spectrum_start(point, m));
  });

  ScenarioResult r;
  r.columns = {"sweep_value", "omega", "s_numeric"};
  r.notes.push_back("sweep.axis = " + axis.key);
  for (std::size_t i = 0; i < spectra.size(); ++i) {
    const Spectrum& s = spectra[i].spectrum;
    for (std::size_t k = 0; k < s.omegas.size(); ++k) {
      r.rows.push_back({format_number(axis.values[i]), format_number(s.omegas[k]), format_number(s.values[k])});
    }
    note_diagnostics(r, spectra[i].diagnostics, "auxiliary[" + format_number(axis.values[i]) + "]");
  }
  return r;
}

ScenarioResult run_pnt(const RunConfig& cfg) {
  const Model m = make_model(cfg);
  const HierarchyRun run = evolve_conditional(initial_density(cfg.initial, m), cfg.solver, m);

  ScenarioResult r;
  r.columns = {"t", "n", "p"};
  for (std::size_t s = 0; s < run.states.size(); ++s) {
    const auto& h = run.states[s];
    const auto p = h.distribution();
    for (std::size_t k = 0; k < p.size(); ++k) {
      r.rows.push_back({format_number(run.times[s]), std::to_string(h.n_min + static_cast<int>(k)), format_number(p[k])});
    }
  }
  const auto& last = run.states.back();
  r.notes.push_back("window = [" + std::to_string(last.n_min) + ", " + std::to_string(last.n_max()) + "]");
  r.notes.push_back("grid.dt = " + format_number(run.grid.dt));
  r.notes.push_back("hierarchy.max_leakage = " + format_number(run.diagnostics.max_leakage));
  note_diagnostics(r, run.diagnostics, "hierarchy");
  return r;
}

ScenarioResult run_current(const RunConfig& cfg, int threads) {
  std::vector<RunConfig> points;
  if (cfg.sweep) {
    for (double v : cfg.sweep->values) points.push_back(with_value(cfg, cfg.sweep->key, v));
  } else {
    points.push_back(cfg);
  }
  ScenarioResult r;
  r.columns = {"epsilon", "omega", "t_amp", "chi", "g_l", "g_r", "v", "temp", "i_numeric", "i_analytic"};
  r.rows = parallel_map<std::vector<std::string>>(points.size(), threads, [&](std::size_t i) {
    const RunConfig& p = points[i];
    const Model m = make_model(p);
    const double i_num = current(initial_density(p.initial, m), m);
    std::vector<std::string> row;
    for (double x : {p.qubit.epsilon, p.qubit.omega, p.detector.t_amp, p.detector.chi, p.detector.g_l, p.detector.g_r,
                     p.detector.v, p.detector.temp, i_num}) {
      row.push_back(format_number(x));
    }
    row.push_back(has_closed_form(m) ? format_number(stationary_current_symmetric(m.detector, m.basis)) : "");
    return row;
  });
  return r;
}

ScenarioResult run_relax(const RunConfig& cfg) {
  const Model m = make_model(cfg);
  const RelaxationRun run = evolve_unconditional(initial_density(cfg.initial, m), cfg.solver, m);
  ScenarioResult r;
  r.columns = {"t", "p_excited", "coherence_magnitude"};
  for (std::size_t s = 0; s < run.rho.size(); ++s) {
    const auto& rho = run.rho[s];
    r.rows.push_back({format_number(run.times[s]), format_number(rho(0, 0).real()), format_number(std::abs(rho(0, 1)))});
  }
  r.notes.push_back("grid.dt = " + format_number(run.grid.dt));
  note_diagnostics(r, run.diagnostics, "relax");
  return r;
}

}  // namespace

std::string ScenarioResult::body() const {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(columns);
  for (const auto& row : rows) line(row);
  return out;
}

Model make_model(const RunConfig& cfg) { return make_model(cfg.qubit, cfg.detector, cfg.filter); }

ScenarioResult run_scenario(const RunConfig& cfg, int threads) {
  switch (cfg.scenario) {
    case Scenario::Spectrum: return run_spectrum(cfg);
    case Scenario::Sweep: return run_sweep(cfg, threads);
    case Scenario::Pnt: return run_pnt(cfg);
    case Scenario::Current: return run_current(cfg, threads);
    case Scenario::Relax: return run_relax(cfg);
  }
  throw ConfigError("unknown scenario");
}

std::string render_header(const RunConfig& cfg, const ScenarioResult& result) {
  std::ostringstream h;
  h << "# qpcnoise " << version() << '\n';
  for (const auto& [key, value] : cfg.resolved) h << "# " << key << " = " << value << '\n';
  const EigenBasis b = diagonalize(cfg.qubit);
  h << "# derived.epsilon = " << format_number(cfg.qubit.epsilon) << '\n';
  h << "# derived.omega = " << format_number(cfg.qubit.omega) << '\n';
  h << "# derived.delta = " << format_number(b.delta) << '\n';
  h << "# derived.cos_theta = " << format_number(b.cos_theta) << '\n';
  h << "# derived.eta = " << format_number(cfg.detector.eta()) << '\n';
  for (const auto& n : result.notes) h << "# " << n << '\n';
  for (const auto& w : result.warnings) h << "# warning: " << w << '\n';
  return h.str();
}

std::string run(const RunConfig& cfg, const std::string& out_dir, int threads, ScenarioResult* result) {
  ScenarioResult r = run_scenario(cfg, threads);
  std::filesystem::path path = cfg.output_path;
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    path = std::filesystem::path(out_dir) / path;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write output file '" + path.string() + "'");
  out << render_header(cfg, r) << r.body();
  if (result) *result = std::move(r);
  return path.string();
}

std::string version() { return QPCNOISE_VERSION; }

}  // namespace qpcnoise
