#include "qpcnoise/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qpcnoise/analytic.hpp"
#include "qpcnoise/errors.hpp"
#include "qpcnoise/observables.hpp"

namespace qpcnoise {

namespace {

constexpr double kLeakageBound = 1e-6;

double max_kernel(const Model& m, Sign sign) {
  double k = 0.0;
  for (double lambda : {0.0, m.basis.delta, -m.basis.delta}) {
    k = std::max(k, c_tilde(sign, lambda, m.detector));
  }
  return k;
}

// Bound on the rate of jumps in one direction (c_tilde already carries eta).
double jump_rate_bound(const Model& m, Sign sign) {
  const double qmax = m.coupling.max_abs_eigenvalue();
  return qmax * qmax * max_kernel(m, sign);
}

// Sample indices 0 = k_0 < ... < k_S = steps, evenly spread.
std::vector<long> sample_indices(long steps, int samples) {
  const long s = std::clamp<long>(samples, 1, steps);
  std::vector<long> idx;
  idx.reserve(static_cast<std::size_t>(s) + 1);
  for (long i = 0; i <= s; ++i) {
    const long k = static_cast<long>(std::llround(static_cast<double>(i) * static_cast<double>(steps) / s));
    if (idx.empty() || k != idx.back()) idx.push_back(k);
  }
  return idx;
}

void axpy(ConditionalHierarchy& out, const ConditionalHierarchy& x, double a, const ConditionalHierarchy& k) {
  out.n_min = x.n_min;
  out.entries.resize(x.entries.size());
  for (std::size_t i = 0; i < x.entries.size(); ++i) out.entries[i] = x.entries[i] + a * k.entries[i];
}

double edge_leakage(const ConditionalHierarchy& h) {
  return std::max(std::abs(h.entries.front().trace().real()), std::abs(h.entries.back().trace().real()));
}

void observe(const ConditionalHierarchy& h, double initial_trace, RunDiagnostics& d) {
  d.max_trace_drift = std::max(d.max_trace_drift, std::abs(h.total_trace() - initial_trace));
  d.max_hermiticity_deviation = std::max(d.max_hermiticity_deviation, h.hermiticity_deviation());
  for (const auto& e : h.entries) {
    const double t = e.trace().real();
    d.min_entry_trace = std::min(d.min_entry_trace, t);
    d.max_entry_trace = std::max(d.max_entry_trace, t);
  }
  d.min_eigenvalue = std::min(d.min_eigenvalue, min_eigenvalue(h.reduced()));
}

void observe_state(const DensityMatrix& rho, double initial_trace, RunDiagnostics& d) {
  d.max_trace_drift = std::max(d.max_trace_drift, std::abs(rho.trace().real() - initial_trace));
  d.max_hermiticity_deviation = std::max(d.max_hermiticity_deviation, (rho - rho.adjoint()).cwiseAbs().maxCoeff());
  d.min_eigenvalue = std::min(d.min_eigenvalue, min_eigenvalue(rho));
}

}  // namespace

TimeGrid resolve_grid(const SolverConfig& cfg, double default_dt, double default_t_final) {
  if (cfg.dt < 0.0 || cfg.t_final < 0.0) throw ConfigError("solver dt and t_final must be >= 0");
  const double dt = cfg.dt > 0.0 ? cfg.dt : default_dt;
  const double t_final = cfg.t_final > 0.0 ? cfg.t_final : default_t_final;
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("solver dt must be > 0");
  if (!(t_final >= dt)) throw ConfigError("solver t_final must be >= dt");
  TimeGrid g;
  g.steps = std::max(1L, static_cast<long>(std::ceil(t_final / dt - 1e-9)));
  g.dt = t_final / static_cast<double>(g.steps);
  return g;
}

double auto_dt_hierarchy(const Model& m) {
  const double rate = std::max(jump_rate_bound(m, Sign::Plus), jump_rate_bound(m, Sign::Minus));
  double dt = 0.02 / m.basis.delta;
  if (rate > 0.0) dt = std::min(dt, 0.02 / rate);
  return dt;
}

double auto_dt_auxiliary(const Model& m) {
  Eigen::ComplexEigenSolver<LiouvillianMatrix> es(liouvillian_matrix(m), false);
  const double radius = es.eigenvalues().cwiseAbs().maxCoeff();
  double dt = 0.02 / m.basis.delta;
  if (radius > 0.0) dt = std::min(dt, 0.02 / radius);
  return dt;
}

double slowest_decay_rate(const Model& m) {
  Eigen::ComplexEigenSolver<LiouvillianMatrix> es(liouvillian_matrix(m), false);
  const auto& ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  double slowest = 0.0;
  for (int i = 0; i < ev.size(); ++i) {
    const double rate = -ev(i).real();
    if (rate > 1e-10 * scale && (slowest == 0.0 || rate < slowest)) slowest = rate;
  }
  return slowest;
}

double auto_horizon(const Model& m) {
  const double rate = slowest_decay_rate(m);
  return rate > 0.0 ? 20.0 / rate : 50.0 / m.basis.delta;
}

CountWindow auto_count_window(const Model& m, double t_final, const DensityMatrix& rho0) {
  double i_bar = current(rho0, m);
  try {
    i_bar = std::max(i_bar, current(steady_state(m), m));
  } catch (const NonUniqueSteadyStateError&) {
    for (int s = 0; s < 2; ++s) {
      DensityMatrix p = DensityMatrix::Zero();
      p(s, s) = 1.0;
      i_bar = std::max(i_bar, current(p, m));
    }
  }

  const DetectorParams& d = m.detector;
  double s0 = 0.0;
  if (m.basis.symmetric() && d.v >= 0.0) {
    s0 = analytic_pedestal(d, m.basis);
  } else {
    const double qmax = m.coupling.max_abs_eigenvalue();
    s0 = 2.0 * m.eta() * qmax * qmax * x_coth(d.v, d.temp);
  }
  const double up = std::max(i_bar, 0.0) * t_final + 8.0 * std::sqrt(std::max(s0, 0.0) * t_final) + 20.0;
  const double back = jump_rate_bound(m, Sign::Plus) * t_final;
  const double down = back + 8.0 * std::sqrt(back) + 20.0;
  return {-static_cast<int>(std::ceil(down)), static_cast<int>(std::ceil(up))};
}

ConditionalHierarchy initial_hierarchy(const DensityMatrix& rho0, const CountWindow& w) {
  if (w.n_min > 0 || w.n_max < 0) throw ConfigError("count window must contain n = 0");
  ConditionalHierarchy h(w.n_min, w.n_max);
  h.at(0) = rho0;
  return h;
}

HierarchyRun evolve_conditional(const ConditionalHierarchy& init, const SolverConfig& cfg, const Model& m) {
  if (init.entries.empty()) throw ConfigError("conditional hierarchy is empty");
  const double trace0 = init.total_trace();
  if (std::abs(trace0 - 1.0) > 1e-10) throw ConfigError("initial hierarchy must have total trace 1");

  HierarchyRun run;
  run.grid = resolve_grid(cfg, auto_dt_hierarchy(m), auto_horizon(m));
  const double dt = run.grid.dt;
  const auto samples = sample_indices(run.grid.steps, cfg.samples);

  ConditionalHierarchy y = init;
  ConditionalHierarchy k1, k2, k3, k4, tmp;
  RunDiagnostics& diag = run.diagnostics;
  diag.min_entry_trace = diag.max_entry_trace = init.entries.front().trace().real();

  std::size_t next = 0;
  auto record = [&](long k) {
    if (next < samples.size() && samples[next] == k) {
      run.times.push_back(run.grid.time(k));
      run.states.push_back(y);
      ++next;
    }
  };
  observe(y, trace0, diag);
  record(0);

  for (long k = 1; k <= run.grid.steps; ++k) {
    conditional_rhs(y, m, k1);
    axpy(tmp, y, 0.5 * dt, k1);
    conditional_rhs(tmp, m, k2);
    axpy(tmp, y, 0.5 * dt, k2);
    conditional_rhs(tmp, m, k3);
    axpy(tmp, y, dt, k3);
    conditional_rhs(tmp, m, k4);
    for (std::size_t i = 0; i < y.entries.size(); ++i) {
      y.entries[i] += (dt / 6.0) * (k1.entries[i] + 2.0 * k2.entries[i] + 2.0 * k3.entries[i] + k4.entries[i]);
    }
    diag.max_leakage = std::max(diag.max_leakage, edge_leakage(y));
    if (next < samples.size() && samples[next] == k) observe(y, trace0, diag);
    record(k);
  }

  if (diag.max_leakage >= kLeakageBound) {
    std::ostringstream msg;
    msg << "count window [" << y.n_min << ", " << y.n_max() << "] too small: edge population reached "
        << diag.max_leakage << " by t = " << run.grid.t_final() << "; increase solver.n_max / widen solver.n_min";
    throw TruncationOverflowError(msg.str());
  }
  return run;
}

HierarchyRun evolve_conditional(const DensityMatrix& rho0, const SolverConfig& cfg, const Model& m) {
  const TimeGrid grid = resolve_grid(cfg, auto_dt_hierarchy(m), auto_horizon(m));
  CountWindow w = auto_count_window(m, grid.t_final(), rho0);
  if (cfg.n_max > 0) w.n_max = cfg.n_max;
  if (cfg.n_min) w.n_min = *cfg.n_min;
  return evolve_conditional(initial_hierarchy(rho0, w), cfg, m);
}

AuxiliaryRun evolve_auxiliary(const DensityMatrix& rho0, const SolverConfig& cfg, const Model& m) {
  AuxiliaryRun run;
  run.grid = resolve_grid(cfg, auto_dt_auxiliary(m), auto_horizon(m));
  const auto samples = sample_indices(run.grid.steps, cfg.samples);
  const double trace0 = rho0.trace().real();
  std::size_t next = 0;
  propagate_auxiliary(m, rho0, run.grid, [&](long k, double t, const Matrix2c& n, const DensityMatrix& rho) {
    if (next < samples.size() && samples[next] == k) {
      run.times.push_back(t);
      run.nhat.push_back(n);
      run.rho.push_back(rho);
      observe_state(rho, trace0, run.diagnostics);
      ++next;
    }
  });
  return run;
}

RelaxationRun evolve_unconditional(const DensityMatrix& rho0, const SolverConfig& cfg, const Model& m) {
  RelaxationRun run;
  run.grid = resolve_grid(cfg, auto_dt_auxiliary(m), auto_horizon(m));
  const auto samples = sample_indices(run.grid.steps, cfg.samples);
  const double dt = run.grid.dt;
  const double trace0 = rho0.trace().real();
  DensityMatrix rho = rho0;
  std::size_t next = 0;
  for (long k = 0; k <= run.grid.steps; ++k) {
    if (k > 0) {
      const DensityMatrix k1 = unconditional_rhs(rho, m);
      const DensityMatrix k2 = unconditional_rhs(rho + 0.5 * dt * k1, m);
      const DensityMatrix k3 = unconditional_rhs(rho + 0.5 * dt * k2, m);
      const DensityMatrix k4 = unconditional_rhs(rho + dt * k3, m);
      rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    if (next < samples.size() && samples[next] == k) {
      run.times.push_back(run.grid.time(k));
      run.rho.push_back(rho);
      observe_state(rho, trace0, run.diagnostics);
      ++next;
    }
  }
  return run;
}

DensityMatrix steady_state(const Model& m, double null_tol) {
  const LiouvillianMatrix l = liouvillian_matrix(m);
  Eigen::JacobiSVD<LiouvillianMatrix> svd(l);
  const auto& sv = svd.singularValues();
  const double threshold = null_tol * std::max(1.0, sv(0));
  int null_dim = 0;
  for (int i = 0; i < sv.size(); ++i) null_dim += sv(i) < threshold ? 1 : 0;
  if (null_dim != 1) {
    std::ostringstream msg;
    msg << "steady state is not unique: null space dimension " << null_dim;
    throw NonUniqueSteadyStateError(msg.str());
  }

  // L x = 0 together with Tr = 1, solved in the least-squares sense.
  Eigen::Matrix<std::complex<double>, 5, 4> a;
  a.topRows<4>() = l;
  a.row(4) << 1.0, 0.0, 0.0, 1.0;
  Eigen::Matrix<std::complex<double>, 5, 1> b = Eigen::Matrix<std::complex<double>, 5, 1>::Zero();
  b(4) = 1.0;
  const Eigen::Vector4cd x = a.colPivHouseholderQr().solve(b);
  const DensityMatrix rho = unvectorize(x);
  const DensityMatrix herm = 0.5 * (rho + rho.adjoint());
  return herm / herm.trace().real();
}

double min_eigenvalue(const DensityMatrix& rho) {
  const DensityMatrix h = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<DensityMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace qpcnoise
