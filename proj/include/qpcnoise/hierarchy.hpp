#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "qpcnoise/superoperator.hpp"

namespace qpcnoise {

struct SolverConfig {
  double dt = 0.0;       // 0 = auto
  double t_final = 0.0;  // 0 = auto
  int n_max = 0;         // 0 = auto
  std::optional<int> n_min;  // unset = auto
  double steady_tol = 1e-10;
  int samples = 100;     // recorded snapshots for hierarchy and relaxation runs
};

// Uniform step grid covering [0, t_final] exactly.
struct TimeGrid {
  double dt = 0.0;
  long steps = 0;
  [[nodiscard]] double t_final() const { return dt * static_cast<double>(steps); }
  [[nodiscard]] double time(long k) const { return dt * static_cast<double>(k); }
};

// Picks cfg values where set and the supplied defaults otherwise; dt is then
// shrunk so that an integer number of steps lands on t_final.
[[nodiscard]] TimeGrid resolve_grid(const SolverConfig& cfg, double default_dt, double default_t_final);

struct RunDiagnostics {
  double max_trace_drift = 0.0;
  double max_hermiticity_deviation = 0.0;
  double max_leakage = 0.0;  // largest |Tr rho^(n)| at either window edge
  double min_entry_trace = 0.0;
  double max_entry_trace = 0.0;
  double min_eigenvalue = 1.0;  // of the unconditional state
  [[nodiscard]] bool positivity_violated() const { return min_eigenvalue < -1e-8; }
};

struct HierarchyRun {
  TimeGrid grid;
  std::vector<double> times;
  std::vector<ConditionalHierarchy> states;
  RunDiagnostics diagnostics;
};

struct AuxiliaryRun {
  TimeGrid grid;
  std::vector<double> times;
  std::vector<Matrix2c> nhat;
  std::vector<DensityMatrix> rho;
  RunDiagnostics diagnostics;
};

// Step-size rules: the hierarchy has to resolve the bare jump rates, the
// (N, rho) pair only the 4x4 Liouvillian.
[[nodiscard]] double auto_dt_hierarchy(const Model& m);
[[nodiscard]] double auto_dt_auxiliary(const Model& m);
// Slowest nonzero decay rate of the unconditional generator, 0 if none.
[[nodiscard]] double slowest_decay_rate(const Model& m);
// 20 / slowest rate, or 50 / delta when nothing decays.
[[nodiscard]] double auto_horizon(const Model& m);

struct CountWindow {
  int n_min = 0;
  int n_max = 0;
};
[[nodiscard]] CountWindow auto_count_window(const Model& m, double t_final, const DensityMatrix& rho0);

[[nodiscard]] ConditionalHierarchy initial_hierarchy(const DensityMatrix& rho0, const CountWindow& w);

// Classical RK4 on the full hierarchy. init must carry total trace 1.
// Throws TruncationOverflowError if either window edge reaches |Tr| >= 1e-6 during the run.
[[nodiscard]] HierarchyRun evolve_conditional(const ConditionalHierarchy& init, const SolverConfig& cfg,
                                              const Model& m);
// Convenience: rho0 placed at n = 0 in an auto-sized (or cfg-sized) window.
[[nodiscard]] HierarchyRun evolve_conditional(const DensityMatrix& rho0, const SolverConfig& cfg, const Model& m);

// Joint RK4 for (N, rho) from N(0) = 0. The visitor sees every grid point,
// including t = 0. Visitor signature: void(long k, double t, const Matrix2c& n, const DensityMatrix& rho).
template <class Visitor>
void propagate_auxiliary(const Model& m, const DensityMatrix& rho0, const TimeGrid& grid, Visitor&& visit) {
  Matrix2c n = Matrix2c::Zero();
  DensityMatrix rho = rho0;
  const double dt = grid.dt;
  visit(0L, 0.0, n, rho);
  for (long k = 1; k <= grid.steps; ++k) {
    const Matrix2c kn1 = auxiliary_rhs(n, rho, m);
    const Matrix2c kr1 = unconditional_rhs(rho, m);
    const DensityMatrix r2 = rho + 0.5 * dt * kr1;
    const Matrix2c kn2 = auxiliary_rhs(n + 0.5 * dt * kn1, r2, m);
    const Matrix2c kr2 = unconditional_rhs(r2, m);
    const DensityMatrix r3 = rho + 0.5 * dt * kr2;
    const Matrix2c kn3 = auxiliary_rhs(n + 0.5 * dt * kn2, r3, m);
    const Matrix2c kr3 = unconditional_rhs(r3, m);
    const DensityMatrix r4 = rho + dt * kr3;
    const Matrix2c kn4 = auxiliary_rhs(n + dt * kn3, r4, m);
    const Matrix2c kr4 = unconditional_rhs(r4, m);
    n += (dt / 6.0) * (kn1 + 2.0 * kn2 + 2.0 * kn3 + kn4);
    rho += (dt / 6.0) * (kr1 + 2.0 * kr2 + 2.0 * kr3 + kr4);
    visit(k, grid.time(k), n, rho);
  }
}

// Records cfg.samples + 1 evenly spaced snapshots.
[[nodiscard]] AuxiliaryRun evolve_auxiliary(const DensityMatrix& rho0, const SolverConfig& cfg, const Model& m);

// Unconditional evolution only (relaxation runs), same recording rule.
struct RelaxationRun {
  TimeGrid grid;
  std::vector<double> times;
  std::vector<DensityMatrix> rho;
  RunDiagnostics diagnostics;
};
[[nodiscard]] RelaxationRun evolve_unconditional(const DensityMatrix& rho0, const SolverConfig& cfg, const Model& m);

// Null vector of the Liouvillian normalised to unit trace. Throws
// NonUniqueSteadyStateError unless exactly one singular value is below
// null_tol * max(1, largest singular value).
[[nodiscard]] DensityMatrix steady_state(const Model& m, double null_tol = 1e-10);

[[nodiscard]] double min_eigenvalue(const DensityMatrix& rho);

}  // namespace qpcnoise
