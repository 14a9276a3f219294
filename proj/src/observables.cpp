#include "qpcnoise/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <complex>
#include <sstream>

#include "qpcnoise/errors.hpp"

namespace qpcnoise {

namespace {

// Simpson weights need an even number of intervals.
TimeGrid even_grid(TimeGrid g) {
  if (g.steps % 2 != 0) {
    const double t_final = g.t_final();
    g.steps += 1;
    g.dt = t_final / static_cast<double>(g.steps);
  }
  return g;
}

// sum_k w_k sin(omega t_k) r_k on a uniform grid with Simpson weights.
double simpson_sine(const std::vector<double>& r, double dt, double omega) {
  const std::size_t n = r.size();
  const std::complex<double> step = std::polar(1.0, omega * dt);
  std::complex<double> z{1.0, 0.0};
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k % 1024 == 0) z = std::polar(1.0, omega * dt * static_cast<double>(k));
    const double w = (k == 0 || k + 1 == n) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    acc += w * z.imag() * r[k];
    z *= step;
  }
  return acc * dt / 3.0;
}

}  // namespace

std::vector<double> uniform_grid(double lo, double hi, int count) {
  if (count < 1) throw ConfigError("frequency grid needs at least one point");
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw ConfigError("frequency grid bounds must be finite");
  if (count == 1) return {lo};
  if (!(hi > lo)) throw ConfigError("frequency grid must satisfy max > min");
  std::vector<double> g(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (count - 1);
  return g;
}

std::vector<double> default_omega_grid(double delta) { return uniform_grid(0.0, 6.0 * delta, 241); }

double current(const DensityMatrix& rho, const Model& m) {
  const Matrix2c& qb = m.ops.q_bar;
  const Matrix2c& q = m.q;
  return 0.5 * (qb * rho * q + q * rho * qb.adjoint()).trace().real();
}

double dn2_dt(const Matrix2c& nhat, const DensityMatrix& rho, const Model& m) {
  const Matrix2c& q = m.q;
  const Matrix2c x = m.ops.q_bar * nhat * q + 0.5 * (m.ops.q_tilde * rho * q);
  const std::complex<double> tr = x.trace();
  return (tr + std::conj(tr)).real();
}

NumericSpectrum macdonald_spectrum(const Model& m, const SolverConfig& cfg, std::span<const double> omegas,
                                   const std::optional<DensityMatrix>& rho0) {
  DensityMatrix rho_start;
  if (rho0) {
    const double scale = std::max(1.0, liouvillian_matrix(m).cwiseAbs().maxCoeff());
    if (unconditional_rhs(*rho0, m).cwiseAbs().maxCoeff() > 1e-8 * scale) {
      throw ConfigError("MacDonald spectrum needs a stationary initial state");
    }
    rho_start = *rho0;
  } else {
    rho_start = steady_state(m, cfg.steady_tol);
  }

  NumericSpectrum out;
  out.i_bar = current(rho_start, m);
  out.grid = even_grid(resolve_grid(cfg, auto_dt_auxiliary(m), auto_horizon(m)));
  const TimeGrid& grid = out.grid;

  std::vector<double> g(static_cast<std::size_t>(grid.steps) + 1);
  const double i2 = 2.0 * out.i_bar * out.i_bar;
  const double trace0 = rho_start.trace().real();
  RunDiagnostics& diag = out.diagnostics;
  propagate_auxiliary(m, rho_start, grid, [&](long k, double t, const Matrix2c& n, const DensityMatrix& rho) {
    g[static_cast<std::size_t>(k)] = dn2_dt(n, rho, m) - i2 * t;
    diag.max_trace_drift = std::max(diag.max_trace_drift, std::abs(rho.trace().real() - trace0));
    diag.max_hermiticity_deviation =
        std::max({diag.max_hermiticity_deviation, (rho - rho.adjoint()).cwiseAbs().maxCoeff(),
                  (n - n.adjoint()).cwiseAbs().maxCoeff()});
    if (k % 64 == 0) diag.min_eigenvalue = std::min(diag.min_eigenvalue, min_eigenvalue(rho));
  });

  // Tail constant: mean over the last 20% of the horizon.
  const std::size_t n = g.size();
  const std::size_t tail = std::min(n - 1, static_cast<std::size_t>(std::floor(0.8 * static_cast<double>(n - 1))));
  double mean = 0.0;
  for (std::size_t k = tail; k < n; ++k) mean += g[k];
  mean /= static_cast<double>(n - tail);
  out.g_inf = mean;

  double dev = 0.0;
  double tbar = 0.0;
  for (std::size_t k = tail; k < n; ++k) tbar += grid.time(static_cast<long>(k));
  tbar /= static_cast<double>(n - tail);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t k = tail; k < n; ++k) {
    const double dt = grid.time(static_cast<long>(k)) - tbar;
    sxy += dt * (g[k] - mean);
    sxx += dt * dt;
    dev = std::max(dev, std::abs(g[k] - mean));
  }
  const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
  const double gmax = *std::max_element(g.begin(), g.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
  const double scale = std::max(std::abs(mean), 1e-12 * std::abs(gmax));
  if (dev > 1e-4 * scale || std::abs(slope) > 1e-4 * scale * m.basis.delta) {
    std::ostringstream msg;
    msg << "d<n^2>/dt - 2 I^2 t has not settled by t = " << grid.t_final() << " (tail deviation " << dev
        << ", slope " << slope << ", g_inf " << mean << "); use a longer solver.t_final";
    throw NonDecayingRemainderError(msg.str());
  }

  std::vector<double> remainder(n);
  for (std::size_t k = 0; k < n; ++k) remainder[k] = g[k] - mean;

  out.spectrum.omegas.assign(omegas.begin(), omegas.end());
  out.spectrum.values.reserve(omegas.size());
  for (double w : omegas) {
    out.spectrum.values.push_back(2.0 * mean + 2.0 * w * simpson_sine(remainder, grid.dt, w));
  }
  return out;
}

double peak_to_pedestal(const Spectrum& s, double delta, std::optional<double> pedestal) {
  if (s.values.empty() || s.values.size() != s.omegas.size()) throw ConfigError("empty spectrum");
  const double ped = pedestal.value_or(s.values.back());
  double peak = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < s.omegas.size(); ++i) {
    if (std::abs(s.omegas[i] - delta) <= 0.25 * delta) peak = std::max(peak, s.values[i]);
  }
  if (!std::isfinite(peak)) throw ConfigError("spectrum has no samples near omega = delta");
  return (peak - ped) / ped;
}

double sample_near(const Spectrum& s, double omega) {
  if (s.omegas.empty()) throw ConfigError("empty spectrum");
  std::size_t best = 0;
  for (std::size_t i = 1; i < s.omegas.size(); ++i) {
    if (std::abs(s.omegas[i] - omega) < std::abs(s.omegas[best] - omega)) best = i;
  }
  return s.values[best];
}

}  // namespace qpcnoise
