#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qpcnoise/hierarchy.hpp"

namespace qpcnoise {

struct SpectrumComponents {
  std::vector<double> s0;
  std::vector<double> s1;
  std::vector<double> s2;
};

// S(omega) on omega >= 0; the process is stationary so S(-omega) = S(omega).
struct Spectrum {
  std::vector<double> omegas;
  std::vector<double> values;
  std::optional<SpectrumComponents> components;
};

// 241 points on [0, 6 delta].
[[nodiscard]] std::vector<double> default_omega_grid(double delta);
[[nodiscard]] std::vector<double> uniform_grid(double lo, double hi, int count);

// I = Tr(Q_bar rho Q + h.c.) / 2
[[nodiscard]] double current(const DensityMatrix& rho, const Model& m);

// d<n^2>/dt = Tr[Q_bar N Q + Q~ rho Q / 2 + h.c.]
[[nodiscard]] double dn2_dt(const Matrix2c& nhat, const DensityMatrix& rho, const Model& m);

struct NumericSpectrum {
  Spectrum spectrum;
  double g_inf = 0.0;  // long-time limit of d<n^2>/dt - 2 I^2 t
  double i_bar = 0.0;
  TimeGrid grid;
  RunDiagnostics diagnostics;
};

// MacDonald's formula evaluated on the solver grid:
//   S(w) = 2 g_inf + 2 w int_0^T sin(w t) (g(t) - g_inf) dt,  g = d<n^2>/dt - 2 I^2 t.
// The tail constant g_inf is split out analytically; without it the
// oscillatory integral of a constant does not converge.
// rho0 defaults to the steady state; a supplied state must be stationary.
// Throws NonDecayingRemainderError when g(t) has not settled by t_final.
[[nodiscard]] NumericSpectrum macdonald_spectrum(const Model& m, const SolverConfig& cfg,
                                                 std::span<const double> omegas,
                                                 const std::optional<DensityMatrix>& rho0 = std::nullopt);

// (max S within 0.25 delta of delta - pedestal) / pedestal. The pedestal
// defaults to the value at the largest sampled omega.
[[nodiscard]] double peak_to_pedestal(const Spectrum& s, double delta, std::optional<double> pedestal = std::nullopt);

// Value of S at the sample closest to omega.
[[nodiscard]] double sample_near(const Spectrum& s, double omega);

}  // namespace qpcnoise
