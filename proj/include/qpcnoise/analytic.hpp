#pragma once

#include <span>
#include <vector>

#include "qpcnoise/bath_spectrum.hpp"
#include "qpcnoise/qubit_model.hpp"

namespace qpcnoise {

struct Spectrum;

// Closed-form results for the symmetric qubit (epsilon = 0). Every entry
// point throws AsymmetricQubitError when cos(theta) != 0 and ConfigError
// for V < 0.

struct RateConstants {
  double i_a = 0.0;      // detector current with the qubit on dot a
  double i_b = 0.0;      // ... on dot b
  double i0 = 0.0;       // (i_a + i_b) / 2
  double i_d = 0.0;      // i_a - i_b
  double i_bar = 0.0;    // stationary current
  double gamma_d = 0.0;  // decoherence rate
  double gamma = 0.0;
  double d_z = 0.0;
  double g0 = 0.0;
  double g1 = 0.0;
  double g_plus = 0.0;
  double g_minus = 0.0;
};

[[nodiscard]] RateConstants rate_constants(const DetectorParams& d, const EigenBasis& basis);

[[nodiscard]] double stationary_current_symmetric(const DetectorParams& d, const EigenBasis& basis);

// 1 - (delta / 2V) G- / G+, the weight of the coherent Lorentzian.
[[nodiscard]] double s1_prefactor(const DetectorParams& d, const EigenBasis& basis);

// Frequency-independent part S0.
[[nodiscard]] double analytic_pedestal(const DetectorParams& d, const EigenBasis& basis);

// S0 + S1(omega) + S2(omega) with the components kept.
[[nodiscard]] Spectrum analytic_spectrum(const DetectorParams& d, const EigenBasis& basis,
                                         std::span<const double> omegas);

// [S(delta) - S0] / S0 from the closed form.
[[nodiscard]] double analytic_peak_to_pedestal(const DetectorParams& d, const EigenBasis& basis);

}  // namespace qpcnoise
