#pragma once

namespace qpcnoise {

enum class Sign { Plus, Minus };

// QPC detector in the wide-band limit. Energies use hbar = e = k_B = 1.
struct DetectorParams {
  double t_amp = 1.0;  // background tunnelling amplitude
  double chi = 0.0;    // change of the amplitude when the qubit charge sits on dot a
  double g_l = 1.0;    // lead densities of states
  double g_r = 1.0;
  double v = 0.0;      // bias; sign gives the direction
  double temp = 0.0;

  [[nodiscard]] double eta() const;
  // Throws ConfigError unless eta > 0, temp >= 0 and everything is finite.
  void validate() const;
};

// x / (1 - exp(-x/T)), with the x -> 0 limit T and the T = 0 limit x * step(x).
[[nodiscard]] double kernel(double x, double temp);

// Reservoir spectrum evaluated at a Liouvillian eigenvalue lambda:
// eta * kernel(-lambda - V) for Plus (backward), eta * kernel(-lambda + V) for Minus (forward).
[[nodiscard]] double c_tilde(Sign sign, double lambda, const DetectorParams& d);

// x coth(x / 2T); 2T at x = 0, |x| at T = 0.
[[nodiscard]] double x_coth(double x, double temp);

// (delta +- V) coth((delta +- V) / 2T)
[[nodiscard]] double f_pm(Sign sign, double delta, double v, double temp);

// (F+ +- F-) / 2
[[nodiscard]] double g_pm(Sign sign, double delta, double v, double temp);

}  // namespace qpcnoise
