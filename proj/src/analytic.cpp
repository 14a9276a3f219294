#include "qpcnoise/analytic.hpp"

#include <cmath>

#include "qpcnoise/errors.hpp"
#include "qpcnoise/observables.hpp"

namespace qpcnoise {

namespace {

void require_symmetric(const DetectorParams& d, const EigenBasis& basis) {
  if (!basis.symmetric()) {
    throw AsymmetricQubitError("closed-form results need a symmetric qubit (epsilon = 0)");
  }
  if (d.v < 0.0) throw ConfigError("closed-form results need V >= 0");
  d.validate();
}

// d/dx [x coth(x / 2T)]
double x_coth_slope(double x, double temp) {
  if (temp == 0.0) return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
  const double y = x / (2.0 * temp);
  if (std::abs(y) < 1e-6) return 2.0 * y / 3.0;
  const double s = std::sinh(y);
  return 1.0 / std::tanh(y) - y / (s * s);
}

double lorentz_s1(const RateConstants& r, double prefactor, double delta, double w) {
  if (r.i_d == 0.0 || r.gamma_d == 0.0) return 0.0;
  const double a = w * w - delta * delta;
  return prefactor * r.i_d * r.i_d * r.gamma_d * delta * delta /
         (a * a + r.gamma_d * r.gamma_d * w * w);
}

double lorentz_s2(const RateConstants& r, const DetectorParams& d, double w) {
  if (d.chi == 0.0 || r.gamma_d == 0.0) return 0.0;
  return d.chi * d.chi * d.eta() * (r.gamma_d * r.d_z + r.gamma * r.i_bar) * r.g_minus /
         (w * w + r.gamma_d * r.gamma_d);
}

}  // namespace

RateConstants rate_constants(const DetectorParams& d, const EigenBasis& basis) {
  require_symmetric(d, basis);
  const double eta = d.eta();
  const double delta = basis.delta;
  const double chi2 = d.chi * d.chi;

  RateConstants r;
  r.g_plus = g_pm(Sign::Plus, delta, d.v, d.temp);
  r.g_minus = g_pm(Sign::Minus, delta, d.v, d.temp);
  const double ratio = r.g_minus / r.g_plus;

  r.i_a = eta * (d.t_amp + d.chi) * (d.t_amp + d.chi) * d.v;
  r.i_b = eta * d.t_amp * d.t_amp * d.v;
  r.i0 = 0.5 * (r.i_a + r.i_b);
  r.i_d = r.i_a - r.i_b;
  r.i_bar = r.i0 - 0.25 * eta * chi2 * delta * ratio;
  r.gamma_d = 0.5 * eta * chi2 * r.g_plus;
  r.gamma = 0.5 * eta * chi2 * delta;
  r.d_z = -delta * std::sqrt(r.i_a * r.i_b) / r.g_plus - 0.25 * eta * chi2 * r.g_minus;
  r.g0 = eta * (d.t_amp + 0.5 * d.chi) * (d.t_amp + 0.5 * d.chi);
  r.g1 = eta * 0.25 * chi2;
  return r;
}

double stationary_current_symmetric(const DetectorParams& d, const EigenBasis& basis) {
  const RateConstants r = rate_constants(d, basis);
  // g1 V [1 - (delta/V) G-/G+] without dividing by V
  return r.g0 * d.v + r.g1 * (d.v - basis.delta * r.g_minus / r.g_plus);
}

double s1_prefactor(const DetectorParams& d, const EigenBasis& basis) {
  const RateConstants r = rate_constants(d, basis);
  const double delta = basis.delta;
  if (d.v == 0.0) {
    // G- ~ V F'(delta) as V -> 0
    return 1.0 - 0.5 * delta * x_coth_slope(delta, d.temp) / r.g_plus;
  }
  return 1.0 - delta / (2.0 * d.v) * r.g_minus / r.g_plus;
}

double analytic_pedestal(const DetectorParams& d, const EigenBasis& basis) {
  const RateConstants r = rate_constants(d, basis);
  const double eta = d.eta();
  const double delta = basis.delta;
  // 2 I0 coth(V/2T) = eta [(T+chi)^2 + T^2] * V coth(V/2T)
  const double amp2 = (d.t_amp + d.chi) * (d.t_amp + d.chi) + d.t_amp * d.t_amp;
  const double vcoth = x_coth(d.v, d.temp);
  return eta * amp2 * vcoth + 0.5 * d.chi * d.chi * eta * (r.g_plus - delta * delta / r.g_plus - vcoth);
}

Spectrum analytic_spectrum(const DetectorParams& d, const EigenBasis& basis, std::span<const double> omegas) {
  const RateConstants r = rate_constants(d, basis);
  const double s0 = analytic_pedestal(d, basis);
  const double pre = s1_prefactor(d, basis);

  Spectrum s;
  s.omegas.assign(omegas.begin(), omegas.end());
  SpectrumComponents c;
  for (double w : omegas) {
    const double s1 = lorentz_s1(r, pre, basis.delta, w);
    const double s2 = lorentz_s2(r, d, w);
    c.s0.push_back(s0);
    c.s1.push_back(s1);
    c.s2.push_back(s2);
    s.values.push_back(s0 + s1 + s2);
  }
  s.components = std::move(c);
  return s;
}

double analytic_peak_to_pedestal(const DetectorParams& d, const EigenBasis& basis) {
  const RateConstants r = rate_constants(d, basis);
  const double s0 = analytic_pedestal(d, basis);
  const double delta = basis.delta;
  return (lorentz_s1(r, s1_prefactor(d, basis), delta, delta) + lorentz_s2(r, d, delta)) / s0;
}

}  // namespace qpcnoise
