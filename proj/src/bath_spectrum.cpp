#include "qpcnoise/bath_spectrum.hpp"

#include <cmath>
#include <numbers>

#include "qpcnoise/errors.hpp"

namespace qpcnoise {

namespace {

constexpr double kSeriesCutoff = 1e-6;

}  // namespace

double DetectorParams::eta() const { return 2.0 * std::numbers::pi * g_l * g_r; }

void DetectorParams::validate() const {
  for (double x : {t_amp, chi, g_l, g_r, v, temp}) {
    if (!std::isfinite(x)) throw ConfigError("detector parameters must be finite");
  }
  if (!(temp >= 0.0)) throw ConfigError("detector temperature must be >= 0");
  if (!(eta() > 0.0)) throw ConfigError("detector eta = 2 pi g_l g_r must be > 0");
}

double kernel(double x, double temp) {
  if (temp == 0.0) return x > 0.0 ? x : 0.0;
  const double y = x / temp;
  if (std::abs(y) < kSeriesCutoff) {
    return temp + 0.5 * x + x * x / (12.0 * temp);
  }
  const double k = x / -std::expm1(-y);
  // x << -T underflows to -0
  return k > 0.0 ? k : 0.0;
}

double c_tilde(Sign sign, double lambda, const DetectorParams& d) {
  const double x = sign == Sign::Plus ? -lambda - d.v : -lambda + d.v;
  return d.eta() * kernel(x, d.temp);
}

double x_coth(double x, double temp) {
  if (temp == 0.0) return std::abs(x);
  if (x == 0.0) return 2.0 * temp;
  const double y = std::abs(x) / (2.0 * temp);
  if (y < kSeriesCutoff) {
    return 2.0 * temp * (1.0 + y * y / 3.0);
  }
  // coth y = 1 + 2/(e^{2y} - 1), overflow-free for large y
  const double coth = 1.0 + 2.0 / std::expm1(2.0 * y);
  return std::abs(x) * coth;
}

double f_pm(Sign sign, double delta, double v, double temp) {
  return x_coth(sign == Sign::Plus ? delta + v : delta - v, temp);
}

double g_pm(Sign sign, double delta, double v, double temp) {
  const double fp = f_pm(Sign::Plus, delta, v, temp);
  const double fm = f_pm(Sign::Minus, delta, v, temp);
  return 0.5 * (sign == Sign::Plus ? fp + fm : fp - fm);
}

}  // namespace qpcnoise
