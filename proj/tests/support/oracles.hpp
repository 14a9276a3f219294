#pragma once

// Reference computations that share no code path with the solvers they check.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qpcnoise/superoperator.hpp"

namespace qpcnoise::oracle {

// Detector with eta = 1.
inline DetectorParams unit_eta_detector(double t_amp, double chi, double v, double temp) {
  DetectorParams d;
  d.t_amp = t_amp;
  d.chi = chi;
  d.g_l = 1.0;
  d.g_r = 1.0 / (2.0 * std::numbers::pi);
  d.v = v;
  d.temp = temp;
  return d;
}

inline DetectorParams figure_detector(double v, double temp, double chi, double t_amp = 1.0) {
  DetectorParams d;
  d.t_amp = t_amp;
  d.chi = chi;
  d.g_l = 2.5;
  d.g_r = 2.5;
  d.v = v;
  d.temp = temp;
  return d;
}

inline long double kernel_ld(long double x, long double temp) {
  if (x == 0.0L) return temp;
  return x / -std::expm1(-x / temp);
}

inline long double coth_ld(long double y) { return std::cosh(y) / std::sinh(y); }

inline double poisson(int k, double mean) {
  if (k < 0) return 0.0;
  if (mean == 0.0) return k == 0 ? 1.0 : 0.0;
  return std::exp(k * std::log(mean) - mean - std::lgamma(k + 1.0));
}

// P(n) for the difference of two Poisson counts, by direct convolution.
inline double skellam(int n, double fwd_mean, double bwd_mean) {
  double p = 0.0;
  for (int k = 0; k < 400; ++k) {
    const double term = poisson(n + k, fwd_mean) * poisson(k, bwd_mean);
    p += term;
    if (k > bwd_mean + 40 && term < 1e-300) break;
  }
  return p;
}

// Exact stationary spectrum from the Laplace transform of MacDonald's
// integrand, using the generator built directly from unconditional_rhs on
// matrix units. Valid for omega > 0.
inline std::vector<double> resolvent_spectrum(const Model& m, const DensityMatrix& rho_ss,
                                              const std::vector<double>& omegas) {
  using cd = std::complex<double>;
  Eigen::Matrix4cd l;
  for (int k = 0; k < 4; ++k) {
    Matrix2c e = Matrix2c::Zero();
    e(k / 2, k % 2) = 1.0;
    const Matrix2c col = unconditional_rhs(e, m);
    l.col(k) << col(0, 0), col(0, 1), col(1, 0), col(1, 1);
  }
  const Matrix2c& q = m.q;
  const Matrix2c& qb = m.ops.q_bar;
  const Matrix2c& qt = m.ops.q_tilde;
  const Matrix2c src_m = 0.5 * (qb * rho_ss * q + q * rho_ss * qb.adjoint());
  const Eigen::Vector4cd src(src_m(0, 0), src_m(0, 1), src_m(1, 0), src_m(1, 1));
  Eigen::RowVector4cd c;
  for (int k = 0; k < 4; ++k) {
    Matrix2c e = Matrix2c::Zero();
    e(k / 2, k % 2) = 1.0;
    c(k) = (qb * e * q + q * e * qb.adjoint()).trace();
  }
  const double i_bar = src_m.trace().real();
  const Matrix2c g0m = 0.5 * qt * rho_ss * q;
  const double g0 = 2.0 * g0m.trace().real();
  std::vector<double> out;
  for (double w : omegas) {
    const cd p(0.0, -w);
    const Eigen::Vector4cd np = (p * Eigen::Matrix4cd::Identity() - l).partialPivLu().solve(src) / p;
    const cd f = (c * np).value() + g0 / p - 2.0 * i_bar * i_bar / (p * p);
    out.push_back(2.0 * w * f.imag());
  }
  return out;
}

inline Matrix2c random_hermitian(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Matrix2c a;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) a(i, j) = {n(rng), n(rng)};
  return a + a.adjoint();
}

inline Matrix2c random_density(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Matrix2c a;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) a(i, j) = {n(rng), n(rng)};
  Matrix2c rho = a * a.adjoint();
  return rho / rho.trace().real();
}

inline double max_abs(const Matrix2c& a) { return a.cwiseAbs().maxCoeff(); }

}  // namespace qpcnoise::oracle
