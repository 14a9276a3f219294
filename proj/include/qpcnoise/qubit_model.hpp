#pragma once

#include <cmath>
#include <complex>

#include <Eigen/Dense>

namespace qpcnoise {

using Matrix2c = Eigen::Matrix2cd;
using Matrix2r = Eigen::Matrix2d;

// Density matrices and the auxiliary N operator live in the qubit eigenbasis
// ordered as {|1>, |0>}: index 0 is the excited state E = +delta/2.
using DensityMatrix = Matrix2c;

// Charge qubit on two coupled dots. epsilon is half the dot detuning,
// omega the interdot tunnelling amplitude (must be >= 0).
struct QubitParams {
  double epsilon = 0.0;
  double omega = 0.0;
};

struct EigenBasis {
  double delta = 0.0;      // E1 - E0
  double theta = 0.0;      // mixing angle in [0, pi]
  double cos_theta = 1.0;  // 2 epsilon / delta
  double sin_theta = 0.0;  // 2 omega / delta
  double e1 = 0.0;         // +delta/2
  double e0 = 0.0;         // -delta/2

  // Components of |a> in the eigenbasis: (cos(theta/2), sin(theta/2)).
  [[nodiscard]] Eigen::Vector2d dot_a() const;
  [[nodiscard]] Matrix2c hamiltonian() const;
  // Rows are <1| and <0| written in the local {|a>, |b>} basis.
  [[nodiscard]] Matrix2r local_to_eigen() const;
  [[nodiscard]] bool symmetric(double tol = 1e-12) const { return std::abs(cos_theta) <= tol; }
};

// Q = T + chi |a><a| in the eigenbasis.
struct CouplingOperator {
  Matrix2r q = Matrix2r::Identity();

  [[nodiscard]] Matrix2c complex() const { return q.cast<std::complex<double>>(); }
  // Largest |eigenvalue| of Q, used for rate estimates.
  [[nodiscard]] double max_abs_eigenvalue() const;
};

// Throws DegenerateQubitError for epsilon = omega = 0 and ConfigError for
// omega < 0 or non-finite input.
[[nodiscard]] EigenBasis diagonalize(const QubitParams& p);

[[nodiscard]] CouplingOperator coupling_in_eigenbasis(const EigenBasis& basis, double t_amp, double chi);

// Rotate an operator given in {|a>, |b>} into {|1>, |0>} and back.
[[nodiscard]] Matrix2c to_eigenbasis(const EigenBasis& basis, const Matrix2c& local);
[[nodiscard]] Matrix2c to_local_basis(const EigenBasis& basis, const Matrix2c& eigen);

}  // namespace qpcnoise
