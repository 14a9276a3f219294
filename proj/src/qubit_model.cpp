#include "qpcnoise/qubit_model.hpp"

#include <cmath>

#include "qpcnoise/errors.hpp"

namespace qpcnoise {

Eigen::Vector2d EigenBasis::dot_a() const {
  // Half-angle forms keep both components >= 0 on [0, pi].
  const double c = std::sqrt(std::max(0.0, 0.5 * (1.0 + cos_theta)));
  const double s = std::sqrt(std::max(0.0, 0.5 * (1.0 - cos_theta)));
  return {c, s};
}

Matrix2c EigenBasis::hamiltonian() const {
  Matrix2c h = Matrix2c::Zero();
  h(0, 0) = e1;
  h(1, 1) = e0;
  return h;
}

Matrix2r EigenBasis::local_to_eigen() const {
  const Eigen::Vector2d a = dot_a();
  Matrix2r r;
  // |1> = c|a> + s|b>,  |0> = s|a> - c|b>
  r << a(0), a(1),
       a(1), -a(0);
  return r;
}

double CouplingOperator::max_abs_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix2r> es(q, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

EigenBasis diagonalize(const QubitParams& p) {
  if (!std::isfinite(p.epsilon) || !std::isfinite(p.omega)) {
    throw ConfigError("qubit parameters must be finite");
  }
  if (p.omega < 0.0) {
    throw ConfigError("qubit omega must be >= 0");
  }
  if (p.epsilon == 0.0 && p.omega == 0.0) {
    throw DegenerateQubitError();
  }
  EigenBasis b;
  b.delta = 2.0 * std::hypot(p.epsilon, p.omega);
  b.cos_theta = 2.0 * p.epsilon / b.delta;
  b.sin_theta = 2.0 * p.omega / b.delta;
  b.theta = std::atan2(p.omega, p.epsilon);
  b.e1 = 0.5 * b.delta;
  b.e0 = -0.5 * b.delta;
  return b;
}

CouplingOperator coupling_in_eigenbasis(const EigenBasis& basis, double t_amp, double chi) {
  const Eigen::Vector2d a = basis.dot_a();
  CouplingOperator c;
  c.q = t_amp * Matrix2r::Identity() + chi * (a * a.transpose());
  return c;
}

Matrix2c to_eigenbasis(const EigenBasis& basis, const Matrix2c& local) {
  const Matrix2c r = basis.local_to_eigen().cast<std::complex<double>>();
  return r * local * r.transpose();
}

Matrix2c to_local_basis(const EigenBasis& basis, const Matrix2c& eigen) {
  // The rotation is a real symmetric involution.
  return to_eigenbasis(basis, eigen);
}

}  // namespace qpcnoise
