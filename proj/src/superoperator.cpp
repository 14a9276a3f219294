#include "qpcnoise/superoperator.hpp"

#include "qpcnoise/errors.hpp"

namespace qpcnoise {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

Eigen::Matrix4cd kron(const Matrix2c& a, const Matrix2c& b) {
  Eigen::Matrix4cd k;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      k.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    }
  }
  return k;
}

// f(X) + f(X^dagger)^dagger for a linear f. The result is linear in X and
// bitwise Hermitian whenever X is, so integrators cannot drift off the
// Hermitian subspace through rounding.
template <class F>
Matrix2c with_adjoint_image(const Matrix2c& x, F&& f) {
  return f(x) + f(Matrix2c(x.adjoint())).adjoint();
}

// K = -iH - QQ~/2, so that K rho + rho K^dagger is the no-jump part.
inline Matrix2c no_jump_generator(const Model& m) {
  return -kI * m.hamiltonian - 0.5 * (m.q * m.ops.q_tilde);
}

}  // namespace

Eigen::Vector4cd vectorize(const Matrix2c& rho) {
  return {rho(0, 0), rho(0, 1), rho(1, 0), rho(1, 1)};
}

Matrix2c unvectorize(const Eigen::Vector4cd& v) {
  Matrix2c rho;
  rho << v(0), v(1), v(2), v(3);
  return rho;
}

FilteredOperators build_filtered(const CouplingOperator& q, const EigenBasis& basis,
                                 const DetectorParams& d, FilterMode mode) {
  const double energies[2] = {basis.e1, basis.e0};
  FilteredOperators f;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      // |i><j| is an eigenoperator of [H, .] with eigenvalue E_i - E_j
      const double lambda = mode == FilterMode::Full ? energies[i] - energies[j] : 0.0;
      f.q_plus(i, j) = c_tilde(Sign::Plus, lambda, d) * q.q(i, j);
      f.q_minus(i, j) = c_tilde(Sign::Minus, lambda, d) * q.q(i, j);
    }
  }
  f.q_tilde = f.q_plus + f.q_minus;
  f.q_bar = f.q_minus - f.q_plus;
  return f;
}

Model make_model(const QubitParams& qubit, const DetectorParams& detector, FilterMode mode) {
  detector.validate();
  Model m;
  m.qubit = qubit;
  m.detector = detector;
  m.mode = mode;
  m.basis = diagonalize(qubit);
  m.coupling = coupling_in_eigenbasis(m.basis, detector.t_amp, detector.chi);
  m.ops = build_filtered(m.coupling, m.basis, detector, mode);
  m.hamiltonian = m.basis.hamiltonian();
  m.q = m.coupling.complex();
  return m;
}

ConditionalHierarchy::ConditionalHierarchy(int lo, int hi) : n_min(lo) {
  if (hi < lo) throw ConfigError("hierarchy window must satisfy n_max >= n_min");
  entries.assign(static_cast<std::size_t>(hi - lo + 1), Matrix2c::Zero());
}

double ConditionalHierarchy::total_trace() const {
  double s = 0.0;
  for (const auto& e : entries) s += e.trace().real();
  return s;
}

Matrix2c ConditionalHierarchy::reduced() const {
  Matrix2c s = Matrix2c::Zero();
  for (const auto& e : entries) s += e;
  return s;
}

Matrix2c ConditionalHierarchy::first_moment() const {
  Matrix2c s = Matrix2c::Zero();
  for (std::size_t k = 0; k < entries.size(); ++k) {
    s += static_cast<double>(n_min + static_cast<int>(k)) * entries[k];
  }
  return s;
}

std::vector<double> ConditionalHierarchy::distribution() const {
  std::vector<double> p;
  p.reserve(entries.size());
  for (const auto& e : entries) p.push_back(e.trace().real());
  return p;
}

double ConditionalHierarchy::mean_count() const { return first_moment().trace().real(); }

double ConditionalHierarchy::second_moment() const {
  double s = 0.0;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const double n = n_min + static_cast<int>(k);
    s += n * n * entries[k].trace().real();
  }
  return s;
}

double ConditionalHierarchy::hermiticity_deviation() const {
  double d = 0.0;
  for (const auto& e : entries) d = std::max(d, (e - e.adjoint()).cwiseAbs().maxCoeff());
  return d;
}

void conditional_rhs(const ConditionalHierarchy& h, const Model& m, ConditionalHierarchy& out) {
  if (h.entries.empty()) throw ConfigError("conditional hierarchy is empty");
  out.n_min = h.n_min;
  out.entries.resize(h.entries.size());

  const Matrix2c k = no_jump_generator(m);
  const Matrix2c kd = k.adjoint();
  const Matrix2c fwd = 0.5 * m.ops.q_minus;
  const Matrix2c bwd = 0.5 * m.ops.q_plus;
  const Matrix2c fwd_d = fwd.adjoint();
  const Matrix2c bwd_d = bwd.adjoint();
  const Matrix2c& q = m.q;

  const std::size_t size = h.entries.size();
  for (std::size_t i = 0; i < size; ++i) {
    const Matrix2c& rho = h.entries[i];
    Matrix2c d = k * rho + rho * kd;
    if (i > 0) {
      const Matrix2c& below = h.entries[i - 1];  // n - 1 -> n by a forward electron
      d += fwd * below * q + q * below * fwd_d;
    }
    if (i + 1 < size) {
      const Matrix2c& above = h.entries[i + 1];  // n + 1 -> n by a backward electron
      d += bwd * above * q + q * above * bwd_d;
    }
    out.entries[i] = d;
  }
}

ConditionalHierarchy conditional_rhs(const ConditionalHierarchy& h, const Model& m) {
  ConditionalHierarchy out;
  conditional_rhs(h, m, out);
  return out;
}

DensityMatrix unconditional_rhs(const DensityMatrix& rho, const Model& m) {
  const Matrix2c k = no_jump_generator(m);
  const Matrix2c qt = 0.5 * m.ops.q_tilde;
  return with_adjoint_image(rho, [&](const Matrix2c& x) -> Matrix2c { return k * x + qt * x * m.q; });
}

Matrix2c auxiliary_rhs(const Matrix2c& nhat, const DensityMatrix& rho, const Model& m) {
  const Matrix2c& q = m.q;
  const Matrix2c k = no_jump_generator(m);
  const Matrix2c qt = 0.5 * m.ops.q_tilde;
  const Matrix2c qb = 0.5 * m.ops.q_bar;
  return with_adjoint_image(nhat, [&](const Matrix2c& x) -> Matrix2c { return k * x + qt * x * q; }) +
         with_adjoint_image(rho, [&](const Matrix2c& x) -> Matrix2c { return qb * x * q; });
}

LiouvillianMatrix liouvillian_matrix(const Model& m) {
  // Row-major vec: vec(A X B) = (A kron B^T) vec(X).
  const Matrix2c id = Matrix2c::Identity();
  const Matrix2c k = no_jump_generator(m);
  const Matrix2c& q = m.q;
  const Matrix2c& qt = m.ops.q_tilde;
  return kron(k, id) + kron(id, k.conjugate()) +
         0.5 * (kron(qt, q.transpose()) + kron(q, qt.conjugate()));
}

}  // namespace qpcnoise
