#pragma once

#include <vector>

#include <Eigen/Dense>

#include "qpcnoise/bath_spectrum.hpp"
#include "qpcnoise/qubit_model.hpp"

namespace qpcnoise {

// Full keeps the energy-exchange filter C(E_i - E_j); Frozen evaluates every
// element at lambda = 0, the high-voltage generator.
enum class FilterMode { Full, Frozen };

struct FilteredOperators {
  Matrix2c q_plus;   // backward tunnelling
  Matrix2c q_minus;  // forward tunnelling
  Matrix2c q_tilde;  // q_plus + q_minus
  Matrix2c q_bar;    // q_minus - q_plus
};

using LiouvillianMatrix = Eigen::Matrix4cd;

// vec(rho) is row-major: index 2*i + j holds rho(i, j).
[[nodiscard]] Eigen::Vector4cd vectorize(const Matrix2c& rho);
[[nodiscard]] Matrix2c unvectorize(const Eigen::Vector4cd& v);

[[nodiscard]] FilteredOperators build_filtered(const CouplingOperator& q, const EigenBasis& basis,
                                               const DetectorParams& d, FilterMode mode = FilterMode::Full);

// Everything a solver needs about one (qubit, detector) point.
struct Model {
  QubitParams qubit;
  DetectorParams detector;
  FilterMode mode = FilterMode::Full;
  EigenBasis basis;
  CouplingOperator coupling;
  FilteredOperators ops;
  Matrix2c hamiltonian;
  Matrix2c q;  // coupling as a complex matrix

  [[nodiscard]] double eta() const { return detector.eta(); }
};

[[nodiscard]] Model make_model(const QubitParams& qubit, const DetectorParams& detector,
                               FilterMode mode = FilterMode::Full);

// Count-resolved density matrices rho^(n) for n in [n_min, n_max].
// Entries outside the window are treated as zero.
struct ConditionalHierarchy {
  int n_min = 0;
  std::vector<Matrix2c> entries;

  ConditionalHierarchy() = default;
  ConditionalHierarchy(int lo, int hi);

  [[nodiscard]] int n_max() const { return n_min + static_cast<int>(entries.size()) - 1; }
  [[nodiscard]] std::size_t size() const { return entries.size(); }
  [[nodiscard]] Matrix2c& at(int n) { return entries.at(static_cast<std::size_t>(n - n_min)); }
  [[nodiscard]] const Matrix2c& at(int n) const { return entries.at(static_cast<std::size_t>(n - n_min)); }

  [[nodiscard]] double total_trace() const;
  // Sum over n: the unconditional qubit state.
  [[nodiscard]] Matrix2c reduced() const;
  // N = sum n rho^(n)
  [[nodiscard]] Matrix2c first_moment() const;
  // P(n) = Tr rho^(n), ordered from n_min.
  [[nodiscard]] std::vector<double> distribution() const;
  [[nodiscard]] double mean_count() const;
  [[nodiscard]] double second_moment() const;
  // max_n ||rho^(n) - rho^(n)^dagger||
  [[nodiscard]] double hermiticity_deviation() const;
};

// Time derivative of every entry; throws ConfigError for an empty window.
[[nodiscard]] ConditionalHierarchy conditional_rhs(const ConditionalHierarchy& h, const Model& m);
void conditional_rhs(const ConditionalHierarchy& h, const Model& m, ConditionalHierarchy& out);

[[nodiscard]] DensityMatrix unconditional_rhs(const DensityMatrix& rho, const Model& m);

// Right-hand side of the N equation of motion with the qubit state rho as source.
[[nodiscard]] Matrix2c auxiliary_rhs(const Matrix2c& nhat, const DensityMatrix& rho, const Model& m);

[[nodiscard]] LiouvillianMatrix liouvillian_matrix(const Model& m);

}  // namespace qpcnoise
