#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qpcnoise/errors.hpp"
#include "qpcnoise/superoperator.hpp"

using namespace qpcnoise;
using cd = std::complex<double>;

namespace {

Model fig1_unit_eta(double chi = 0.1, double v = 2.0, double temp = 1.0, FilterMode mode = FilterMode::Full) {
  return make_model({0.0, 0.5}, oracle::unit_eta_detector(1.0, chi, v, temp), mode);
}

}  // namespace

TEST_CASE("filtered operators") {
  SUBCASE("no coupling asymmetry leaves a scalar") {
    const auto m = fig1_unit_eta(0.0);
    const double fwd = c_tilde(Sign::Minus, 0.0, m.detector);
    const double bwd = c_tilde(Sign::Plus, 0.0, m.detector);
    CHECK(oracle::max_abs(m.ops.q_minus - fwd * Matrix2c::Identity()) < 1e-15);
    CHECK(oracle::max_abs(m.ops.q_plus - bwd * Matrix2c::Identity()) < 1e-15);
    CHECK(oracle::max_abs(m.ops.q_bar - 2.0 * Matrix2c::Identity()) < 1e-14);
  }
  SUBCASE("off-diagonal elements pick up the energy exchange") {
    const auto m = fig1_unit_eta();
    CHECK(m.ops.q_minus(0, 1).real() == doctest::Approx(0.05 * static_cast<double>(oracle::kernel_ld(1.0L, 1.0L))).epsilon(1e-14));
    CHECK(m.ops.q_minus(0, 1).real() == doctest::Approx(0.079099).epsilon(1e-5));
    CHECK(m.ops.q_minus(1, 0).real() == doctest::Approx(0.05 * static_cast<double>(oracle::kernel_ld(3.0L, 1.0L))).epsilon(1e-14));
    CHECK(m.ops.q_plus(0, 1).real() == doctest::Approx(0.05 * static_cast<double>(oracle::kernel_ld(-3.0L, 1.0L))).epsilon(1e-14));
    CHECK(m.ops.q_minus(0, 0).real() == doctest::Approx(1.05 * static_cast<double>(oracle::kernel_ld(2.0L, 1.0L))).epsilon(1e-14));
  }
  SUBCASE("high bias flattens the filter") {
    const auto m = fig1_unit_eta(0.1, 100.0);
    const Matrix2c ratio = m.ops.q_minus.cwiseQuotient(m.q);
    const double mean = ratio.real().mean();
    CHECK(ratio.real().maxCoeff() / mean - 1.0 < 0.02);
    CHECK(1.0 - ratio.real().minCoeff() / mean < 0.02);
  }
  SUBCASE("frozen mode uses lambda = 0 everywhere") {
    const auto m = fig1_unit_eta(0.1, 2.0, 1.0, FilterMode::Frozen);
    const double fwd = c_tilde(Sign::Minus, 0.0, m.detector);
    CHECK(oracle::max_abs(m.ops.q_minus - fwd * m.q) < 1e-14);
  }
}

TEST_CASE("conditional generator: bare detector jump rates") {
  const auto m = fig1_unit_eta(0.0);
  ConditionalHierarchy h(-2, 2);
  h.at(0) = 0.5 * Matrix2c::Identity();
  const auto d = conditional_rhs(h, m);
  const double fwd = c_tilde(Sign::Minus, 0.0, m.detector);
  const double bwd = c_tilde(Sign::Plus, 0.0, m.detector);
  CHECK(d.at(0)(0, 0).real() == doctest::Approx(-0.5 * (fwd + bwd)).epsilon(1e-14));
  CHECK(d.at(0)(0, 0).real() == doctest::Approx(-0.5 * 2.62608).epsilon(1e-5));
  CHECK(d.at(1)(0, 0).real() == doctest::Approx(0.5 * fwd).epsilon(1e-14));
  CHECK(d.at(-1)(1, 1).real() == doctest::Approx(0.5 * bwd).epsilon(1e-14));
  CHECK(oracle::max_abs(d.at(2)) == 0.0);
  CHECK(std::abs(d.total_trace()) < 1e-15);
}

TEST_CASE("conditional generator conserves total trace and hermiticity") {
  std::mt19937_64 rng(3);
  const auto m = fig1_unit_eta(0.3, 0.7, 0.4);
  ConditionalHierarchy h(-3, 3);
  for (int n = -2; n <= 2; ++n) h.at(n) = oracle::random_density(rng) / 5.0;
  const auto d = conditional_rhs(h, m);
  CHECK(std::abs(d.total_trace()) < 1e-14);
  CHECK(d.hermiticity_deviation() < 1e-14);
  // Summing over n reproduces the unconditional generator.
  CHECK(oracle::max_abs(d.reduced() - unconditional_rhs(h.reduced(), m)) < 1e-14);
  CHECK_THROWS_AS((void)conditional_rhs(ConditionalHierarchy{}, m), ConfigError);
  CHECK_THROWS_AS(ConditionalHierarchy(2, 1), ConfigError);
}

TEST_CASE("unconditional generator limits") {
  SUBCASE("no coupling asymmetry gives coherent evolution only") {
    const auto m = fig1_unit_eta(0.0);
    std::mt19937_64 rng(5);
    const auto rho = oracle::random_density(rng);
    const Matrix2c expected = cd(0, -1) * (m.hamiltonian * rho - rho * m.hamiltonian);
    CHECK(oracle::max_abs(unconditional_rhs(rho, m) - expected) < 1e-14);
  }
  SUBCASE("no interdot tunnelling keeps populations frozen") {
    const auto m = make_model({0.5, 0.0}, oracle::unit_eta_detector(1.0, 0.4, 2.0, 1.0));
    DensityMatrix rho = DensityMatrix::Zero();
    rho(0, 0) = 0.3;
    rho(1, 1) = 0.7;
    CHECK(oracle::max_abs(unconditional_rhs(rho, m)) < 1e-15);
  }
  SUBCASE("equilibrium detector relaxes to the Gibbs state") {
    const auto m = fig1_unit_eta(0.05, 0.0, 1.0);
    DensityMatrix g = DensityMatrix::Zero();
    g(0, 0) = std::exp(-0.5);
    g(1, 1) = std::exp(0.5);
    g /= g.trace();
    CHECK(oracle::max_abs(unconditional_rhs(g, m)) < 1e-13);
  }
}

TEST_CASE("property: Liouvillian matrix matches the matrix-form generator") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const QubitParams q{u(rng) - 0.5, u(rng) + 0.05};
    const auto d = oracle::unit_eta_detector(0.5 + u(rng), u(rng), 4.0 * u(rng) - 2.0, u(rng));
    const auto m = make_model(q, d, trial % 2 ? FilterMode::Frozen : FilterMode::Full);
    const auto l = liouvillian_matrix(m);
    const auto rho = oracle::random_density(rng);
    const Matrix2c via_l = unvectorize(l * vectorize(rho));
    CHECK(oracle::max_abs(via_l - unconditional_rhs(rho, m)) < 1e-13);
    CHECK(oracle::max_abs(unconditional_rhs(rho, m) - unconditional_rhs(rho, m).adjoint()) < 1e-13);
    CHECK(std::abs(unconditional_rhs(rho, m).trace()) < 1e-13);

    // Linearity of both generators.
    const auto sigma = oracle::random_hermitian(rng);
    const Matrix2c nhat = oracle::random_hermitian(rng);
    const double a = u(rng);
    const Matrix2c lhs = unconditional_rhs(a * rho + sigma, m);
    CHECK(oracle::max_abs(lhs - a * unconditional_rhs(rho, m) - unconditional_rhs(sigma, m)) < 1e-12);
    const Matrix2c aux = auxiliary_rhs(a * nhat, a * rho, m);
    CHECK(oracle::max_abs(aux - a * auxiliary_rhs(nhat, rho, m)) < 1e-12);

    Eigen::ComplexEigenSolver<LiouvillianMatrix> es(l);
    int zeros = 0;
    for (int k = 0; k < 4; ++k) {
      CHECK(es.eigenvalues()(k).real() < 1e-12);
      if (std::abs(es.eigenvalues()(k)) < 1e-10) ++zeros;
    }
    CHECK(zeros == 1);
  }
}

TEST_CASE("vectorisation is row-major") {
  Matrix2c x;
  x << 1.0, 2.0, 3.0, 4.0;
  const auto v = vectorize(x);
  CHECK(v(1) == cd(2.0));
  CHECK(v(2) == cd(3.0));
  CHECK(unvectorize(v) == x);
}
