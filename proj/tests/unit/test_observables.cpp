#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qpcnoise/analytic.hpp"
#include "qpcnoise/errors.hpp"
#include "qpcnoise/observables.hpp"

using namespace qpcnoise;

namespace {

double max_rel(const std::vector<double>& a, const std::vector<double>& b) {
  double e = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]) / std::abs(b[i]));
  return e;
}

}  // namespace

TEST_CASE("grids") {
  const auto g = default_omega_grid(1.0);
  CHECK(g.size() == 241);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(g[40] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS((void)uniform_grid(1.0, 0.0, 5), ConfigError);
}

TEST_CASE("current") {
  SUBCASE("bare detector carries eta V T^2") {
    const auto m = make_model({0.0, 0.5}, oracle::unit_eta_detector(1.0, 0.0, 2.0, 1.0));
    CHECK(current(DensityMatrix(0.5 * Matrix2c::Identity()), m) == doctest::Approx(2.0).epsilon(1e-14));
  }
  SUBCASE("stationary current of the figure qubit") {
    const auto d = oracle::figure_detector(2.0, 1.0, 0.1);
    const auto m = make_model({0.0, 0.5}, d);
    const double i = current(steady_state(m), m);
    CHECK(i == doctest::Approx(stationary_current_symmetric(d, m.basis)).epsilon(1e-10));
    CHECK(i == doctest::Approx(86.76588).epsilon(1e-6));
  }
  SUBCASE("unbiased cold detector carries no current") {
    const auto m = make_model({0.0, 0.5}, oracle::figure_detector(0.0, 0.0, 0.1));
    CHECK(std::abs(current(steady_state(m), m)) < 1e-12);
  }
}

TEST_CASE("second-moment rate") {
  const auto m = make_model({0.0, 0.5}, oracle::unit_eta_detector(1.0, 0.0, 2.0, 1.0));
  const DensityMatrix rho = 0.5 * Matrix2c::Identity();
  const double noise = c_tilde(Sign::Minus, 0.0, m.detector) + c_tilde(Sign::Plus, 0.0, m.detector);
  CHECK(dn2_dt(Matrix2c::Zero(), rho, m) == doctest::Approx(noise).epsilon(1e-14));
  CHECK(noise == doctest::Approx(2.62608).epsilon(1e-5));
  const double t = 0.7;
  const Matrix2c nhat = 2.0 * t * rho;
  CHECK(dn2_dt(nhat, rho, m) == doctest::Approx(2.0 * 4.0 * t + noise).epsilon(1e-14));
}

TEST_CASE("MacDonald spectrum") {
  SUBCASE("bare detector gives flat shot noise") {
    const auto d = oracle::unit_eta_detector(1.0, 0.0, 2.0, 1.0);
    const auto m = make_model({0.0, 0.5}, d);
    const auto w = uniform_grid(0.0, 3.0, 31);
    const auto s = macdonald_spectrum(m, SolverConfig{}, w, DensityMatrix(0.5 * Matrix2c::Identity()));
    const double flat = 2.0 * d.eta() * d.v * d.t_amp * d.t_amp / std::tanh(d.v / (2.0 * d.temp));
    for (double v : s.spectrum.values) CHECK(v == doctest::Approx(flat).epsilon(1e-6));
    CHECK(s.i_bar == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("symmetric qubit matches the closed form") {
    const auto d = oracle::figure_detector(2.0, 1.0, 0.1);
    const auto m = make_model({0.0, 0.5}, d);
    const auto w = uniform_grid(0.1, 3.0, 30);
    const auto num = macdonald_spectrum(m, SolverConfig{}, w);
    const auto ana = analytic_spectrum(d, m.basis, w);
    CHECK(max_rel(num.spectrum.values, ana.values) < 1e-5);
    CHECK_FALSE(num.diagnostics.positivity_violated());
  }
  SUBCASE("asymmetric qubit matches the resolvent") {
    const auto d = oracle::figure_detector(2.0, 1.0, 0.1);
    const auto m = make_model({0.3, 0.4}, d);
    const auto w = uniform_grid(0.05, 3.0, 60);
    const auto num = macdonald_spectrum(m, SolverConfig{}, w);
    const auto ref = oracle::resolvent_spectrum(m, steady_state(m), w);
    CHECK(max_rel(num.spectrum.values, ref) < 1e-5);
    CHECK(num.spectrum.values.front() > sample_near(num.spectrum, 1.0));
  }
  SUBCASE("non-stationary initial state is rejected") {
    const auto m = make_model({0.0, 0.5}, oracle::figure_detector(2.0, 1.0, 0.1));
    DensityMatrix e = DensityMatrix::Zero();
    e(0, 0) = 1.0;
    const std::vector<double> w{1.0};
    CHECK_THROWS_AS((void)macdonald_spectrum(m, SolverConfig{}, w, e), ConfigError);
  }
  SUBCASE("too short a horizon is reported") {
    const auto m = make_model({0.0, 0.5}, oracle::figure_detector(2.0, 1.0, 0.1));
    SolverConfig cfg;
    cfg.t_final = 0.5;
    const std::vector<double> w{1.0};
    CHECK_THROWS_AS((void)macdonald_spectrum(m, cfg, w), NonDecayingRemainderError);
  }
}

TEST_CASE("peak-to-pedestal") {
  Spectrum flat{{0.0, 1.0, 2.0}, {3.0, 3.0, 3.0}, std::nullopt};
  CHECK(peak_to_pedestal(flat, 1.0) == 0.0);
  Spectrum peaked{{0.0, 0.9, 1.0, 1.1, 5.0}, {1.0, 2.0, 5.0, 2.0, 1.0}, std::nullopt};
  CHECK(peak_to_pedestal(peaked, 1.0) == doctest::Approx(4.0));
  CHECK(peak_to_pedestal(peaked, 1.0, 2.5) == doctest::Approx(1.0));
  CHECK(sample_near(peaked, 0.96) == 5.0);

  double previous = -1.0;
  for (double v : {1.0, 2.0, 3.0, 5.0}) {
    const auto d = oracle::figure_detector(v, 1.0, 0.1);
    const auto m = make_model({0.0, 0.5}, d);
    const auto w = uniform_grid(0.5, 1.5, 101);
    const auto s = macdonald_spectrum(m, SolverConfig{}, w);
    const double s0 = analytic_pedestal(d, m.basis);
    const double at_delta = (sample_near(s.spectrum, 1.0) - s0) / s0;
    CHECK(at_delta == doctest::Approx(analytic_peak_to_pedestal(d, m.basis)).epsilon(1e-5));
    CHECK(at_delta > previous);
    CHECK(at_delta <= 4.0);
    CHECK(peak_to_pedestal(s.spectrum, 1.0, s0) >= at_delta);
    previous = at_delta;
  }
}
