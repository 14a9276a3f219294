#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qpcnoise/analytic.hpp"
#include "qpcnoise/errors.hpp"
#include "qpcnoise/hierarchy.hpp"
#include "qpcnoise/observables.hpp"

using namespace qpcnoise;

TEST_CASE("rate constants of the symmetric qubit") {
  const auto d = oracle::figure_detector(2.0, 1.0, 0.1);
  const auto b = diagonalize({0.0, 0.5});
  const auto r = rate_constants(d, b);
  const double eta = d.eta();
  CHECK(r.i_a == doctest::Approx(eta * 1.1 * 1.1 * 2.0).epsilon(1e-14));
  CHECK(r.i_b == doctest::Approx(eta * 2.0).epsilon(1e-14));
  CHECK(r.i0 == doctest::Approx(0.5 * (r.i_a + r.i_b)).epsilon(1e-15));
  CHECK(r.i_d == doctest::Approx(r.i_a - r.i_b).epsilon(1e-15));
  CHECK(r.g_plus == doctest::Approx(g_pm(Sign::Plus, 1.0, 2.0, 1.0)).epsilon(1e-15));
  CHECK(r.gamma_d > 0.0);
  CHECK(r.i_bar == doctest::Approx(86.76588).epsilon(1e-6));
}

TEST_CASE("stationary current agrees with the numeric steady state") {
  for (double v : {0.3, 2.0, 7.0}) {
    for (double temp : {0.0, 0.5, 3.0}) {
      const auto d = oracle::figure_detector(v, temp, 0.2);
      const auto m = make_model({0.0, 0.5}, d);
      CHECK(stationary_current_symmetric(d, m.basis) ==
            doctest::Approx(current(steady_state(m), m)).epsilon(1e-9));
    }
  }
}

TEST_CASE("coherent weight") {
  const auto b = diagonalize({0.0, 0.5});
  CHECK(s1_prefactor(oracle::figure_detector(0.5, 0.0, 0.1), b) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(s1_prefactor(oracle::figure_detector(1e4, 1.0, 0.1), b) == doctest::Approx(1.0).epsilon(1e-4));
  // Continuous through V = 0 at finite temperature.
  const double at0 = s1_prefactor(oracle::figure_detector(0.0, 1.0, 0.1), b);
  CHECK(s1_prefactor(oracle::figure_detector(1e-7, 1.0, 0.1), b) == doctest::Approx(at0).epsilon(1e-6));
}

TEST_CASE("closed-form spectrum structure") {
  const auto d = oracle::figure_detector(2.0, 1.0, 0.1);
  const auto b = diagonalize({0.0, 0.5});
  const std::vector<double> w{0.0, 1.0, 1e4};
  const auto s = analytic_spectrum(d, b, w);
  REQUIRE(s.components);
  const double s0 = analytic_pedestal(d, b);
  for (std::size_t i = 0; i < w.size(); ++i) {
    CHECK(s.values[i] == doctest::Approx(s.components->s0[i] + s.components->s1[i] + s.components->s2[i]).epsilon(1e-14));
    CHECK(s.components->s0[i] == s0);
  }
  CHECK(s.values[2] == doctest::Approx(s0).epsilon(1e-6));
  CHECK(analytic_peak_to_pedestal(d, b) == doctest::Approx((s.values[1] - s0) / s0).epsilon(1e-12));

  // Decoupled qubit: pure shot noise of the bare contact.
  const auto flat = analytic_spectrum(oracle::figure_detector(2.0, 1.0, 0.0), b, w);
  for (double v : flat.values) CHECK(v == doctest::Approx(2.0 * d.eta() * x_coth(2.0, 1.0)).epsilon(1e-14));
}

TEST_CASE("peak-to-pedestal approaches four at high bias") {
  const auto b = diagonalize({0.0, 0.5});
  const double r = analytic_peak_to_pedestal(oracle::figure_detector(50.0, 0.1, 0.05), b);
  CHECK(r <= 4.0);
  CHECK(r > 3.99);
  CHECK(analytic_peak_to_pedestal(oracle::figure_detector(100.0, 1.0, 0.002), b) == doctest::Approx(3.9998).epsilon(1e-4));
}

TEST_CASE("closed forms reject unsupported points") {
  const auto asym = diagonalize({0.3, 0.4});
  const auto d = oracle::figure_detector(2.0, 1.0, 0.1);
  CHECK_THROWS_AS((void)rate_constants(d, asym), AsymmetricQubitError);
  CHECK_THROWS_AS((void)analytic_pedestal(d, asym), AsymmetricQubitError);
  const auto sym = diagonalize({0.0, 0.5});
  CHECK_THROWS_AS((void)rate_constants(oracle::figure_detector(-1.0, 1.0, 0.1), sym), ConfigError);
}
