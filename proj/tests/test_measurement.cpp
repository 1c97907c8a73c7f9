#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "kcbs/measurement.hpp"
#include "test_helpers.hpp"

using namespace kcbs;

namespace {
const double kInvSqrt5 = 1.0 / std::sqrt(5.0);
}

TEST_CASE("MeasurementContext validates the setting") {
  CHECK(MeasurementContext(5).second() == 1);
  CHECK(MeasurementContext(2).second() == 3);
  CHECK_THROWS_AS(MeasurementContext(0), std::invalid_argument);
  CHECK_THROWS_AS(MeasurementContext(6), std::invalid_argument);
}

TEST_CASE("detect_mode1_photon") {
  const auto certain = detect_mode1_photon(make_single_photon(1, 3));
  CHECK(certain.p_click == doctest::Approx(1.0));
  CHECK(norm_squared(certain.post_noclick) == 0.0);

  const auto never = detect_mode1_photon(make_single_photon(2, 3));
  CHECK(never.p_click == 0.0);
  CHECK(never.p_noclick == 1.0);
  CHECK((never.post_noclick.amplitudes() -
         make_single_photon(2, 3).amplitudes())
            .norm() == 0.0);

  // Rotating |1>_1 into the measurement frame leaves |U_11|^2 = 1/sqrt5 on
  // the monitored mode.
  const auto family = optimal_family();
  const auto rotated =
      apply_single_photon(family.unitary(1).adjoint(),
                          make_single_photon(1, 3));
  const auto det = detect_mode1_photon(rotated);
  CHECK(det.p_click == doctest::Approx(kInvSqrt5).epsilon(1e-12));
  CHECK(norm_squared(det.post_noclick) ==
        doctest::Approx(1.0 - kInvSqrt5).epsilon(1e-12));

  Eigen::RowVectorXcd zero = Eigen::RowVectorXcd::Zero(3);
  CHECK_THROWS_AS(detect_mode1_photon(SinglePhotonState(zero)),
                  std::invalid_argument);
}

TEST_CASE("detect_mode1_coherent") {
  const auto vac = detect_mode1_coherent(make_coherent(0.0, 3));
  CHECK(vac.p_noclick == 1.0);
  CHECK(vac.post_noclick.log_weight() == 0.0);

  const auto one = detect_mode1_coherent(make_coherent(1.0, 3));
  CHECK(one.p_noclick == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(one.post_noclick.log_weight() == doctest::Approx(-0.5));
  CHECK(one.post_noclick.displacements()(0) == std::complex<double>(0, 0));
}

TEST_CASE("measure_observable on single photons") {
  const auto family = optimal_family();
  const auto input = make_single_photon(1, 3);

  for (int j = 1; j <= 5; ++j) {
    const auto m = measure_observable(j, family, input);
    CHECK(m.p_plus == doctest::Approx(1.0 - kInvSqrt5).epsilon(1e-12));
    CHECK(m.p_minus == doctest::Approx(kInvSqrt5).epsilon(1e-12));
  }

  // Repeatability: conditioning on +1 and measuring the same setting again
  // gives +1 with certainty.
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const auto state = kcbs_test::random_state(rng);
    const int j = 1 + static_cast<int>(rng() % 5);
    const auto first = measure_observable(j, family, state);
    if (norm_squared(first.post_plus) < 1e-9) continue;
    const auto again = measure_observable(j, family, first.post_plus);
    CHECK(again.p_plus == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("measure_observable on coherent states") {
  const auto family = optimal_family();

  const auto vac = measure_observable(1, family, make_coherent(0.0, 3));
  CHECK(vac.p_plus == 1.0);

  // |alpha|^2 = 1 under the optimal family: p(+1) = exp(-1/sqrt5).
  const auto one = measure_observable(2, family, make_coherent(1.0, 3));
  CHECK(one.p_plus == doctest::Approx(std::exp(-kInvSqrt5)).epsilon(1e-12));
  CHECK(one.p_plus == doctest::Approx(0.63940).epsilon(1e-4));

  const auto again = measure_observable(2, family, one.post_plus);
  CHECK(again.p_plus == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sequential_context on the optimal single-photon input") {
  const auto family = optimal_family();
  const auto input = make_single_photon(1, 3);

  for (int j = 1; j <= 5; ++j) {
    const auto table = sequential_context(MeasurementContext(j), family, input);
    CHECK(table.p_pp ==
          doctest::Approx(1.0 - 2.0 * kInvSqrt5).epsilon(1e-12));
    CHECK(table.p_mm == 0.0);
    CHECK(table.marginal_first ==
          doctest::Approx(1.0 - kInvSqrt5).epsilon(1e-12));
    CHECK(table.total() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(table.click_split_defined);
    CHECK(table.p_pm + table.p_pp ==
          doctest::Approx(table.marginal_first).epsilon(1e-12));
  }
}

TEST_CASE("sequential_context handles a certain first click") {
  const auto family = optimal_family();
  // The state measured by setting 1 itself: first outcome is -1 surely.
  const SinglePhotonState psi1(family.unitary(1).entries().row(0));
  const auto table = sequential_context(MeasurementContext(1), family, psi1);
  CHECK(table.p_mp == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(table.p_pp == 0.0);
  CHECK(table.p_pm == 0.0);
  CHECK(table.p_mm == 0.0);
}

TEST_CASE("sequential_context table properties over random states") {
  const auto family = optimal_family();
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 500; ++trial) {
    const auto state = kcbs_test::random_state(rng);
    const MeasurementContext context(1 + static_cast<int>(rng() % 5));
    const auto t = sequential_context(context, family, state);
    CHECK(std::abs(t.total() - 1.0) < 1e-10);
    CHECK(std::abs(t.p_mm) < 1e-12);  // adjacent clicks are exclusive
    CHECK(t.p_pp >= -1e-15);
    CHECK(t.p_pm >= -1e-15);
    CHECK(t.p_mp >= -1e-15);
    CHECK(std::abs(t.marginal_second - (t.p_pp + t.p_mp)) < 1e-12);
  }
}

TEST_CASE("sequential_context on coherent inputs") {
  const auto family = optimal_family();

  const auto table =
      sequential_context(MeasurementContext(1), family, make_coherent(1.0, 3));
  CHECK(table.p_pp ==
        doctest::Approx(std::exp(-2.0 * kInvSqrt5)).epsilon(1e-12));
  CHECK_FALSE(table.click_split_defined);
  CHECK(std::isnan(table.p_mp));
  CHECK(table.total() == doctest::Approx(1.0).epsilon(1e-12));

  // Vacuum input keeps the (trivial) click split.
  const auto vac =
      sequential_context(MeasurementContext(3), family, make_coherent(0.0, 3));
  CHECK(vac.click_split_defined);
  CHECK(vac.p_pp == doctest::Approx(1.0));
  CHECK(vac.p_mp == 0.0);
  CHECK(vac.marginal_first == doctest::Approx(1.0));
}

TEST_CASE("coherent joint no-click probability is order independent") {
  const auto family = optimal_family();
  const auto input = make_coherent(std::complex<double>(0.9, 0.4), 3);
  for (int j = 1; j <= 5; ++j) {
    const int next = KcbsMeasurementFamily::successor(j);
    const auto forward = measure_observable(j, family, input);
    const auto then = measure_observable(next, family, forward.post_plus);
    const auto backward = measure_observable(next, family, input);
    const auto back_then = measure_observable(j, family, backward.post_plus);
    CHECK(forward.p_plus * then.p_plus ==
          doctest::Approx(backward.p_plus * back_then.p_plus).epsilon(1e-12));
  }
}

TEST_CASE("coherent results depend on alpha only through its modulus") {
  const auto family = optimal_family();
  const double mag = 1.3;
  const auto reference =
      sequential_context(MeasurementContext(2), family,
                         make_coherent(mag, 3));
  for (double phase : {0.3, 1.7, 4.0}) {
    const auto rotated = sequential_context(
        MeasurementContext(2), family,
        make_coherent(std::polar(mag, phase), 3));
    CHECK(rotated.p_pp == doctest::Approx(reference.p_pp).epsilon(1e-12));
    CHECK(rotated.marginal_first ==
          doctest::Approx(reference.marginal_first).epsilon(1e-12));
  }
}

TEST_CASE("conditioning chains conserve probability") {
  const auto family = optimal_family();
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 200; ++trial) {
    auto state = kcbs_test::random_state(rng);
    double click_weight = 0.0;
    for (int step = 0; step < 3; ++step) {
      const int j = 1 + static_cast<int>(rng() % 5);
      const double w_before = norm_squared(state);
      if (w_before < 1e-9) break;
      const auto m = measure_observable(j, family, state);
      click_weight += w_before * m.p_minus;
      state = m.post_plus;
    }
    CHECK(std::abs(norm_squared(state) + click_weight - 1.0) < 1e-10);
  }
}

TEST_CASE("no_signaling_check") {
  const auto family = optimal_family();

  const auto ideal = no_signaling_check(MeasurementContext(1), family,
                                        make_single_photon(1, 3));
  CHECK(ideal.pass);
  CHECK(ideal.lhs == doctest::Approx(1.0 - kInvSqrt5).epsilon(1e-12));
  CHECK(ideal.rhs == doctest::Approx(1.0 - kInvSqrt5).epsilon(1e-12));

  const auto vac = no_signaling_check(MeasurementContext(2), family,
                                      make_coherent(0.0, 3));
  CHECK(vac.pass);
  CHECK(vac.lhs == doctest::Approx(1.0));
  CHECK(vac.rhs == doctest::Approx(1.0));

  // The click branch of a bright coherent input is not modeled.
  CHECK_THROWS_AS(no_signaling_check(MeasurementContext(2), family,
                                     make_coherent(1.0, 3)),
                  std::domain_error);

  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto state = kcbs_test::random_state(rng);
    const MeasurementContext context(1 + static_cast<int>(rng() % 5));
    CHECK(no_signaling_check(context, family, state).pass);
  }
}
