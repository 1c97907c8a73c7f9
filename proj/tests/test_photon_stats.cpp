#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "kcbs/fock.hpp"
#include "kcbs/kcbs_eval.hpp"
#include "kcbs/photon_stats.hpp"

using namespace kcbs;

namespace {
const double kRoot5 = std::sqrt(5.0);
}

TEST_CASE("s_coherent") {
  CHECK(s_coherent(0.0) == 0.0);
  CHECK(s_coherent(kRoot5 * std::log(2.0)) ==
        doctest::Approx(1.25).epsilon(1e-14));
  CHECK(s_coherent(100.0) < 1e-15);  // vanishes for bright inputs
  CHECK_THROWS_AS(s_coherent(-0.5), std::invalid_argument);
}

TEST_CASE("classical_bound dominates the coherent curve") {
  CHECK(classical_bound() == 1.25);

  double best = 0.0;
  double best_x = 0.0;
  for (int i = 0; i <= 200000; ++i) {
    const double x = i * 1e-4;
    const double s = s_coherent(x);
    if (s > best) {
      best = s;
      best_x = x;
    }
    CHECK(s <= 1.25 + 1e-9);
  }
  CHECK(best == doctest::Approx(1.25).epsilon(1e-8));
  CHECK(best_x == doctest::Approx(kRoot5 * std::log(2.0)).epsilon(1e-3));

  // Stationarity at the maximum, by central differences.
  const double x0 = kRoot5 * std::log(2.0);
  const double h = 1e-5;
  const double derivative = (s_coherent(x0 + h) - s_coherent(x0 - h)) / (2 * h);
  CHECK(std::abs(derivative) < 1e-6);
}

TEST_CASE("s_fock spot values") {
  CHECK(s_fock(0) == 0.0);
  CHECK(s_fock(1) == doctest::Approx(kRoot5).epsilon(1e-14));
  CHECK(s_fock(2) == doctest::Approx(2.0 * kRoot5 - 3.0).epsilon(1e-14));
  CHECK(s_fock(3) == doctest::Approx(0.839).epsilon(6e-4));
  CHECK_THROWS_AS(s_fock(-1), std::invalid_argument);

  // Beyond three photons the value stays under 0.467, peaking at n = 4.
  double best = 0.0;
  for (int n = 4; n <= 30; ++n) {
    best = std::max(best, s_fock(n));
    CHECK(s_fock(n) < 0.467);
  }
  CHECK(best == s_fock(4));
  CHECK(best == doctest::Approx(0.46625).epsilon(1e-4));
}

TEST_CASE("s_mixture linear combinations") {
  CHECK(s_mixture(PhotonNumberMixture({0.0, 1.0})) ==
        doctest::Approx(kRoot5).epsilon(1e-14));
  CHECK(s_mixture(PhotonNumberMixture({0.2, 0.8})) ==
        doctest::Approx(0.8 * kRoot5).epsilon(1e-14));
  CHECK(s_mixture(PhotonNumberMixture({0.0, 0.7, 0.3})) ==
        doctest::Approx(0.7 * kRoot5 + 0.3 * (2.0 * kRoot5 - 3.0))
            .epsilon(1e-14));
}

TEST_CASE("loss thresholds") {
  CHECK(loss_threshold_single() == doctest::Approx(0.894427).epsilon(1e-6));
  CHECK(loss_threshold_two_photon() ==
        doctest::Approx(0.690983).epsilon(1e-6));

  // At the thresholds the mixtures sit exactly on the classical bound.
  const double rho11 = loss_threshold_single();
  CHECK(std::abs(s_mixture(PhotonNumberMixture({1.0 - rho11, rho11})) - 2.0) <
        1e-12);

  const double r11 = loss_threshold_two_photon();
  CHECK(std::abs(s_mixture(PhotonNumberMixture({0.0, r11, 1.0 - r11})) - 2.0) <
        1e-12);

  // Equivalent loss-rate form of the single-photon threshold.
  CHECK(1.0 - loss_threshold_single() ==
        doctest::Approx(0.1055728090).epsilon(1e-9));
}

TEST_CASE("generating_oracle matches the closed form") {
  CHECK(generating_oracle(0) == 0.0);
  CHECK(generating_oracle(1) == doctest::Approx(kRoot5).epsilon(1e-10));
  CHECK(generating_oracle(5) == doctest::Approx(s_fock(5)).epsilon(1e-10));
  for (int n = 0; n <= 30; ++n) {
    CHECK(std::abs(generating_oracle(n) - s_fock(n)) < 1e-9);
  }
  CHECK_THROWS_AS(generating_oracle(-1), std::invalid_argument);
  CHECK_THROWS_AS(generating_oracle(31), std::invalid_argument);
}

TEST_CASE("generating_oracle off-diagonal terms vanish") {
  CHECK(generating_oracle(0, 1) == 0.0);
  CHECK(generating_oracle(3, 2) == 0.0);
  CHECK(generating_oracle(7, 12) == 0.0);
  CHECK(generating_oracle(4, 4) == doctest::Approx(s_fock(4)).epsilon(1e-10));
}

TEST_CASE("Poissonian mixtures reproduce the coherent curve") {
  for (double lambda : {0.5, 1.0, 2.0, 5.0, 10.0}) {
    const double via_mixture = s_mixture(poisson_mixture(lambda, 60));
    CHECK(std::abs(via_mixture - s_coherent(lambda)) < 1e-9);
    CHECK(via_mixture <= 1.25 + 1e-12);
  }
}

TEST_CASE("closed forms agree with the sequential pipeline") {
  const auto family = optimal_family();

  const auto photon = evaluate_single_photon(family, make_single_photon(1, 3));
  CHECK(std::abs(photon.s_value - s_fock(1)) < 1e-10);

  for (double alpha_sq : {0.1, 0.5, 1.0, 2.0, 5.0}) {
    const auto coherent =
        evaluate_coherent(family, make_coherent(std::sqrt(alpha_sq), 3));
    CHECK(std::abs(coherent.s_value - s_coherent(alpha_sq)) < 1e-10);
  }
}

TEST_CASE("classify_s levels") {
  CHECK(classify_s(0.3).level == NonclassicalityLevel::kClassicalCompatible);
  CHECK_FALSE(classify_s(0.3).few_photon_component);

  CHECK(classify_s(1.3).level == NonclassicalityLevel::kNonclassical);
  CHECK(classify_s(1.3).few_photon_component);

  CHECK(classify_s(2.0).level ==
        NonclassicalityLevel::kSinglePhotonCertified);

  // A pure two-photon input sits exactly on the certification bound and
  // must not be certified.
  CHECK(classify_s(kSinglePhotonCertBound).level ==
        NonclassicalityLevel::kNonclassical);
  CHECK(s_fock(2) == doctest::Approx(kSinglePhotonCertBound).epsilon(1e-14));

  CHECK(classify_s(0.9).few_photon_component);
  CHECK(classify_s(s_fock(3)).few_photon_component == false);

  CHECK(std::string(to_string(classify_s(2.2).level)) ==
        "single-photon-certified");
}
