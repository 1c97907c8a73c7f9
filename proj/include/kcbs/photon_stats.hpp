#pragma once

#include "kcbs/constants.hpp"
#include "kcbs/fock.hpp"

namespace kcbs {

/// Largest S reachable by any statistical mixture of coherent states.
inline constexpr double kCoherentMixtureBound = 1.25;

/// S above this certifies a nonzero single-photon population (the value of
/// a pure two-photon input, 2 sqrt(5) - 3).
inline const double kSinglePhotonCertBound = 2.0 * std::sqrt(5.0) - 3.0;

/// S at or above this indicates single- and/or two-photon components
/// (inputs with three or more photons stay below it).
inline constexpr double kFewPhotonBound = 0.839;

/// S for a coherent state of mean photon number alpha_sq in mode 1 under
/// the optimal family:
///   S = 5 (exp(-alpha_sq / sqrt 5) - exp(-2 alpha_sq / sqrt 5)).
/// Throws for negative alpha_sq.
double s_coherent(double alpha_sq);

/// Upper bound on s_coherent, attained at alpha_sq = sqrt(5) ln 2.
double classical_bound();

/// S for the n-photon Fock input: 5 [(1 - 1/sqrt5)^n - (1 - 2/sqrt5)^n].
double s_fock(int n);

/// S for a photon-number-diagonal mixture: sum_n rho_nn s_fock(n).
double s_mixture(const PhotonNumberMixture& mixture);

/// Single-photon population below which a vacuum/single-photon mixture
/// stops violating the classical bound: 2 / sqrt(5).
double loss_threshold_single();

/// Same threshold for a single/two-photon mixture: (5 - sqrt 5) / 4.
double loss_threshold_two_photon();

/// Independent route to s_fock(n): n! times the coefficient of x^n in
/// exp(x) * s_coherent(x), extracted by exact binomial convolution of the
/// two series. Supports 0 <= n <= 30; throws outside that range.
double generating_oracle(int n);

/// Two-index variant for the |n><m| coefficient. The generating function
/// depends on alpha * conj(alpha) only, so its double series carries no
/// alpha^m conj(alpha)^n monomial with n != m: off-diagonal terms vanish
/// identically.
double generating_oracle(int n, int m);

enum class NonclassicalityLevel {
  kClassicalCompatible,   // S <= 1.25
  kNonclassical,          // S > 1.25
  kSinglePhotonCertified  // S > 2 sqrt(5) - 3
};

struct NonclassicalityVerdict {
  NonclassicalityLevel level = NonclassicalityLevel::kClassicalCompatible;
  /// Informational: S >= 0.839, single- and/or two-photon components
  /// present.
  bool few_photon_component = false;
  double s = 0.0;
};

NonclassicalityVerdict classify_s(double s);

const char* to_string(NonclassicalityLevel level);

}  // namespace kcbs
