#pragma once

#include <cmath>

namespace kcbs {

// Tolerance for physics identities: unitarity, mode orthogonality,
// marginal consistency.
inline constexpr double kPhysicsTol = 1e-10;

// Tolerance for probability normalization (sums over outcomes, mixture
// populations).
inline constexpr double kProbabilityTol = 1e-12;

// Default Fock-space truncation for photon-number mixtures.
inline constexpr int kDefaultTruncation = 20;

inline const double kSqrt5 = std::sqrt(5.0);

// Number of measurement settings in the five-cycle scenario.
inline constexpr int kNumSettings = 5;

}  // namespace kcbs
