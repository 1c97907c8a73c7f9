#pragma once

#include <array>

#include "kcbs/measurement.hpp"

namespace kcbs {

/// Result of a full five-context evaluation.
///
/// S and kappa are related by kappa = 5 - 4 S. For single-photon inputs both
/// are computed independently (marginals vs. correlators) and the identity
/// is a genuine cross-check; for coherent inputs kappa is derived from S,
/// because the click-split correlators are not modeled.
struct KcbsResult {
  double s_value = 0.0;
  double kappa = 0.0;
  std::array<JointProbTable, kNumSettings> per_context{};
  bool violates_classical = false;
  /// True when kappa came from the correlator route.
  bool kappa_independent = false;
};

/// S = sum_j p(v_j = +1) - sum_j p(v_j = +1, v_{j+1} = +1).
double s_from_tables(const std::array<JointProbTable, kNumSettings>& tables);

/// Equivalent route through the no-click/click column: S = sum_j p(+, -).
double s_from_click_column(
    const std::array<JointProbTable, kNumSettings>& tables);

/// kappa = sum_j <A_j A_{j+1}>, correlator = p_pp + p_mm - p_pm - p_mp.
/// Throws std::invalid_argument when a table lacks the click split.
double kappa_from_correlators(
    const std::array<JointProbTable, kNumSettings>& tables);

/// |kappa - (5 - 4 S)| < 1e-10. Fails only if the tables violate marginal
/// consistency, since the identity rests on the cyclic telescoping of the
/// marginals.
bool consistency_check(const KcbsResult& result);

KcbsResult evaluate_single_photon(const KcbsMeasurementFamily& family,
                                  const SinglePhotonState& state);

KcbsResult evaluate_coherent(const KcbsMeasurementFamily& family,
                             const UnnormalizedCoherent& state);

}  // namespace kcbs
