#include "kcbs/kcbs_eval.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace kcbs {

double s_from_tables(const std::array<JointProbTable, kNumSettings>& tables) {
  double s = 0.0;
  for (const auto& t : tables) {
    s += t.marginal_first - t.p_pp;
  }
  return s;
}

double s_from_click_column(
    const std::array<JointProbTable, kNumSettings>& tables) {
  double s = 0.0;
  for (const auto& t : tables) {
    s += t.p_pm;
  }
  return s;
}

double kappa_from_correlators(
    const std::array<JointProbTable, kNumSettings>& tables) {
  double kappa = 0.0;
  for (const auto& t : tables) {
    if (!t.click_split_defined) {
      throw std::invalid_argument(
          "kappa_from_correlators: table for context " +
          std::to_string(t.context) + " lacks the click split");
    }
    kappa += t.p_pp + t.p_mm - t.p_pm - t.p_mp;
  }
  return kappa;
}

bool consistency_check(const KcbsResult& result) {
  return std::abs(result.kappa - (5.0 - 4.0 * result.s_value)) < 1e-10;
}

KcbsResult evaluate_single_photon(const KcbsMeasurementFamily& family,
                                  const SinglePhotonState& state) {
  KcbsResult result;
  for (int j = 1; j <= kNumSettings; ++j) {
    result.per_context[static_cast<std::size_t>(j - 1)] =
        sequential_context(MeasurementContext(j), family, state);
  }
  result.s_value = s_from_tables(result.per_context);
  result.kappa = kappa_from_correlators(result.per_context);
  result.kappa_independent = true;
  result.violates_classical = result.s_value > 2.0;
  return result;
}

KcbsResult evaluate_coherent(const KcbsMeasurementFamily& family,
                             const UnnormalizedCoherent& state) {
  KcbsResult result;
  bool split_everywhere = true;
  for (int j = 1; j <= kNumSettings; ++j) {
    result.per_context[static_cast<std::size_t>(j - 1)] =
        sequential_context(MeasurementContext(j), family, state);
    split_everywhere = split_everywhere &&
                       result.per_context[static_cast<std::size_t>(j - 1)]
                           .click_split_defined;
  }
  result.s_value = s_from_tables(result.per_context);
  if (split_everywhere) {
    result.kappa = kappa_from_correlators(result.per_context);
    result.kappa_independent = true;
  } else {
    result.kappa = 5.0 - 4.0 * result.s_value;
    result.kappa_independent = false;
  }
  result.violates_classical = result.s_value > 2.0;
  return result;
}

}  // namespace kcbs
