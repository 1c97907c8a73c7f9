#include "kcbs/measurement.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace kcbs {

MeasurementContext::MeasurementContext(int setting) : j(setting) {
  if (setting < 1 || setting > kNumSettings) {
    throw std::invalid_argument("MeasurementContext: setting " +
                                std::to_string(setting) +
                                " out of range 1..5");
  }
}

PhotonDetection detect_mode1_photon(const SinglePhotonState& state) {
  const double w = norm_squared(state);
  if (w <= kProbabilityTol) {
    throw std::invalid_argument("detect_mode1_photon: zero-norm input");
  }
  const double click_weight = std::norm(state.amplitudes()(0));
  Eigen::RowVectorXcd post = state.amplitudes();
  post(0) = 0.0;
  PhotonDetection result{click_weight / w, 1.0 - click_weight / w,
                         SinglePhotonState(std::move(post))};
  return result;
}

CoherentDetection detect_mode1_coherent(const UnnormalizedCoherent& state) {
  const double mu1_sq = std::norm(state.displacements()(0));
  Eigen::RowVectorXcd post = state.displacements();
  post(0) = 0.0;
  return CoherentDetection{
      std::exp(-mu1_sq),
      UnnormalizedCoherent(std::move(post),
                           state.log_weight() - mu1_sq / 2.0)};
}

PhotonMeasurement measure_observable(int j,
                                     const KcbsMeasurementFamily& family,
                                     const SinglePhotonState& state) {
  const TransferMatrix& u = family.unitary(j);
  const SinglePhotonState rotated = apply_single_photon(u.adjoint(), state);
  PhotonDetection det = detect_mode1_photon(rotated);
  return PhotonMeasurement{det.p_noclick, det.p_click,
                           apply_single_photon(u, det.post_noclick)};
}

CoherentMeasurement measure_observable(int j,
                                       const KcbsMeasurementFamily& family,
                                       const UnnormalizedCoherent& state) {
  const TransferMatrix& u = family.unitary(j);
  const UnnormalizedCoherent rotated = apply_coherent(u.adjoint(), state);
  CoherentDetection det = detect_mode1_coherent(rotated);
  return CoherentMeasurement{det.p_noclick, 1.0 - det.p_noclick,
                             apply_coherent(u, det.post_noclick)};
}

JointProbTable sequential_context(const MeasurementContext& context,
                                  const KcbsMeasurementFamily& family,
                                  const SinglePhotonState& state) {
  JointProbTable table;
  table.context = context.first();

  const PhotonMeasurement first =
      measure_observable(context.first(), family, state);

  // Click branch: the photon is gone, the second detector cannot fire.
  table.p_mp = first.p_minus;
  table.p_mm = 0.0;
  table.p_minus_total = first.p_minus;

  if (norm_squared(first.post_plus) > kProbabilityTol) {
    const PhotonMeasurement second =
        measure_observable(context.second(), family, first.post_plus);
    table.p_pp = first.p_plus * second.p_plus;
    table.p_pm = first.p_plus * second.p_minus;
  } else {
    // Certain first click: the no-click branch carries no weight. Any
    // sub-tolerance remainder is folded into the click branch.
    table.p_pp = 0.0;
    table.p_pm = 0.0;
    table.p_mp = first.p_minus + first.p_plus;
    table.p_minus_total = table.p_mp;
  }

  table.marginal_first = table.p_pp + table.p_pm;
  table.marginal_second = table.p_pp + table.p_mp;
  table.click_split_defined = true;
  return table;
}

JointProbTable sequential_context(const MeasurementContext& context,
                                  const KcbsMeasurementFamily& family,
                                  const UnnormalizedCoherent& state) {
  JointProbTable table;
  table.context = context.first();

  const CoherentMeasurement first =
      measure_observable(context.first(), family, state);
  const CoherentMeasurement second =
      measure_observable(context.second(), family, first.post_plus);

  table.p_pp = first.p_plus * second.p_plus;
  table.p_pm = first.p_plus * second.p_minus;
  table.marginal_first = first.p_plus;
  table.p_minus_total = 1.0 - first.p_plus;

  // Stand-alone value; the marginal over the unmodeled click branch is not
  // available from the table itself.
  const CoherentMeasurement alone =
      measure_observable(context.second(), family, state);
  table.marginal_second = alone.p_plus;

  if (table.p_minus_total <= kProbabilityTol) {
    table.click_split_defined = true;
    table.p_mp = table.p_minus_total;
    table.p_mm = 0.0;
  } else {
    table.click_split_defined = false;
    table.p_mp = std::numeric_limits<double>::quiet_NaN();
    table.p_mm = std::numeric_limits<double>::quiet_NaN();
  }
  return table;
}

NoSignalingCheck no_signaling_check(const MeasurementContext& context,
                                    const KcbsMeasurementFamily& family,
                                    const SinglePhotonState& state) {
  const PhotonMeasurement alone =
      measure_observable(context.second(), family, state);
  const JointProbTable table = sequential_context(context, family, state);
  NoSignalingCheck check{alone.p_plus, table.marginal_second, false};
  check.pass = std::abs(check.lhs - check.rhs) < 1e-9;
  return check;
}

NoSignalingCheck no_signaling_check(const MeasurementContext& context,
                                    const KcbsMeasurementFamily& family,
                                    const UnnormalizedCoherent& state) {
  const JointProbTable table = sequential_context(context, family, state);
  if (!table.click_split_defined) {
    throw std::domain_error(
        "no_signaling_check: coherent input has a click branch that is not "
        "modeled; only vacuum-weight inputs are supported");
  }
  const CoherentMeasurement alone =
      measure_observable(context.second(), family, state);
  NoSignalingCheck check{alone.p_plus, table.p_pp + table.p_mp, false};
  check.pass = std::abs(check.lhs - check.rhs) < 1e-9;
  return check;
}

}  // namespace kcbs
