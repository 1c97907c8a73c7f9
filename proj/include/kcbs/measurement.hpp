#pragma once

#include <array>

#include "kcbs/constants.hpp"
#include "kcbs/fock.hpp"
#include "kcbs/optics.hpp"

namespace kcbs {

/// Dichotomic outcome of one on-off detection: Plus (+1) is a no-click,
/// Minus (-1) is a click.
enum class Outcome { Plus, Minus };

inline int outcome_value(Outcome o) { return o == Outcome::Plus ? +1 : -1; }

/// One of the five contexts, the adjacent settings pair (j, j+1) with the
/// cyclic convention 5 + 1 -> 1.
struct MeasurementContext {
  int j = 1;

  explicit MeasurementContext(int setting);
  int first() const { return j; }
  int second() const { return KcbsMeasurementFamily::successor(j); }
};

/// Joint outcome probabilities of one context. Entries are named by the
/// outcome pair, first measurement first: p_pm = p(v_j = +1, v_{j+1} = -1).
///
/// For coherent inputs the click-first branch is not propagated, so only its
/// total weight p_minus_total is available and click_split_defined is false
/// (p_mp and p_mm are NaN). Vacuum-weight inputs keep the split, trivially
/// zero.
struct JointProbTable {
  int context = 1;
  double p_pp = 0.0;
  double p_pm = 0.0;
  double p_mp = 0.0;
  double p_mm = 0.0;
  /// p(v_j = +1); equals p_pp + p_pm.
  double marginal_first = 0.0;
  /// p(v_{j+1} = +1). Column marginal when the split is defined, otherwise
  /// the stand-alone single-measurement value.
  double marginal_second = 0.0;
  bool click_split_defined = true;
  /// p(v_j = -1), summed over second outcomes.
  double p_minus_total = 0.0;

  /// Total probability over all outcome branches; 1 for any valid table.
  double total() const {
    return p_pp + p_pm + p_minus_total;
  }
};

struct PhotonDetection {
  double p_click = 0.0;
  double p_noclick = 0.0;
  /// Mode-1 amplitude zeroed, not renormalized: the weight carries
  /// p_noclick.
  SinglePhotonState post_noclick;
};

/// On-off detection of mode 1. Probabilities are conditioned on the input
/// weight. A click annihilates the photon, so no post-click state exists.
/// Throws std::invalid_argument for a zero-norm input.
PhotonDetection detect_mode1_photon(const SinglePhotonState& state);

struct CoherentDetection {
  /// No-click probability factor exp(-|mu_1|^2), conditioned on the input.
  double p_noclick = 0.0;
  UnnormalizedCoherent post_noclick;
};

/// On-off detection of mode 1 of a coherent state: the no-click branch has
/// mu_1 zeroed and log_weight reduced by |mu_1|^2 / 2.
CoherentDetection detect_mode1_coherent(const UnnormalizedCoherent& state);

struct PhotonMeasurement {
  double p_plus = 0.0;
  double p_minus = 0.0;
  SinglePhotonState post_plus;
};

struct CoherentMeasurement {
  double p_plus = 0.0;
  double p_minus = 0.0;
  UnnormalizedCoherent post_plus;
};

/// Measurement of setting j: rotate by U_j^dagger, detect mode 1, rotate the
/// no-click branch back by U_j. Probabilities are conditional on the input;
/// the returned state stays unnormalized.
PhotonMeasurement measure_observable(int j, const KcbsMeasurementFamily& family,
                                     const SinglePhotonState& state);
CoherentMeasurement measure_observable(int j,
                                       const KcbsMeasurementFamily& family,
                                       const UnnormalizedCoherent& state);

/// Exact joint table of the sequential pair (j, j+1). Branch weights are
/// combined directly, never renormalized, so a certain first click is
/// handled without dividing by zero. A first click destroys the photon and
/// the second detector stays silent: p_mm = 0 for single-photon inputs.
JointProbTable sequential_context(const MeasurementContext& context,
                                  const KcbsMeasurementFamily& family,
                                  const SinglePhotonState& state);

/// Coherent-input table from the no-click chain; the click-first branch is
/// reported only in total (see JointProbTable).
JointProbTable sequential_context(const MeasurementContext& context,
                                  const KcbsMeasurementFamily& family,
                                  const UnnormalizedCoherent& state);

struct NoSignalingCheck {
  /// Second measurement alone.
  double lhs = 0.0;
  /// Second-outcome marginal of the sequential joint table.
  double rhs = 0.0;
  bool pass = false;
};

/// Marginal-consistency check: measuring j first must not disturb the
/// statistics of j+1.
NoSignalingCheck no_signaling_check(const MeasurementContext& context,
                                    const KcbsMeasurementFamily& family,
                                    const SinglePhotonState& state);

/// Coherent variant; defined only when the first measurement's click branch
/// carries no weight (vacuum-like inputs). Otherwise throws
/// std::domain_error, since the post-click coherent branch is not modeled.
NoSignalingCheck no_signaling_check(const MeasurementContext& context,
                                    const KcbsMeasurementFamily& family,
                                    const UnnormalizedCoherent& state);

}  // namespace kcbs
