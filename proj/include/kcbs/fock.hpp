#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "kcbs/constants.hpp"

namespace kcbs {

/// A single photon distributed over M >= 3 bosonic modes, stored as a row
/// vector of amplitudes c_1..c_M. Networks act by right multiplication,
/// c -> c U.
///
/// The squared norm may drop below 1: no-click conditioning leaves states
/// unnormalized, and the deficit equals the click probability accumulated
/// along the conditioning chain.
class SinglePhotonState {
 public:
  explicit SinglePhotonState(Eigen::RowVectorXcd amplitudes);

  const Eigen::RowVectorXcd& amplitudes() const { return amplitudes_; }
  int mode_count() const { return static_cast<int>(amplitudes_.size()); }

 private:
  Eigen::RowVectorXcd amplitudes_;
};

/// Multimode coherent state |mu_1, ..., mu_M> scaled by exp(log_weight).
/// log_weight starts at 0 and only decreases: conditioning never amplifies.
class UnnormalizedCoherent {
 public:
  UnnormalizedCoherent(Eigen::RowVectorXcd displacements, double log_weight);

  const Eigen::RowVectorXcd& displacements() const { return displacements_; }
  double log_weight() const { return log_weight_; }
  int mode_count() const { return static_cast<int>(displacements_.size()); }

  /// Total event probability carried by the prefactor, exp(2 log_weight).
  double weight_probability() const { return std::exp(2.0 * log_weight_); }

 private:
  Eigen::RowVectorXcd displacements_;
  double log_weight_;
};

/// Photon-number-diagonal single-mode mixture: populations[n] = rho_nn.
/// Populations must be nonnegative and sum to 1 within kProbabilityTol.
class PhotonNumberMixture {
 public:
  explicit PhotonNumberMixture(std::vector<double> populations);

  const std::vector<double>& populations() const { return populations_; }
  int truncation() const { return static_cast<int>(populations_.size()) - 1; }

 private:
  std::vector<double> populations_;
};

/// State |1>_mode of a mode_count-mode system (1-based mode index).
/// Throws std::invalid_argument for mode out of range or mode_count < 3.
SinglePhotonState make_single_photon(int mode, int mode_count);

double norm_squared(const SinglePhotonState& state);

/// Coherent state alpha injected into mode 1, vacuum elsewhere.
UnnormalizedCoherent make_coherent(std::complex<double> alpha, int mode_count);

/// Poissonian populations exp(-lambda) lambda^n / n!, n = 0..truncation.
/// Throws if the truncated tail exceeds the normalization tolerance.
PhotonNumberMixture poisson_mixture(double lambda, int truncation = 60);

/// Vacuum/single-photon mixture {rho00 = loss_rate, rho11 = 1 - loss_rate}.
PhotonNumberMixture loss_mixture(double loss_rate);

}  // namespace kcbs
