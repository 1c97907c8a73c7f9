#include "kcbs/fock.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace kcbs {

SinglePhotonState::SinglePhotonState(Eigen::RowVectorXcd amplitudes)
    : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() < 3) {
    throw std::invalid_argument(
        "SinglePhotonState: needs at least 3 modes, got " +
        std::to_string(amplitudes_.size()));
  }
  const double n2 = amplitudes_.squaredNorm();
  if (n2 > 1.0 + kProbabilityTol) {
    throw std::invalid_argument(
        "SinglePhotonState: squared norm " + std::to_string(n2) +
        " exceeds 1");
  }
}

UnnormalizedCoherent::UnnormalizedCoherent(Eigen::RowVectorXcd displacements,
                                           double log_weight)
    : displacements_(std::move(displacements)), log_weight_(log_weight) {
  if (displacements_.size() < 3) {
    throw std::invalid_argument(
        "UnnormalizedCoherent: needs at least 3 modes, got " +
        std::to_string(displacements_.size()));
  }
  if (log_weight_ > kProbabilityTol) {
    throw std::invalid_argument(
        "UnnormalizedCoherent: log_weight must be <= 0, got " +
        std::to_string(log_weight_));
  }
}

PhotonNumberMixture::PhotonNumberMixture(std::vector<double> populations)
    : populations_(std::move(populations)) {
  if (populations_.empty()) {
    throw std::invalid_argument("PhotonNumberMixture: empty populations");
  }
  for (std::size_t n = 0; n < populations_.size(); ++n) {
    if (populations_[n] < 0.0) {
      throw std::invalid_argument("PhotonNumberMixture: negative population at n=" +
                                  std::to_string(n));
    }
  }
  const double total =
      std::accumulate(populations_.begin(), populations_.end(), 0.0);
  if (std::abs(total - 1.0) > kProbabilityTol) {
    throw std::invalid_argument(
        "PhotonNumberMixture: populations sum to " + std::to_string(total) +
        ", expected 1 within tolerance");
  }
}

SinglePhotonState make_single_photon(int mode, int mode_count) {
  if (mode_count < 3) {
    throw std::invalid_argument(
        "make_single_photon: mode_count must be >= 3, got " +
        std::to_string(mode_count));
  }
  if (mode < 1 || mode > mode_count) {
    throw std::invalid_argument("make_single_photon: mode " +
                                std::to_string(mode) + " out of range 1.." +
                                std::to_string(mode_count));
  }
  Eigen::RowVectorXcd amps = Eigen::RowVectorXcd::Zero(mode_count);
  amps(mode - 1) = 1.0;
  return SinglePhotonState(std::move(amps));
}

double norm_squared(const SinglePhotonState& state) {
  return state.amplitudes().squaredNorm();
}

UnnormalizedCoherent make_coherent(std::complex<double> alpha,
                                   int mode_count) {
  if (mode_count < 3) {
    throw std::invalid_argument(
        "make_coherent: mode_count must be >= 3, got " +
        std::to_string(mode_count));
  }
  Eigen::RowVectorXcd disp = Eigen::RowVectorXcd::Zero(mode_count);
  disp(0) = alpha;
  return UnnormalizedCoherent(std::move(disp), 0.0);
}

PhotonNumberMixture poisson_mixture(double lambda, int truncation) {
  if (lambda < 0.0) {
    throw std::invalid_argument("poisson_mixture: lambda must be >= 0");
  }
  if (truncation < 0) {
    throw std::invalid_argument("poisson_mixture: truncation must be >= 0");
  }
  std::vector<double> pops(static_cast<std::size_t>(truncation) + 1);
  double p = std::exp(-lambda);
  for (int n = 0; n <= truncation; ++n) {
    pops[static_cast<std::size_t>(n)] = p;
    p *= lambda / static_cast<double>(n + 1);
  }
  // The constructor rejects the mixture if too much mass was truncated.
  return PhotonNumberMixture(std::move(pops));
}

PhotonNumberMixture loss_mixture(double loss_rate) {
  if (loss_rate < 0.0 || loss_rate > 1.0) {
    throw std::invalid_argument("loss_mixture: loss_rate must be in [0, 1]");
  }
  return PhotonNumberMixture({loss_rate, 1.0 - loss_rate});
}

}  // namespace kcbs
