#include "kcbs/optics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace kcbs {

namespace {

// Embeds a real 2x2 rotation on modes (j, k) of an M-mode identity.
Eigen::MatrixXcd embed_block(const Eigen::Matrix2d& block, int j, int k,
                             int mode_count) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(mode_count, mode_count);
  m(j - 1, j - 1) = block(0, 0);
  m(j - 1, k - 1) = block(0, 1);
  m(k - 1, j - 1) = block(1, 0);
  m(k - 1, k - 1) = block(1, 1);
  return m;
}

Eigen::Matrix2d rotation_block(double omega) {
  Eigen::Matrix2d b;
  b << std::cos(omega), std::sin(omega), -std::sin(omega), std::cos(omega);
  return b;
}

}  // namespace

TransferMatrix::TransferMatrix(Eigen::MatrixXcd entries, double tol)
    : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() < 1) {
    throw std::invalid_argument("TransferMatrix: matrix must be square");
  }
  const int m = static_cast<int>(entries_.rows());
  const double defect =
      (entries_.adjoint() * entries_ - Eigen::MatrixXcd::Identity(m, m))
          .cwiseAbs()
          .maxCoeff();
  if (defect > tol) {
    throw std::invalid_argument("TransferMatrix: not unitary, defect " +
                                std::to_string(defect));
  }
}

TransferMatrix TransferMatrix::adjoint() const {
  return TransferMatrix(entries_.adjoint());
}

TransferMatrix TransferMatrix::identity(int mode_count) {
  return TransferMatrix(Eigen::MatrixXcd::Identity(mode_count, mode_count));
}

TransferMatrix operator*(const TransferMatrix& lhs,
                         const TransferMatrix& rhs) {
  if (lhs.mode_count() != rhs.mode_count()) {
    throw std::invalid_argument("TransferMatrix: mode count mismatch");
  }
  return TransferMatrix(lhs.entries() * rhs.entries());
}

TransferMatrix beam_splitter(double omega, int j, int k, int mode_count) {
  if (mode_count < 2) {
    throw std::invalid_argument("beam_splitter: mode_count must be >= 2");
  }
  if (j < 1 || k < 1 || j > mode_count || k > mode_count) {
    throw std::invalid_argument("beam_splitter: mode index out of range");
  }
  if (j >= k) {
    throw std::invalid_argument("beam_splitter: requires j < k");
  }
  return TransferMatrix(embed_block(rotation_block(omega), j, k, mode_count));
}

TransferMatrix kcbs_unitary(double theta, double phi) {
  const double ct = std::cos(theta), st = std::sin(theta);
  const double cp = std::cos(phi), sp = std::sin(phi);
  Eigen::MatrixXcd u(3, 3);
  u << ct, st * cp, st * sp,  //
      -st, ct * cp, ct * sp,  //
      0.0, -sp, cp;
  return TransferMatrix(std::move(u));
}

KcbsMeasurementFamily::KcbsMeasurementFamily(
    double theta, std::array<double, kNumSettings> phis, int mode_count)
    : theta_(theta), phis_(phis), mode_count_(mode_count) {
  if (mode_count < 3) {
    throw std::invalid_argument(
        "KcbsMeasurementFamily: mode_count must be >= 3");
  }
  unitaries_.reserve(kNumSettings);
  for (int j = 1; j <= kNumSettings; ++j) {
    const double phi = phis_[static_cast<std::size_t>(j - 1)];
    if (mode_count == 3) {
      unitaries_.push_back(kcbs_unitary(theta, phi));
      continue;
    }
    // First row fixed by the spherical parametrization, padded with zeros;
    // remaining rows completed by Gram-Schmidt over e_1, e_2, ... in order.
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(mode_count, mode_count);
    Eigen::RowVectorXcd first = Eigen::RowVectorXcd::Zero(mode_count);
    first(0) = std::cos(theta);
    first(1) = std::sin(theta) * std::cos(phi);
    first(2) = std::sin(theta) * std::sin(phi);
    u.row(0) = first;
    int filled = 1;
    for (int c = 0; c < mode_count && filled < mode_count; ++c) {
      Eigen::RowVectorXcd v = Eigen::RowVectorXcd::Zero(mode_count);
      v(c) = 1.0;
      for (int r = 0; r < filled; ++r) {
        v -= (u.row(r).conjugate() * v.transpose()).value() * u.row(r);
      }
      const double n = v.norm();
      if (n > 1e-8) {
        u.row(filled++) = v / n;
      }
    }
    if (filled != mode_count) {
      throw std::invalid_argument(
          "KcbsMeasurementFamily: basis completion failed");
    }
    unitaries_.emplace_back(std::move(u));
  }

  for (int j = 1; j <= kNumSettings; ++j) {
    const auto& uj = unitaries_[static_cast<std::size_t>(j - 1)].entries();
    const auto& un =
        unitaries_[static_cast<std::size_t>(successor(j) - 1)].entries();
    const double overlap =
        std::abs((uj.row(0).conjugate() * un.row(0).transpose()).value());
    if (overlap > kPhysicsTol) {
      throw std::invalid_argument(
          "KcbsMeasurementFamily: settings " + std::to_string(j) + "," +
          std::to_string(successor(j)) + " are not compatible, overlap " +
          std::to_string(overlap));
    }
    if (std::abs(uj(0, 0) - std::cos(theta)) > kPhysicsTol) {
      throw std::invalid_argument(
          "KcbsMeasurementFamily: U_11 != cos(theta) for setting " +
          std::to_string(j));
    }
  }
}

const TransferMatrix& KcbsMeasurementFamily::unitary(int j) const {
  if (j < 1 || j > kNumSettings) {
    throw std::invalid_argument("KcbsMeasurementFamily: setting " +
                                std::to_string(j) + " out of range 1..5");
  }
  return unitaries_[static_cast<std::size_t>(j - 1)];
}

double KcbsMeasurementFamily::phi(int j) const {
  if (j < 1 || j > kNumSettings) {
    throw std::invalid_argument("KcbsMeasurementFamily: setting " +
                                std::to_string(j) + " out of range 1..5");
  }
  return phis_[static_cast<std::size_t>(j - 1)];
}

KcbsMeasurementFamily optimal_family() {
  const double theta = std::acos(std::pow(5.0, -0.25));
  std::array<double, kNumSettings> phis{};
  for (int j = 1; j <= kNumSettings; ++j) {
    phis[static_cast<std::size_t>(j - 1)] = 4.0 * M_PI * j / 5.0;
  }
  return KcbsMeasurementFamily(theta, phis);
}

SinglePhotonState apply_single_photon(const TransferMatrix& u,
                                      const SinglePhotonState& state) {
  if (u.mode_count() != state.mode_count()) {
    throw std::invalid_argument("apply_single_photon: dimension mismatch");
  }
  return SinglePhotonState(state.amplitudes() * u.entries());
}

UnnormalizedCoherent apply_coherent(const TransferMatrix& u,
                                    const UnnormalizedCoherent& state) {
  if (u.mode_count() != state.mode_count()) {
    throw std::invalid_argument("apply_coherent: dimension mismatch");
  }
  return UnnormalizedCoherent(state.displacements() * u.entries(),
                              state.log_weight());
}

Eigen::Matrix2d hwp_pair(double theta1, double theta2) {
  return rotation_block(2.0 * (theta1 - theta2));
}

BenchSettings bench_compile(int j, const KcbsMeasurementFamily& family) {
  if (j < 1 || j > kNumSettings) {
    throw std::invalid_argument("bench_compile: context " + std::to_string(j) +
                                " out of range 1..5");
  }
  if (family.mode_count() != 3) {
    throw std::invalid_argument("bench_compile: bench layout is 3-mode only");
  }
  const double theta = family.theta();
  const double phi_j = family.phi(j);
  const double phi_next = family.phi(KcbsMeasurementFamily::successor(j));

  // The cross-context step is reduced mod 2 pi; the wave-plate rotation is
  // unchanged and the entry becomes context-independent for evenly spaced
  // phi settings.
  double advance_diff = std::fmod((phi_next - phi_j) / 2.0, 2.0 * M_PI);
  if (advance_diff < 0.0) advance_diff += 2.0 * M_PI;

  BenchSettings settings;
  settings.context = j;
  settings.angle_diffs = {phi_j / 2.0, theta / 2.0, -theta / 2.0,
                          advance_diff};

  const Eigen::MatrixXcd phi_stage =
      embed_block(hwp_pair(settings.angle_diffs[0], 0.0), 2, 3, 3);
  const Eigen::MatrixXcd theta_stage =
      embed_block(hwp_pair(settings.angle_diffs[1], 0.0), 1, 2, 3);
  const Eigen::MatrixXcd theta_undo =
      embed_block(hwp_pair(settings.angle_diffs[2], 0.0), 1, 2, 3);
  const Eigen::MatrixXcd advance =
      embed_block(hwp_pair(settings.angle_diffs[3], 0.0), 2, 3, 3);

  const auto& u_j = family.unitary(j).entries();
  const auto& u_next =
      family.unitary(KcbsMeasurementFamily::successor(j)).entries();

  const double stage1_defect =
      (theta_stage * phi_stage - u_j).cwiseAbs().maxCoeff();
  const double advance_defect = (u_j * advance - u_next).cwiseAbs().maxCoeff();
  const double undo_defect =
      (theta_undo * theta_stage - Eigen::MatrixXcd::Identity(3, 3))
          .cwiseAbs()
          .maxCoeff();

  settings.verified = stage1_defect <= kPhysicsTol &&
                      advance_defect <= kPhysicsTol &&
                      undo_defect <= kPhysicsTol;
  return settings;
}

}  // namespace kcbs
