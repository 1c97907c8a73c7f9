#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "kcbs/constants.hpp"
#include "kcbs/fock.hpp"

namespace kcbs {

/// M x M unitary transfer matrix of a lossless linear-optical network.
/// Unitarity is enforced at construction; a violation throws.
class TransferMatrix {
 public:
  explicit TransferMatrix(Eigen::MatrixXcd entries, double tol = kPhysicsTol);

  const Eigen::MatrixXcd& entries() const { return entries_; }
  int mode_count() const { return static_cast<int>(entries_.rows()); }

  TransferMatrix adjoint() const;
  static TransferMatrix identity(int mode_count);

 private:
  Eigen::MatrixXcd entries_;
};

/// Cascade: apply `lhs` first, then `rhs` (row-vector convention).
TransferMatrix operator*(const TransferMatrix& lhs, const TransferMatrix& rhs);

/// Beam splitter on modes (j, k), 1-based, identity elsewhere. The 2x2 block
/// is [[cos w, sin w], [-sin w, cos w]]; cos w is the amplitude
/// transmissivity from mode j to mode j.
TransferMatrix beam_splitter(double omega, int j, int k, int mode_count);

/// The 3-mode measurement network, equal to the cascade of a beam splitter
/// with angle theta on modes (1,2) followed by one with angle phi on (2,3):
///
///   ( cos t   sin t cos p   sin t sin p )
///   (-sin t   cos t cos p   cos t sin p )
///   (   0        -sin p        cos p    )
TransferMatrix kcbs_unitary(double theta, double phi);

/// The five measurement networks of one pentagon test. Adjacent first rows
/// must be orthogonal (cyclically) and every U_11 must equal cos(theta);
/// the constructor validates both.
class KcbsMeasurementFamily {
 public:
  /// mode_count == 3 uses the closed-form network; for mode_count > 3 the
  /// first row is (cos t, sin t cos p, sin t sin p, 0, ...) and the
  /// remaining rows are completed by Gram-Schmidt over the standard basis
  /// in fixed order, so the construction is deterministic.
  KcbsMeasurementFamily(double theta, std::array<double, kNumSettings> phis,
                        int mode_count = 3);

  /// Transfer matrix of setting j, 1-based.
  const TransferMatrix& unitary(int j) const;
  double theta() const { return theta_; }
  double phi(int j) const;
  int mode_count() const { return mode_count_; }

  /// Cyclic successor of setting j (5 + 1 -> 1).
  static int successor(int j) { return j % kNumSettings + 1; }

 private:
  double theta_;
  std::array<double, kNumSettings> phis_;
  int mode_count_;
  std::vector<TransferMatrix> unitaries_;
};

/// The family maximizing the pentagon violation for a photon in mode 1:
/// theta = arccos(5^(-1/4)), phi_j = 4 pi j / 5.
KcbsMeasurementFamily optimal_family();

/// c' = c U. Norm preserving. Throws on dimension mismatch.
SinglePhotonState apply_single_photon(const TransferMatrix& u,
                                      const SinglePhotonState& state);

/// mu' = mu U, log_weight unchanged. Throws on dimension mismatch.
UnnormalizedCoherent apply_coherent(const TransferMatrix& u,
                                    const UnnormalizedCoherent& state);

/// Combined action of two cascaded half-wave plates at angles theta1 and
/// theta2: a rotation by 2 (theta1 - theta2),
/// [[cos 2d, sin 2d], [-sin 2d, cos 2d]].
Eigen::Matrix2d hwp_pair(double theta1, double theta2);

/// Wave-plate settings that realize context j on the 3-mode bench.
struct BenchSettings {
  int context = 1;
  /// Angle differences, radians: {phi_j/2, theta/2, -theta/2,
  /// (phi_{j+1} - phi_j)/2}.
  std::array<double, 4> angle_diffs{};
  /// True when the composed hwp_pair rotations reproduce the context
  /// networks within kPhysicsTol.
  bool verified = false;
};

/// Compile context j of a 3-mode family to half-wave-plate angle
/// differences and verify the composition algebraically:
///  - pairs 1 and 2 embedded on modes (2,3) and (1,2) compose to U_j;
///  - pair 4 on modes (2,3) advances the context: U_j * (I + block) = U_{j+1};
///  - pair 3 cancels pair 2's splitter.
BenchSettings bench_compile(int j, const KcbsMeasurementFamily& family);

}  // namespace kcbs
