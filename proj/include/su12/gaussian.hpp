#pragma once

#include <Eigen/Dense>

#include "su12/interferometer.hpp"
#include "su12/lie.hpp"

namespace su12 {

/// a_out,i = sum_j A_ij a_j + B_ij a_j^dagger.
struct BogoliubovTransform {
  Eigen::Matrix3cd A = Eigen::Matrix3cd::Identity();
  Eigen::Matrix3cd B = Eigen::Matrix3cd::Zero();

  /// max of |A A^dagger - B B^dagger - I| and |A B^T - B A^T|.
  double commutation_defect() const;
};

/// Gaussian state moments: mu_i = <a_i>, N_ij = <da_i^dagger da_j>,
/// M_ij = <da_i da_j>.
struct OutputMoments {
  Eigen::Vector3cd mu = Eigen::Vector3cd::Zero();
  Eigen::Matrix3cd N = Eigen::Matrix3cd::Zero();
  Eigen::Matrix3cd M = Eigen::Matrix3cd::Zero();

  /// N Hermitian and positive semidefinite, M symmetric, and the normally
  /// ordered covariance [[N, M^*], [M, I + N^T]] positive semidefinite.
  bool is_physical(double tol = 1e-10) const;
};

struct PhotonStatistics {
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
};

/// Coefficients of the estimator s*n12 + t*n13 + r*n14.
struct DetectorWeights {
  double s = 0.0;
  double t = 0.0;
  double r = 0.0;

  Eigen::Vector3d vector() const { return {s, t, r}; }
  bool is_zero() const { return s == 0.0 && t == 0.0 && r == 0.0; }
  DetectorWeights scaled(double c) const { return {c * s, c * t, c * r}; }
};

struct EstimatorStats {
  double mean = 0.0;
  double variance = 0.0;
};

/// Splits S into (A, B) blocks without checking group membership. Linear in
/// S over the reals, so it also maps derivatives of S.
BogoliubovTransform split_mode_matrix(const ModeMatrix& s);

/// Checked split; throws std::invalid_argument unless S passes the
/// pseudo-unitarity test at tol * max(1, |S|^2).
BogoliubovTransform from_mode_matrix(const ModeMatrix& s, double tol = 1e-9);

OutputMoments propagate(const InputState& input, const BogoliubovTransform& t);

/// Photon-number means and covariances from Wick's theorem.
PhotonStatistics photon_statistics(const OutputMoments& m);

EstimatorStats estimator_stats(const PhotonStatistics& ps, const DetectorWeights& w);

/// Same statistics written as sums of squares over the input modes, so a
/// conserved combination gets a variance of order eps^2 |S|^4 rather than
/// eps |S|^4.
EstimatorStats estimator_stats(const BogoliubovTransform& t, const InputState& input, const DetectorWeights& w);

/// Output photon statistics of the full device.
PhotonStatistics output_statistics(const InterferometerConfig& cfg, const InputState& input);

}  // namespace su12
