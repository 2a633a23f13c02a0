#include "su12/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace su12 {

double BogoliubovTransform::commutation_defect() const {
  const double d1 = (A * A.adjoint() - B * B.adjoint() - Eigen::Matrix3cd::Identity()).cwiseAbs().maxCoeff();
  const double d2 = (A * B.transpose() - B * A.transpose()).cwiseAbs().maxCoeff();
  return std::max(d1, d2);
}

bool OutputMoments::is_physical(double tol) const {
  if ((N - N.adjoint()).cwiseAbs().maxCoeff() > tol || (M - M.transpose()).cwiseAbs().maxCoeff() > tol) {
    return false;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> n_eig(N, Eigen::EigenvaluesOnly);
  if (n_eig.eigenvalues().minCoeff() < -tol) {
    return false;
  }
  // <X^dagger X> >= 0 for every X = u.a + v.a^dagger.
  Eigen::Matrix<Complex, 6, 6> g;
  g << N, M.conjugate(), M, Eigen::Matrix3cd::Identity() + N.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Complex, 6, 6>> g_eig(g, Eigen::EigenvaluesOnly);
  const double scale = std::max(1.0, N.cwiseAbs().maxCoeff());
  return g_eig.eigenvalues().minCoeff() >= -tol * scale;
}

BogoliubovTransform split_mode_matrix(const ModeMatrix& s) {
  // Row 1 is a1_out in (a1, a2^dagger, a3^dagger); rows 2 and 3 are the
  // daggered modes and are conjugated back to annihilation form.
  BogoliubovTransform t;
  t.A.setZero();
  t.B.setZero();
  t.A(0, 0) = s(0, 0);
  t.B(0, 1) = s(0, 1);
  t.B(0, 2) = s(0, 2);
  for (int row = 1; row < 3; ++row) {
    t.B(row, 0) = std::conj(s(row, 0));
    t.A(row, 1) = std::conj(s(row, 1));
    t.A(row, 2) = std::conj(s(row, 2));
  }
  return t;
}

BogoliubovTransform from_mode_matrix(const ModeMatrix& s, double tol) {
  const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
  if (!s.allFinite() || pseudo_unitarity_defect(s) > tol * scale * scale) {
    throw std::invalid_argument("mode matrix is not an SU(1,2) element");
  }
  return split_mode_matrix(s);
}

OutputMoments propagate(const InputState& input, const BogoliubovTransform& t) {
  const Eigen::Vector3cd alpha(input.alpha[0], input.alpha[1], input.alpha[2]);
  OutputMoments m;
  m.mu = t.A * alpha + t.B * alpha.conjugate();
  // Coherent inputs carry vacuum fluctuations: <da_k da_l^dagger> = delta_kl.
  m.N = t.B.conjugate() * t.B.transpose();
  m.M = t.A * t.B.transpose();
  return m;
}

PhotonStatistics photon_statistics(const OutputMoments& m) {
  PhotonStatistics ps;
  for (int i = 0; i < 3; ++i) {
    ps.mean[i] = m.N(i, i).real() + std::norm(m.mu[i]);
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double c = std::norm(m.N(i, j)) + std::norm(m.M(i, j));
      if (i == j) {
        c += ps.mean[i];
      }
      c += 2.0 * std::real(std::conj(m.mu[i]) * m.mu[j] * m.N(j, i));
      c += 2.0 * std::real(std::conj(m.mu[i]) * std::conj(m.mu[j]) * m.M(i, j));
      ps.cov(i, j) = c;
    }
  }
  return ps;
}

EstimatorStats estimator_stats(const PhotonStatistics& ps, const DetectorWeights& w) {
  const Eigen::Vector3d v = w.vector();
  const double variance = v.dot(ps.cov * v);
  return {v.dot(ps.mean), std::max(variance, 0.0)};
}

EstimatorStats estimator_stats(const BogoliubovTransform& t, const InputState& input, const DetectorWeights& w) {
  const Eigen::Vector3cd alpha(input.alpha[0], input.alpha[1], input.alpha[2]);
  const Eigen::Vector3cd mu = t.A * alpha + t.B * alpha.conjugate();
  const Eigen::Vector3d v = w.vector();
  double mean = 0.0;
  for (int k = 0; k < 3; ++k) {
    mean += v[k] * (std::norm(mu[k]) + t.B.row(k).squaredNorm());
  }
  // Linear part sum_j (c_j b_j + h.c.) and pair-creation part sum_ij P_ij b_i^dagger b_j^dagger
  // of the estimator in the input fluctuation modes b.
  const Eigen::Vector3cd wmu = v.cast<Complex>().cwiseProduct(mu);
  const Eigen::RowVector3cd c = wmu.adjoint() * t.A + wmu.transpose() * t.B.conjugate();
  const Eigen::Matrix3cd p = t.A.adjoint() * v.cast<Complex>().asDiagonal() * t.B;
  const Eigen::Matrix3cd p_sym = 0.5 * (p + p.transpose());
  return {mean, c.squaredNorm() + 2.0 * p_sym.squaredNorm()};
}

PhotonStatistics output_statistics(const InterferometerConfig& cfg, const InputState& input) {
  return photon_statistics(propagate(input, from_mode_matrix(total_transform(cfg))));
}

}  // namespace su12
