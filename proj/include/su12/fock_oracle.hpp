#pragma once

#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "su12/gaussian.hpp"
#include "su12/interferometer.hpp"
#include "su12/lie.hpp"
#include "su12/sensitivity.hpp"

namespace su12::fock {

inline constexpr int kDefaultCutoff = 14;
inline constexpr double kLeakageGuard = 1e-8;

/// Population pushed to the truncation edge exceeded kLeakageGuard.
class LeakageExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using SparseOperator = Eigen::SparseMatrix<Complex>;

/// Amplitudes over |n1,n2,n3>, 0 <= n_k < cutoff, flattened as
/// n1*D*D + n2*D + n3.
struct FockStateVector {
  int cutoff = kDefaultCutoff;
  Eigen::VectorXcd amplitudes;
  /// Largest truncation loss seen so far: renormalisation on preparation or
  /// population in the top Fock layer after a gate.
  double leakage = 0.0;

  static FockStateVector vacuum(int cutoff);
  /// Product of truncated coherent states, renormalised.
  static FockStateVector coherent(const InputState& input, int cutoff);

  int dimension() const { return cutoff * cutoff * cutoff; }
  int index(int n1, int n2, int n3) const { return (n1 * cutoff + n2) * cutoff + n3; }
  double norm() const { return amplitudes.norm(); }
  /// Probability carried by states with any n_k = cutoff - 1.
  double edge_population() const;
};

struct TruncatedOperator {
  int cutoff = kDefaultCutoff;
  SparseOperator matrix;

  FockStateVector apply(const FockStateVector& state) const;
  /// max |(U^dagger U - I)_{mn}| over basis states with n1+n2+n3 <= limit.
  double unitarity_defect(int total_photon_limit) const;
};

/// Annihilation operator of mode 1..3.
TruncatedOperator annihilation(int mode, int cutoff);
TruncatedOperator number_operator(int mode, int cutoff);

/// K_i from ladder-operator matrix elements; a a^dagger is taken as n + 1.
TruncatedOperator k_operator(GeneratorIndex i, int cutoff);

/// exp(i * h) for Hermitian h, by eigendecomposition of each connected block.
TruncatedOperator exp_i_hermitian(const TruncatedOperator& h);

/// Gate whose Heisenberg action on (a1, a_k^dagger) is fwm_matrix(p):
/// U = exp(-i beta (sin(theta) K_a - cos(theta) K_b)).
/// Throws LeakageExceeded if the gate pushes vacuum past the guard.
TruncatedOperator fwm_unitary(double beta, double theta, ModePair pair, int cutoff);

/// U = exp(i sum_k phi_k n_k), matching phase_matrix.
TruncatedOperator phase_unitary(const PhaseShifts& phases, int cutoff);

/// Prepares the input and applies FWM1, FWM2, phases, FWM3, FWM4.
/// Throws LeakageExceeded if any step loses more than kLeakageGuard.
FockStateVector run_circuit(const InterferometerConfig& cfg, const InputState& input,
                            int cutoff = kDefaultCutoff);

double expectation(const TruncatedOperator& op, const FockStateVector& state);

struct KMoments {
  Eigen::Matrix<double, 8, 1> mean;
  /// Symmetrised covariance <{dK_i, dK_j}>/2.
  Eigen::Matrix<double, 8, 8> cov;
};

PhotonStatistics photon_statistics(const FockStateVector& state);
KMoments k_moments(const FockStateVector& state);
EstimatorStats estimator_stats(const FockStateVector& state, const DetectorWeights& w);

/// Central difference of the estimator mean in phi_j with step h.
double mean_derivative(PhaseIndex j, const InterferometerConfig& cfg, const InputState& input,
                       const DetectorWeights& w, int cutoff = kDefaultCutoff, double h = 1e-4);

}  // namespace su12::fock
