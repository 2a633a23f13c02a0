#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "su12/fock_oracle.hpp"

using namespace su12;
using namespace su12::fock;

namespace {

constexpr int kD = 14;

Eigen::VectorXcd basis(int d, int n1, int n2, int n3) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d * d * d);
  v[(n1 * d + n2) * d + n3] = 1.0;
  return v;
}

}  // namespace

TEST_CASE("K operators on the vacuum") {
  const int d = 5;
  const Eigen::VectorXcd vac = basis(d, 0, 0, 0);
  const Eigen::VectorXcd k7 = k_operator(GeneratorIndex(7), d).matrix * vac;
  CHECK((k7 - 0.5 * vac).norm() < 1e-15);
  const Eigen::VectorXcd k1 = k_operator(GeneratorIndex(1), d).matrix * vac;
  CHECK((k1 - 0.5 * basis(d, 1, 1, 0)).norm() < 1e-15);
  for (GeneratorIndex i : all_generators()) {
    const SparseOperator m = k_operator(i, d).matrix;
    CHECK(Eigen::MatrixXcd(m - SparseOperator(m.adjoint())).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK_THROWS_AS(k_operator(GeneratorIndex(1), 1), std::invalid_argument);
}

TEST_CASE("vacuum K moments") {
  const KMoments km = k_moments(FockStateVector::vacuum(kD));
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(km.cov(i, i) - 0.25) < 1e-12);
  }
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      if (i != j) {
        CHECK(std::abs(km.cov(i, j)) < 1e-12);
      }
    }
  }
  // Number-conserving generators have zero spread on the vacuum.
  for (int i = 4; i < 8; ++i) {
    CHECK(std::abs(km.cov(i, i)) < 1e-12);
  }
}

TEST_CASE("mixer gates") {
  const TruncatedOperator id = fwm_unitary(0.0, 1.0, ModePair::Modes12, 6);
  CHECK(Eigen::MatrixXcd(id.matrix).isIdentity(1e-15));

  const double b = 0.4;
  const TruncatedOperator u = fwm_unitary(b, 0.0, ModePair::Modes12, kD);
  CHECK(u.unitarity_defect(kD / 2) < 1e-9);
  const PhotonStatistics ps = photon_statistics(u.apply(FockStateVector::vacuum(kD)));
  CHECK(std::abs(ps.mean[0] - std::pow(std::sinh(b / 2), 2)) < 1e-8);
  CHECK(std::abs(ps.mean[2]) < 1e-15);

  CHECK_THROWS_AS(fwm_unitary(2.0, 0.0, ModePair::Modes12, kD), LeakageExceeded);
  CHECK_THROWS_AS(fwm_unitary(-0.1, 0.0, ModePair::Modes12, kD), std::invalid_argument);
}

TEST_CASE("Heisenberg action of the mixer gates matches the mode matrices") {
  // <m| U^dagger a1 U |n> on low states equals the same element of
  // S11 a1 + S12 a2^dagger + S13 a3^dagger.
  const int d = 12;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (ModePair pair : {ModePair::Modes12, ModePair::Modes13}) {
    for (int n = 0; n < 3; ++n) {
      const FwmParams p{0.5 * u(rng), 2.0 * std::numbers::pi * u(rng), pair};
      const SparseOperator g = fwm_unitary(p.beta, p.theta, p.pair, d).matrix;
      const SparseOperator a1 = annihilation(1, d).matrix;
      const SparseOperator a2 = annihilation(2, d).matrix;
      const SparseOperator a3 = annihilation(3, d).matrix;
      const ModeMatrix s = fwm_matrix(p);
      double dev = 0.0;
      for (int n1 = 0; n1 < 3; ++n1) {
        for (int n2 = 0; n2 < 3; ++n2) {
          for (int n3 = 0; n3 < 3; ++n3) {
            const Eigen::VectorXcd e = basis(d, n1, n2, n3);
            const Eigen::VectorXcd heis = g.adjoint() * (a1 * (g * e));
            const Eigen::VectorXcd expected =
                s(0, 0) * (a1 * e) + s(0, 1) * (a2.adjoint() * e) + s(0, 2) * (a3.adjoint() * e);
            for (int m1 = 0; m1 < 3; ++m1) {
              for (int m2 = 0; m2 < 3; ++m2) {
                for (int m3 = 0; m3 < 3; ++m3) {
                  const int r = (m1 * d + m2) * d + m3;
                  dev = std::max(dev, std::abs(heis[r] - expected[r]));
                }
              }
            }
          }
        }
      }
      CHECK(dev < 1e-9);
    }
  }
}

TEST_CASE("phase gate") {
  const PhaseShifts ph{{0.3, -0.5, 1.1}};
  const int d = 5;
  const Eigen::MatrixXcd g(phase_unitary(ph, d).matrix);
  const Eigen::MatrixXcd a2(annihilation(2, d).matrix);
  CHECK((g.adjoint() * a2 * g - std::polar(1.0, -0.5) * a2).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("circuits") {
  const FockStateVector idle = run_circuit(InterferometerConfig::balanced(0.0, 0.0), InputState::vacuum(), 6);
  CHECK(std::abs(idle.amplitudes[0] - 1.0) < 1e-15);

  const FockStateVector back = run_circuit(InterferometerConfig::balanced(0.3, 0.3), InputState::vacuum(), kD);
  CHECK(std::norm(back.amplitudes[0]) >= 1.0 - 1e-8);
  CHECK(back.leakage < kLeakageGuard);

  InterferometerConfig loud = InterferometerConfig::balanced(2.0, 0.3);
  CHECK_THROWS_AS(run_circuit(loud, InputState::vacuum(), kD), LeakageExceeded);
}

TEST_CASE("photon difference distribution is conserved") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n = 0; n < 5; ++n) {
    InterferometerConfig c;
    for (FwmParams* f : {&c.fwm1, &c.fwm2, &c.fwm3, &c.fwm4}) {
      f->beta = 0.4 * u(rng);
      f->theta = 6.0 * u(rng);
    }
    c.phases.phi = {u(rng), u(rng), u(rng)};
    const InputState in = InputState::coherent(1 + n % 3, std::polar(0.6, 6.0 * u(rng)));
    const DetectorWeights diff{1.0, -1.0, -1.0};
    const FockStateVector before = FockStateVector::coherent(in, kD);
    const FockStateVector after = run_circuit(c, in, kD);
    const EstimatorStats e0 = estimator_stats(before, diff);
    const EstimatorStats e1 = estimator_stats(after, diff);
    CHECK(std::abs(e1.mean - e0.mean) < 1e-9);
    CHECK(std::abs(e1.variance - e0.variance) < 1e-9);
  }
}

TEST_CASE("measurement of simple states") {
  const PhotonStatistics vac = photon_statistics(FockStateVector::vacuum(kD));
  CHECK(vac.mean.norm() == 0.0);
  CHECK(vac.cov.norm() == 0.0);
  const FockStateVector coh = FockStateVector::coherent(InputState::coherent(1, 0.5), kD);
  CHECK(coh.leakage < 1e-15);
  const PhotonStatistics ps = photon_statistics(coh);
  CHECK(std::abs(ps.mean[0] - 0.25) < 1e-12);
  CHECK(std::abs(ps.cov(0, 0) - 0.25) < 1e-12);
  CHECK(std::abs(coh.norm() - 1.0) < 1e-12);
}

TEST_CASE("estimator and derivative agree with the Gaussian pipeline") {
  InterferometerConfig c = InterferometerConfig::balanced(0.35, 0.45);
  c.fwm1.theta = 0.4;
  c.phases.phi = {0.5, -0.2, 0.1};
  const InputState in = InputState::coherent(1, Complex(0.3, 0.4));
  const DetectorWeights w{1.0, 0.5, -1.5};
  const FockStateVector st = run_circuit(c, in, kD);
  CHECK(std::abs(estimator_stats(st, w).variance - su12::estimator_stats(output_statistics(c, in), w).variance) <
        1e-6);
  CHECK(std::abs(fock::mean_derivative(PhaseIndex(1), c, in, w) - su12::mean_derivative(PhaseIndex(1), c, in, w)) <
        1e-6);
}
