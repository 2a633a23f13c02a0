#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "su12/fock_oracle.hpp"
#include "su12/gaussian.hpp"
#include "su12/interferometer.hpp"

using namespace su12;

namespace {

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

InterferometerConfig random_config(std::mt19937_64& rng, double beta_max) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  InterferometerConfig c;
  for (FwmParams* f : {&c.fwm1, &c.fwm2, &c.fwm3, &c.fwm4}) {
    f->beta = beta_max * u(rng);
    f->theta = 2.0 * std::numbers::pi * u(rng);
  }
  for (double& p : c.phases.phi) {
    p = 2.0 * std::numbers::pi * u(rng);
  }
  return c;
}

}  // namespace

TEST_CASE("four-wave mixer matrices") {
  CHECK(max_abs(fwm_matrix({0.0, 0.7, ModePair::Modes12}) - ModeMatrix::Identity()) == 0.0);

  const ModeMatrix s = fwm_matrix({3.0, 0.0, ModePair::Modes12});
  CHECK(std::abs(s(0, 0) - std::cosh(1.5)) < 1e-14);
  CHECK(std::abs(s(1, 1) - std::cosh(1.5)) < 1e-14);
  CHECK(std::abs(s(0, 1) - std::sinh(1.5)) < 1e-14);
  CHECK(std::abs(s(1, 0) - std::sinh(1.5)) < 1e-14);
  CHECK(std::abs(s(2, 2) - 1.0) < 1e-15);
  CHECK(std::abs(s(0, 2)) == 0.0);

  const ModeMatrix t = fwm_matrix({1.0, std::numbers::pi / 3, ModePair::Modes13});
  CHECK(is_pseudo_unitary(t, 1e-12));
  CHECK(std::abs(t(0, 2) - std::polar(std::sinh(0.5), -std::numbers::pi / 3)) < 1e-15);
  CHECK(std::abs(t(2, 0) - std::polar(std::sinh(0.5), std::numbers::pi / 3)) < 1e-15);
}

TEST_CASE("phase matrices") {
  CHECK(max_abs(phase_matrix({}) - ModeMatrix::Identity()) == 0.0);
  const ModeMatrix half = phase_matrix({{std::numbers::pi, 0.0, 0.0}});
  CHECK(max_abs(half - Eigen::Vector3cd(-1.0, 1.0, 1.0).asDiagonal().toDenseMatrix()) < 1e-15);
  const PhaseShifts ph{{0.4, -1.2, 2.5}};
  CHECK(is_pseudo_unitary(phase_matrix(ph), 1e-14));
  for (int j = 1; j <= 3; ++j) {
    PhaseShifts up = ph;
    PhaseShifts down = ph;
    up[PhaseIndex(j)] += 1e-6;
    down[PhaseIndex(j)] -= 1e-6;
    const ModeMatrix fd = (phase_matrix(up) - phase_matrix(down)) / 2e-6;
    CHECK(max_abs(fd - phase_matrix_derivative(ph, PhaseIndex(j))) < 1e-9);
  }
}

TEST_CASE("balanced device is the identity") {
  for (double b1 : {0.5, 2.0, 4.0}) {
    for (double b2 : {0.3, 3.0}) {
      CHECK(max_abs(total_transform(InterferometerConfig::balanced(b1, b2)) - ModeMatrix::Identity()) < 1e-10);
    }
  }
  // Any common pump phase theta1 = theta2, theta3 = theta4 = theta1 + pi also undoes itself.
  InterferometerConfig c = InterferometerConfig::balanced(2.0, 1.5);
  c.fwm1.theta = c.fwm2.theta = 0.8;
  c.fwm3.theta = c.fwm4.theta = 0.8 + std::numbers::pi;
  CHECK(max_abs(total_transform(c) - ModeMatrix::Identity()) < 1e-10);
}

TEST_CASE("zero gains leave only the phases") {
  InterferometerConfig c;
  c.fwm3.beta = c.fwm4.beta = 0.0;
  c.phases.phi = {0.1, 0.2, -0.3};
  CHECK(max_abs(total_transform(c) - phase_matrix(c.phases)) < 1e-15);
  CHECK(max_abs(stage_transform(c, Stage::AfterFwm2) - ModeMatrix::Identity()) < 1e-15);
}

TEST_CASE("stage after the second mixer") {
  const double b1 = 1.1;
  const double b2 = 2.3;
  const ModeMatrix s = stage_transform(InterferometerConfig::balanced(b1, b2), Stage::AfterFwm2);
  CHECK(std::abs(s(0, 0) - std::cosh(b1 / 2) * std::cosh(b2 / 2)) < 1e-14);
  CHECK(std::abs(s(0, 1) - std::sinh(b1 / 2) * std::cosh(b2 / 2)) < 1e-14);
  CHECK(std::abs(s(0, 2) - std::sinh(b2 / 2)) < 1e-14);
  std::mt19937_64 rng(3);
  const InterferometerConfig c = random_config(rng, 2.0);
  CHECK(max_abs(stage_transform(c, Stage::Final) - total_transform(c)) == 0.0);
}

TEST_CASE("random compositions stay in the group") {
  std::mt19937_64 rng(17);
  for (int n = 0; n < 10000; ++n) {
    const ModeMatrix s = total_transform(random_config(rng, 3.0));
    const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
    REQUIRE(pseudo_unitarity_defect(s) <= 1e-9 * scale * scale);
  }
}

TEST_CASE("config validation") {
  InterferometerConfig c = InterferometerConfig::balanced(1.0, 1.0);
  CHECK_NOTHROW(c.validate());
  c.fwm2.beta = -0.1;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = InterferometerConfig::balanced(1.0, 1.0);
  c.fwm3.pair = ModePair::Modes12;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  CHECK_THROWS_AS(PhaseIndex(4), std::out_of_range);
  InputState in;
  in.alpha[1] = Complex(std::nan(""), 0.0);
  CHECK_THROWS_AS(in.validate(), std::invalid_argument);
  CHECK_THROWS_AS(InputState::coherent(0, 1.0), std::out_of_range);
}

TEST_CASE("internal photon number") {
  CHECK(total_photon_number(InterferometerConfig::balanced(0.0, 0.0), InputState::vacuum()) == 0.0);
  const double s = std::sinh(1.5);
  const double c = std::cosh(1.5);
  // Independent evaluation at beta1 = beta2 = 3.
  const double expected = 2.0 * s * s * (c * c + 1.0);
  CHECK(std::abs(total_photon_number(InterferometerConfig::balanced(3.0, 3.0), InputState::vacuum()) - expected) <
        1e-10);
  CHECK(std::abs(expected - 59.2466) < 1e-4);
  for (double b1 = 0.5; b1 <= 5.0; b1 += 0.5) {
    for (double b2 = 0.5; b2 <= 5.0; b2 += 0.5) {
      const double n = total_photon_number(InterferometerConfig::balanced(b1, b2), InputState::vacuum());
      CHECK(std::abs(n - vacuum_total_photon_number(b1, b2)) <= 1e-10 * std::max(1.0, n));
      CHECK(vacuum_total_photon_number(b1, b2) == doctest::Approx(vacuum_total_photon_number(b2, b1)).epsilon(1e-15));
    }
  }
}

TEST_CASE("internal photon number for coherent input matches the Fock simulator") {
  // Count beams 5, 6, 7 by running only the first two mixers in the oracle.
  InterferometerConfig c = InterferometerConfig::balanced(0.4, 0.4);
  const InputState in = InputState::coherent(1, 0.5);
  InterferometerConfig first_half = c;
  first_half.fwm3.beta = first_half.fwm4.beta = 0.0;
  const PhotonStatistics f = fock::photon_statistics(fock::run_circuit(first_half, in, 14));
  CHECK(std::abs(total_photon_number(c, in) - f.mean.sum()) < 1e-6);
}

TEST_CASE("conserved photon difference through random devices") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int n = 0; n < 500; ++n) {
    const InterferometerConfig c = random_config(rng, 3.0);
    InputState in;
    for (auto& a : in.alpha) {
      a = Complex(u(rng), u(rng));
    }
    const Eigen::Vector3d out = output_statistics(c, in).mean;
    const double before = std::norm(in.alpha[0]) - std::norm(in.alpha[1]) - std::norm(in.alpha[2]);
    const double after = out[0] - out[1] - out[2];
    CHECK(std::abs(after - before) <= 1e-9 * std::max(1.0, out.cwiseAbs().maxCoeff()));
  }
}
