#include "su12/interferometer.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "su12/gaussian.hpp"

namespace su12 {

namespace {

constexpr Complex kI{0.0, 1.0};

void check_fwm(const FwmParams& p, ModePair expected, const char* name) {
  if (!std::isfinite(p.beta) || !std::isfinite(p.theta)) {
    throw std::invalid_argument(std::string(name) + ": non-finite parameter");
  }
  if (p.beta < 0.0) {
    throw std::invalid_argument(std::string(name) + ": gain must be >= 0");
  }
  if (p.pair != expected) {
    throw std::invalid_argument(std::string(name) + ": wrong mode pair for this position");
  }
}

}  // namespace

PhaseIndex::PhaseIndex(int index) : index_(index) {
  if (index < 1 || index > 3) {
    throw std::out_of_range("phase index must be in 1..3, got " + std::to_string(index));
  }
}

InterferometerConfig InterferometerConfig::balanced(double beta1, double beta2) {
  InterferometerConfig cfg;
  cfg.fwm1.beta = beta1;
  cfg.fwm2.beta = beta2;
  cfg.fwm3.beta = beta2;
  cfg.fwm4.beta = beta1;
  return cfg;
}

void InterferometerConfig::validate() const {
  check_fwm(fwm1, ModePair::Modes12, "fwm1");
  check_fwm(fwm2, ModePair::Modes13, "fwm2");
  check_fwm(fwm3, ModePair::Modes13, "fwm3");
  check_fwm(fwm4, ModePair::Modes12, "fwm4");
  for (double phi : phases.phi) {
    if (!std::isfinite(phi)) {
      throw std::invalid_argument("phase shifts must be finite");
    }
  }
}

InputState InputState::coherent(int port, Complex amplitude) {
  if (port < 1 || port > 3) {
    throw std::out_of_range("input port must be in 1..3");
  }
  InputState in;
  in.alpha[port - 1] = amplitude;
  return in;
}

bool InputState::is_vacuum() const {
  for (const auto& a : alpha) {
    if (a != Complex{}) {
      return false;
    }
  }
  return true;
}

void InputState::validate() const {
  for (const auto& a : alpha) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw std::invalid_argument("coherent amplitudes must be finite");
    }
  }
}

ModeMatrix fwm_matrix(const FwmParams& p) {
  const double c = std::cosh(p.beta / 2.0);
  const double s = std::sinh(p.beta / 2.0);
  const int k = p.pair == ModePair::Modes12 ? 1 : 2;
  ModeMatrix m = ModeMatrix::Identity();
  m(0, 0) = c;
  m(k, k) = c;
  m(0, k) = std::exp(-kI * p.theta) * s;
  m(k, 0) = std::exp(kI * p.theta) * s;
  return m;
}

ModeMatrix phase_matrix(const PhaseShifts& ph) {
  // a_k -> e^{i phi_k} a_k, so the dagger entries rotate the other way.
  return Eigen::Vector3cd(std::exp(kI * ph.phi[0]), std::exp(-kI * ph.phi[1]), std::exp(-kI * ph.phi[2]))
      .asDiagonal();
}

ModeMatrix phase_matrix_derivative(const PhaseShifts& ph, PhaseIndex j) {
  const ModeMatrix p = phase_matrix(ph);
  ModeMatrix d = ModeMatrix::Zero();
  const int k = j.offset();
  d(k, k) = (k == 0 ? kI : -kI) * p(k, k);
  return d;
}

ModeMatrix total_transform(const InterferometerConfig& cfg) {
  return fwm_matrix(cfg.fwm4) * fwm_matrix(cfg.fwm3) * phase_matrix(cfg.phases) * fwm_matrix(cfg.fwm2) *
         fwm_matrix(cfg.fwm1);
}

ModeMatrix total_transform_derivative(const InterferometerConfig& cfg, PhaseIndex j) {
  return fwm_matrix(cfg.fwm4) * fwm_matrix(cfg.fwm3) * phase_matrix_derivative(cfg.phases, j) *
         fwm_matrix(cfg.fwm2) * fwm_matrix(cfg.fwm1);
}

ModeMatrix stage_transform(const InterferometerConfig& cfg, Stage stage) {
  if (stage == Stage::Final) {
    return total_transform(cfg);
  }
  return fwm_matrix(cfg.fwm2) * fwm_matrix(cfg.fwm1);
}

double total_photon_number(const InterferometerConfig& cfg, const InputState& input) {
  const OutputMoments m = propagate(input, from_mode_matrix(stage_transform(cfg, Stage::AfterFwm2)));
  return photon_statistics(m).mean.sum();
}

double vacuum_total_photon_number(double beta1, double beta2) {
  const double s1 = std::sinh(beta1 / 2.0);
  const double s2 = std::sinh(beta2 / 2.0);
  const double c1 = std::cosh(beta1 / 2.0);
  const double c2 = std::cosh(beta2 / 2.0);
  return s1 * s1 * (c2 * c2 + 1.0) + s2 * s2 * (c1 * c1 + 1.0);
}

}  // namespace su12
