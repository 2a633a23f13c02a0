#pragma once

#include <array>
#include <complex>
#include <numbers>

#include "su12/lie.hpp"

namespace su12 {

/// Which idler mode the probe (mode 1) is mixed with.
enum class ModePair { Modes12, Modes13 };

/// One four-wave mixer: gain beta >= 0 and pump phase theta.
struct FwmParams {
  double beta = 0.0;
  double theta = 0.0;
  ModePair pair = ModePair::Modes12;
};

/// Label of a phase shift, 1..3 (beam 5, 6, 7 respectively).
class PhaseIndex {
 public:
  explicit PhaseIndex(int index);

  int value() const { return index_; }
  int offset() const { return index_ - 1; }

  friend bool operator==(PhaseIndex, PhaseIndex) = default;

 private:
  int index_;
};

/// Phase shifts phi1..phi3 (radians), stored zero-based.
struct PhaseShifts {
  std::array<double, 3> phi{0.0, 0.0, 0.0};

  double operator[](PhaseIndex j) const { return phi[j.offset()]; }
  double& operator[](PhaseIndex j) { return phi[j.offset()]; }
};

/// Full device: FWM1 (modes 1,2), FWM2 (modes 1,3), phases, FWM3 (modes 1,3),
/// FWM4 (modes 1,2).
struct InterferometerConfig {
  FwmParams fwm1{0.0, 0.0, ModePair::Modes12};
  FwmParams fwm2{0.0, 0.0, ModePair::Modes13};
  FwmParams fwm3{0.0, std::numbers::pi, ModePair::Modes13};
  FwmParams fwm4{0.0, std::numbers::pi, ModePair::Modes12};
  PhaseShifts phases{};

  /// beta3 = beta2, beta4 = beta1, theta = (0, 0, pi, pi), zero phases.
  static InterferometerConfig balanced(double beta1, double beta2);

  /// Throws std::invalid_argument on negative/non-finite gains or a wrong
  /// mode topology.
  void validate() const;
};

/// Coherent amplitudes on the three input ports; vacuum is all zeros.
struct InputState {
  std::array<Complex, 3> alpha{};

  static InputState vacuum() { return {}; }
  /// Coherent state of amplitude `amplitude` on port 1..3, vacuum elsewhere.
  static InputState coherent(int port, Complex amplitude);

  bool is_vacuum() const;
  void validate() const;
};

enum class Stage { AfterFwm2, Final };

ModeMatrix fwm_matrix(const FwmParams& p);
ModeMatrix phase_matrix(const PhaseShifts& ph);

/// d/dphi_j of phase_matrix(ph).
ModeMatrix phase_matrix_derivative(const PhaseShifts& ph, PhaseIndex j);

/// S4 * S3 * P * S2 * S1.
ModeMatrix total_transform(const InterferometerConfig& cfg);

/// d/dphi_j of total_transform(cfg).
ModeMatrix total_transform_derivative(const InterferometerConfig& cfg, PhaseIndex j);

ModeMatrix stage_transform(const InterferometerConfig& cfg, Stage stage);

/// Mean photon number summed over the internal beams 5, 6 and 7 (including
/// the coherent contribution).
double total_photon_number(const InterferometerConfig& cfg, const InputState& input);

/// Closed-form internal photon number for vacuum input.
double vacuum_total_photon_number(double beta1, double beta2);

}  // namespace su12
