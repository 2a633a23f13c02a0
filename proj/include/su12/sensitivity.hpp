#pragma once

#include <array>
#include <variant>

#include "su12/gaussian.hpp"
#include "su12/interferometer.hpp"

namespace su12 {

/// Differentiate the phase factor exactly and propagate by the product rule.
struct AnalyticDerivative {};

/// Central finite difference with step h (radians).
struct NumericDerivative {
  double h = 1e-5;
};

using DerivativeMode = std::variant<AnalyticDerivative, NumericDerivative>;

enum class SensitivityMethod { AtPoint, ZeroPhaseLimit };

enum class SensitivityStatus {
  Ok,
  /// Mean derivative vanishes while the estimator fluctuates.
  Divergent,
  /// 0/0: neither signal nor noise at this point.
  Indeterminate,
  /// The zero-phase sequence does not settle.
  NonConvergent,
};

const char* to_string(SensitivityStatus status);
const char* to_string(SensitivityMethod method);

struct SensitivityReport {
  int phase_index = 1;
  double delta_phi = 0.0;
  double mean_derivative = 0.0;
  double estimator_sd = 0.0;
  double n_total = 0.0;
  SensitivityMethod method = SensitivityMethod::AtPoint;
  SensitivityStatus status = SensitivityStatus::Ok;
  /// Difference between the two first-level Richardson estimates.
  double extrapolation_residual = 0.0;

  bool ok() const { return status == SensitivityStatus::Ok; }
};

/// Phase offsets at which zero_phase_limit samples the sensitivity.
inline constexpr std::array<double, 3> kLimitOffsets{1e-2, 1e-3, 1e-4};

double mean_derivative(PhaseIndex j, const InterferometerConfig& cfg, const InputState& input,
                       const DetectorWeights& w, DerivativeMode mode = AnalyticDerivative{});

/// Delta phi_j = sd(estimator) / |d<estimator>/d phi_j| at the configured phases.
/// Throws std::invalid_argument for all-zero weights.
SensitivityReport phase_sensitivity(PhaseIndex j, const InterferometerConfig& cfg, const InputState& input,
                                    const DetectorWeights& w);

/// Limit phi_j -> 0 with the other two phases held at zero: samples
/// phi_j in kLimitOffsets and Richardson-extrapolates in phi_j^2.
SensitivityReport zero_phase_limit(PhaseIndex j, const InterferometerConfig& cfg, const InputState& input,
                                   const DetectorWeights& w);

/// Vacuum high-gain asymptote 2 / (cosh b1 cosh b2) of the optimal sensitivity.
double optimal_sensitivity_asymptote(double beta1, double beta2);

/// SU(1,1) interferometer sensitivity 1/sinh(beta); +inf at beta = 0.
double su11_sensitivity(double beta);

/// Vacuum Delta phi_1 for n12 + n13 with phi1 + theta3 = pi, as a function of
/// angle = phi1 + theta4. +inf where sin(angle) = 0.
double offset_sensitivity_n12_n13(double beta1, double beta2, double angle);

/// High-gain approximation of offset_sensitivity_n12_n13.
double offset_sensitivity_n12_n13_high_gain(double beta2, double angle);

/// Vacuum zero-phase limit of Delta phi_1 for n12 + n13 at theta3 = theta4 = pi.
/// +inf when both gains vanish.
double limit_sensitivity_n12_n13(double beta1, double beta2);

}  // namespace su12
