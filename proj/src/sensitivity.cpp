#include "su12/sensitivity.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace su12 {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Relative round-off floor for quantities built from products of mode matrices.
constexpr double kRoundoff = 1e-12;

struct PointValues {
  double mean = 0.0;
  double variance = 0.0;
  double derivative = 0.0;
  double scale = 1.0;  // magnitude against which zero tests are made
};

double analytic_derivative(const ModeMatrix& s, const ModeMatrix& ds, const InputState& input,
                           const DetectorWeights& w) {
  const BogoliubovTransform t = split_mode_matrix(s);
  const BogoliubovTransform dt = split_mode_matrix(ds);
  const Eigen::Vector3cd alpha(input.alpha[0], input.alpha[1], input.alpha[2]);
  const Eigen::Vector3cd mu = t.A * alpha + t.B * alpha.conjugate();
  const Eigen::Vector3cd dmu = dt.A * alpha + dt.B * alpha.conjugate();
  Eigen::Vector3d dmean;
  for (int i = 0; i < 3; ++i) {
    double d = 2.0 * std::real(std::conj(mu[i]) * dmu[i]);
    for (int k = 0; k < 3; ++k) {
      d += 2.0 * std::real(std::conj(t.B(i, k)) * dt.B(i, k));
    }
    dmean[i] = d;
  }
  return w.vector().dot(dmean);
}

PointValues evaluate(PhaseIndex j, const InterferometerConfig& cfg, const InputState& input,
                     const DetectorWeights& w) {
  const ModeMatrix s = total_transform(cfg);
  const EstimatorStats es = estimator_stats(from_mode_matrix(s), input, w);
  PointValues v;
  v.mean = es.mean;
  v.variance = es.variance;
  v.derivative = analytic_derivative(s, total_transform_derivative(cfg, j), input, w);
  double amplitude = 1.0;
  for (const auto& a : input.alpha) {
    amplitude += std::norm(a);
  }
  const double gain = std::max(1.0, s.cwiseAbs().maxCoeff());
  v.scale = w.vector().cwiseAbs().sum() * gain * gain * amplitude;
  return v;
}

SensitivityReport report_from(PhaseIndex j, const PointValues& v, double n_total) {
  SensitivityReport rep;
  rep.phase_index = j.value();
  rep.mean_derivative = v.derivative;
  rep.estimator_sd = std::sqrt(std::max(v.variance, 0.0));
  rep.n_total = n_total;
  rep.method = SensitivityMethod::AtPoint;
  const double floor = kRoundoff * v.scale;
  const bool flat = std::abs(v.derivative) <= floor;
  const bool quiet = rep.estimator_sd <= floor;
  if (flat && quiet) {
    rep.status = SensitivityStatus::Indeterminate;
    rep.delta_phi = kNaN;
  } else if (flat) {
    rep.status = SensitivityStatus::Divergent;
    rep.delta_phi = kInf;
  } else {
    rep.status = SensitivityStatus::Ok;
    rep.delta_phi = rep.estimator_sd / std::abs(v.derivative);
  }
  return rep;
}

}  // namespace

const char* to_string(SensitivityStatus status) {
  switch (status) {
    case SensitivityStatus::Ok:
      return "OK";
    case SensitivityStatus::Divergent:
      return "DIVERGENT";
    case SensitivityStatus::Indeterminate:
      return "INDETERMINATE";
    case SensitivityStatus::NonConvergent:
      return "NONCONVERGENT";
  }
  return "?";
}

const char* to_string(SensitivityMethod method) {
  return method == SensitivityMethod::AtPoint ? "at-point" : "zero-phase-limit";
}

double mean_derivative(PhaseIndex j, const InterferometerConfig& cfg, const InputState& input,
                       const DetectorWeights& w, DerivativeMode mode) {
  cfg.validate();
  input.validate();
  if (const auto* numeric = std::get_if<NumericDerivative>(&mode)) {
    if (!(numeric->h > 0.0)) {
      throw std::invalid_argument("finite-difference step must be positive");
    }
    InterferometerConfig plus = cfg;
    InterferometerConfig minus = cfg;
    plus.phases[j] += numeric->h;
    minus.phases[j] -= numeric->h;
    const double up = estimator_stats(output_statistics(plus, input), w).mean;
    const double down = estimator_stats(output_statistics(minus, input), w).mean;
    return (up - down) / (2.0 * numeric->h);
  }
  return analytic_derivative(total_transform(cfg), total_transform_derivative(cfg, j), input, w);
}

SensitivityReport phase_sensitivity(PhaseIndex j, const InterferometerConfig& cfg, const InputState& input,
                                    const DetectorWeights& w) {
  if (w.is_zero()) {
    throw std::invalid_argument("detector weights must not all vanish");
  }
  cfg.validate();
  input.validate();
  return report_from(j, evaluate(j, cfg, input, w), total_photon_number(cfg, input));
}

SensitivityReport zero_phase_limit(PhaseIndex j, const InterferometerConfig& cfg, const InputState& input,
                                   const DetectorWeights& w) {
  if (w.is_zero()) {
    throw std::invalid_argument("detector weights must not all vanish");
  }
  cfg.validate();
  input.validate();
  InterferometerConfig at = cfg;
  at.phases = PhaseShifts{};
  const double n_total = total_photon_number(at, input);

  std::array<SensitivityReport, kLimitOffsets.size()> samples;
  bool divergent = false;
  bool defined = true;
  for (std::size_t n = 0; n < kLimitOffsets.size(); ++n) {
    at.phases[j] = kLimitOffsets[n];
    samples[n] = report_from(j, evaluate(j, at, input, w), n_total);
    divergent = divergent || samples[n].status == SensitivityStatus::Divergent;
    defined = defined && samples[n].ok();
  }

  SensitivityReport rep = samples.back();
  rep.method = SensitivityMethod::ZeroPhaseLimit;
  if (!defined) {
    rep.status = divergent ? SensitivityStatus::Divergent : SensitivityStatus::NonConvergent;
    rep.delta_phi = divergent ? kInf : kNaN;
    return rep;
  }

  const double f1 = samples[0].delta_phi;
  const double f2 = samples[1].delta_phi;
  const double f3 = samples[2].delta_phi;
  // Growth like 1/phi signals a vanishing derivative at the origin.
  if (f2 > 5.0 * f1 && f3 > 5.0 * f2) {
    rep.status = SensitivityStatus::Divergent;
    rep.delta_phi = kInf;
    return rep;
  }
  const double d1 = f1 - f2;
  const double d2 = f2 - f3;
  const double tiny = 1e-14 * std::abs(f3);
  const bool settles = std::abs(d2) <= tiny || (std::abs(d2) < std::abs(d1) && d1 * d2 >= 0.0);
  if (!settles) {
    rep.status = SensitivityStatus::NonConvergent;
    return rep;
  }
  // Delta phi(eps) = L + a eps^2 + b eps^4 + ...; the offsets step by 10.
  const double r1 = (100.0 * f2 - f1) / 99.0;
  const double r2 = (100.0 * f3 - f2) / 99.0;
  rep.delta_phi = (1e4 * r2 - r1) / (1e4 - 1.0);
  rep.extrapolation_residual = std::abs(r2 - r1);
  rep.status = SensitivityStatus::Ok;
  return rep;
}

double optimal_sensitivity_asymptote(double beta1, double beta2) {
  return 2.0 / (std::cosh(beta1) * std::cosh(beta2));
}

double su11_sensitivity(double beta) {
  if (beta == 0.0) {
    return kInf;
  }
  return 1.0 / std::sinh(beta);
}

double offset_sensitivity_n12_n13(double beta1, double beta2, double angle) {
  const double sin_a = std::abs(std::sin(angle));
  if (sin_a < 1e-15) {
    return kInf;
  }
  const double sh1 = std::sinh(beta1);
  const double ch2 = std::cosh(beta2 / 2.0);
  const double root = std::sqrt(2.0 * sh1 * sh1 * std::cos(angle) + std::cosh(2.0 * beta1) + 3.0);
  return sh1 * std::abs(std::cos(angle / 2.0)) / (ch2 * ch2 * sh1 * sh1 * sin_a) * root;
}

double offset_sensitivity_n12_n13_high_gain(double beta2, double angle) {
  const double sin_a = std::abs(std::sin(angle));
  if (sin_a < 1e-15) {
    return kInf;
  }
  const double ch2 = std::cosh(beta2 / 2.0);
  return std::sqrt(2.0 * std::cos(angle) + 2.0) * std::abs(std::cos(angle / 2.0)) / (ch2 * ch2 * sin_a);
}

double limit_sensitivity_n12_n13(double beta1, double beta2) {
  if (beta1 == 0.0 && beta2 == 0.0) {
    return kInf;
  }
  const double ch1h = std::cosh(beta1 / 2.0);
  const double ch2h = std::cosh(beta2 / 2.0);
  const double sh1 = std::sinh(beta1);
  const double sh2 = std::sinh(beta2);
  const double ch1 = std::cosh(beta1);
  const double num = 2.0 * std::sqrt(4.0 * std::pow(ch2h, 4) * sh1 * sh1 + ch1h * ch1h * sh2 * sh2);
  const double den = 4.0 * ch2h * ch2h * sh1 * sh1 + sh2 * sh2 * ch1 * (1.0 + ch1);
  return num / den;
}

}  // namespace su12
