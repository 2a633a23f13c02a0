#include "su12/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace su12 {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Candidate {
  std::vector<double> ratios;
  SensitivityReport report;
  bool valid = false;
};

bool better(const SensitivityReport& rep, const Candidate& best) {
  return rep.ok() && std::isfinite(rep.delta_phi) && (!best.valid || rep.delta_phi < best.report.delta_phi);
}

DetectorWeights normalized(const DetectorWeights& w) {
  const Eigen::Vector3d v = w.vector();
  Eigen::Index k = 0;
  v.cwiseAbs().maxCoeff(&k);
  const double scale = v[k];
  return {w.s / scale, w.t / scale, w.r / scale};
}

std::vector<double> ratios_of(const WeightSearchSpec& spec, const DetectorWeights& w) {
  if (!spec.fixed_zero) {
    return {w.t / w.s, w.r / w.s};
  }
  switch (*spec.fixed_zero) {
    case WeightComponent::S:
      return {w.r / w.t};
    case WeightComponent::T:
      return {w.r / w.s};
    case WeightComponent::R:
      return {w.t / w.s};
  }
  return {};
}

}  // namespace

std::vector<double> GridAxis::values() const {
  std::vector<double> v(static_cast<std::size_t>(std::max(points, 0)));
  for (int i = 0; i < points; ++i) {
    v[static_cast<std::size_t>(i)] = at(i);
  }
  return v;
}

DetectorWeights weights_from_ratios(const WeightSearchSpec& spec, const std::vector<double>& ratios) {
  if (!spec.fixed_zero) {
    return {1.0, ratios.at(0), ratios.at(1)};
  }
  switch (*spec.fixed_zero) {
    case WeightComponent::S:
      return {0.0, 1.0, ratios.at(0)};
    case WeightComponent::T:
      return {1.0, 0.0, ratios.at(0)};
    case WeightComponent::R:
      return {1.0, ratios.at(0), 0.0};
  }
  return {};
}

DetectorWeights canonical_vacuum_weights(const DetectorWeights& w) {
  const double c = (w.t + w.r - w.s) / 3.0;
  return {w.s + c, w.t - c, w.r - c};
}

SensitivityReport offset_sensitivity(PhaseIndex j, const InterferometerConfig& cfg, const InputState& input,
                                     const DetectorWeights& w, double epsilon) {
  InterferometerConfig at = cfg;
  at.phases = PhaseShifts{};
  at.phases[j] = epsilon;
  return phase_sensitivity(j, at, input, w);
}

WeightOptimum optimize_weights(PhaseIndex j, const InterferometerConfig& cfg, const InputState& input,
                               const WeightSearchSpec& spec) {
  cfg.validate();
  input.validate();
  const int dims = spec.free_ratios();
  const std::array<GridAxis, 2> axes{spec.first, spec.second};

  auto evaluate = [&](const std::vector<double>& ratios) {
    return offset_sensitivity(j, cfg, input, weights_from_ratios(spec, ratios), spec.epsilon);
  };

  Candidate best;
  WeightOptimum out;

  // Coarse pass, row-major over the free axes.
  const int n0 = axes[0].points;
  const int n1 = dims == 2 ? axes[1].points : 1;
  for (int a = 0; a < n0; ++a) {
    for (int b = 0; b < n1; ++b) {
      std::vector<double> ratios{axes[0].at(a)};
      if (dims == 2) {
        ratios.push_back(axes[1].at(b));
      }
      const SensitivityReport rep = evaluate(ratios);
      if (better(rep, best)) {
        best = {ratios, rep, true};
      }
    }
  }
  if (!best.valid) {
    throw AllDivergentError("every weight cell gives a divergent or undefined sensitivity");
  }
  out.round_best.push_back(best.report.delta_phi);

  std::array<double, 2> step{axes[0].step(), axes[1].step()};
  for (int round = 0; round < spec.refinement_rounds; ++round) {
    step[0] /= 2.0;
    step[1] /= 2.0;
    const std::vector<double> centre = best.ratios;
    for (int a = -2; a <= 2; ++a) {
      for (int b = (dims == 2 ? -2 : 0); b <= (dims == 2 ? 2 : 0); ++b) {
        if (a == 0 && b == 0) {
          continue;
        }
        std::vector<double> ratios{centre[0] + a * step[0]};
        if (dims == 2) {
          ratios.push_back(centre[1] + b * step[1]);
        }
        const SensitivityReport rep = evaluate(ratios);
        if (better(rep, best)) {
          best = {ratios, rep, true};
        }
      }
    }
    out.round_best.push_back(best.report.delta_phi);
  }
  out.final_step = dims == 2 ? std::max(step[0], step[1]) : step[0];

  DetectorWeights w = weights_from_ratios(spec, best.ratios);
  if (spec.canonicalize_vacuum && !spec.fixed_zero && input.is_vacuum()) {
    const DetectorWeights canonical = canonical_vacuum_weights(w);
    if (std::abs(canonical.s) > 1e-12) {
      w = canonical;
    }
  }
  out.weights = normalized(w);
  out.ratios = ratios_of(spec, out.weights);
  out.at_epsilon = best.report;
  out.limit = zero_phase_limit(j, cfg, input, out.weights);
  return out;
}

std::vector<SurfaceCell> phase_surface(const InterferometerConfig& cfg, const InputState& input,
                                       const DetectorWeights& w, const GridAxis& phi2, const GridAxis& phi3) {
  cfg.validate();
  if (cfg.fwm1.beta == 0.0 && cfg.fwm2.beta == 0.0) {
    throw std::invalid_argument("phase surface needs a nonzero gain in the first or second mixer");
  }
  const PhaseIndex j(1);
  std::vector<SurfaceCell> cells;
  cells.reserve(static_cast<std::size_t>(phi2.points * phi3.points));
  for (double p2 : phi2.values()) {
    for (double p3 : phi3.values()) {
      InterferometerConfig at = cfg;
      at.phases = PhaseShifts{{0.0, p2, p3}};
      double value = kNaN;
      if (p2 == 0.0 && p3 == 0.0) {
        value = zero_phase_limit(j, at, input, w).delta_phi;
      } else {
        value = phase_sensitivity(j, at, input, w).delta_phi;
      }
      cells.push_back({p2, p3, value});
    }
  }
  return cells;
}

std::vector<SurfaceCell> weight_surface(const InterferometerConfig& cfg, const InputState& input,
                                        const GridAxis& t_over_s, const GridAxis& r_over_s, double epsilon) {
  cfg.validate();
  const PhaseIndex j(1);
  std::vector<SurfaceCell> cells;
  cells.reserve(static_cast<std::size_t>(t_over_s.points * r_over_s.points));
  for (double t : t_over_s.values()) {
    for (double r : r_over_s.values()) {
      const SensitivityReport rep = offset_sensitivity(j, cfg, input, {1.0, t, r}, epsilon);
      cells.push_back({t, r, rep.delta_phi});
    }
  }
  return cells;
}

ScalingCurve scaling_curve(InputKind kind, const ScalingSweep& sweep, double amplitude,
                           const WeightSearchSpec& search) {
  if (kind == InputKind::Vacuum && sweep.kind == SweepKind::Intensity) {
    throw std::invalid_argument("intensity sweeps need a coherent input");
  }
  ScalingCurve curve;
  for (double x : sweep.range.values()) {
    double beta1 = 0.0;
    double beta2 = 0.0;
    double amp = amplitude;
    switch (sweep.kind) {
      case SweepKind::FixBeta1:
        beta1 = sweep.fixed;
        beta2 = x;
        break;
      case SweepKind::FixBeta2:
        beta1 = x;
        beta2 = sweep.fixed;
        break;
      case SweepKind::Diagonal:
        beta1 = beta2 = x;
        break;
      case SweepKind::Intensity:
        beta1 = beta2 = sweep.fixed;
        amp = x;
        break;
    }
    const InterferometerConfig cfg = InterferometerConfig::balanced(beta1, beta2);
    ScalingPoint p;
    p.parameter = x;
    if (kind == InputKind::Vacuum) {
      const InputState in = InputState::vacuum();
      p.n_total = total_photon_number(cfg, in);
      p.dphi1 = optimize_weights(PhaseIndex(1), cfg, in, search).limit.delta_phi;
      p.dphi3 = optimize_weights(PhaseIndex(3), cfg, in, search).limit.delta_phi;
    } else {
      const int port = kind == InputKind::CoherentPort1 ? 1 : 3;
      const InputState in = InputState::coherent(port, amp);
      const DetectorWeights w = port == 1 ? DetectorWeights{0.0, 1.0, 1.0} : DetectorWeights{1.0, 1.0, 0.0};
      p.n_total = total_photon_number(cfg, in);
      p.dphi1 = zero_phase_limit(PhaseIndex(1), cfg, in, w).delta_phi;
      p.dphi3 = kNaN;
    }
    p.heisenberg = 1.0 / p.n_total;
    if (!curve.points.empty() && !(p.n_total > curve.points.back().n_total)) {
      throw std::invalid_argument("scaling sweep must increase the internal photon number monotonically");
    }
    curve.points.push_back(p);
  }
  return curve;
}

double log_log_slope(const ScalingCurve& curve, bool use_dphi3) {
  double sx = 0.0;
  double sy = 0.0;
  double sxx = 0.0;
  double sxy = 0.0;
  int n = 0;
  for (const auto& p : curve.points) {
    const double y = use_dphi3 ? p.dphi3 : p.dphi1;
    if (!(y > 0.0) || !std::isfinite(y)) {
      continue;
    }
    const double lx = std::log(p.n_total);
    const double ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) {
    return kNaN;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

WeightSearchSpec coherent_port_search(int port, const WeightSearchSpec& base) {
  WeightSearchSpec spec = base;
  switch (port) {
    case 1:
      spec.fixed_zero = WeightComponent::S;
      break;
    case 2:
      spec.fixed_zero = WeightComponent::T;
      break;
    case 3:
      spec.fixed_zero = WeightComponent::R;
      break;
    default:
      throw std::out_of_range("input port must be in 1..3");
  }
  return spec;
}

std::vector<RatioCell> optimal_ratio_surface(int port, const GridAxis& beta2, const GridAxis& alpha_abs,
                                             const WeightSearchSpec& search) {
  if (port != 1 && port != 3) {
    throw std::out_of_range("ratio surfaces are defined for ports 1 and 3");
  }
  const WeightSearchSpec spec = coherent_port_search(port, search);
  std::vector<RatioCell> cells;
  for (double b : beta2.values()) {
    for (double a : alpha_abs.values()) {
      const InterferometerConfig cfg = InterferometerConfig::balanced(b, b);
      const WeightOptimum opt = optimize_weights(PhaseIndex(1), cfg, InputState::coherent(port, a), spec);
      cells.push_back({b, a, opt.ratios.at(0), opt.at_epsilon.delta_phi});
    }
  }
  return cells;
}

}  // namespace su12
