#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "su12/sensitivity.hpp"

namespace su12 {

/// Every cell of a weight search had a divergent or undefined sensitivity.
class AllDivergentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GridAxis {
  double lo = -3.0;
  double hi = 3.0;
  int points = 61;

  double step() const { return points > 1 ? (hi - lo) / (points - 1) : 0.0; }
  double at(int i) const { return lo + i * step(); }
  std::vector<double> values() const;
};

/// Weight component that may be forced to zero.
enum class WeightComponent { S = 0, T = 1, R = 2 };

/// Search over ratios of the detector weights. With no forced zero the free
/// ratios are (t/s, r/s); with one component forced to zero there is a single
/// ratio (r/t for s = 0, r/s for t = 0, t/s for r = 0).
struct WeightSearchSpec {
  std::optional<WeightComponent> fixed_zero;
  GridAxis first{};
  GridAxis second{};
  int refinement_rounds = 4;
  /// Offset of phi_j from zero used for every grid evaluation.
  double epsilon = 1e-3;
  /// For vacuum input w and w + c(1,-1,-1) are equivalent; report the
  /// representative with no component along the conserved combination.
  bool canonicalize_vacuum = true;

  int free_ratios() const { return fixed_zero ? 1 : 2; }
};

struct WeightOptimum {
  /// Largest-magnitude component normalised to +1.
  DetectorWeights weights;
  /// Free ratios in the order described by WeightSearchSpec.
  std::vector<double> ratios;
  /// Sensitivity at phi_j = epsilon.
  SensitivityReport at_epsilon;
  /// Extrapolated zero-phase sensitivity at the optimum.
  SensitivityReport limit;
  /// Grid step after the last refinement round.
  double final_step = 0.0;
  /// Best value after the coarse pass and after each refinement round.
  std::vector<double> round_best;
};

/// Weights (1, ratios...) -> DetectorWeights according to `spec`.
DetectorWeights weights_from_ratios(const WeightSearchSpec& spec, const std::vector<double>& ratios);

/// Sensitivity at phi_j = epsilon with the other phases at zero.
SensitivityReport offset_sensitivity(PhaseIndex j, const InterferometerConfig& cfg, const InputState& input,
                                     const DetectorWeights& w, double epsilon);

/// Coarse grid search followed by halving-step local refinement.
/// Throws AllDivergentError if no cell yields a finite sensitivity.
WeightOptimum optimize_weights(PhaseIndex j, const InterferometerConfig& cfg, const InputState& input,
                               const WeightSearchSpec& spec = {});

/// Representative of w modulo the conserved combination (1,-1,-1) with
/// t + r = s, i.e. inside the span of the n12+n13 and n12-n13+2n14 estimators.
DetectorWeights canonical_vacuum_weights(const DetectorWeights& w);

struct SurfaceCell {
  double x = 0.0;
  double y = 0.0;
  double value = 0.0;
};

/// Delta phi_1 over (phi2, phi3) with phi1 = 0; the origin holds the zero-phase limit.
/// Throws std::invalid_argument when beta1 = beta2 = 0 (no signal anywhere).
std::vector<SurfaceCell> phase_surface(const InterferometerConfig& cfg, const InputState& input,
                                       const DetectorWeights& w, const GridAxis& phi2, const GridAxis& phi3);

/// Delta phi_1 at phi1 = epsilon over (t/s, r/s) with s = 1.
std::vector<SurfaceCell> weight_surface(const InterferometerConfig& cfg, const InputState& input,
                                        const GridAxis& t_over_s, const GridAxis& r_over_s,
                                        double epsilon = 1e-3);

enum class InputKind { Vacuum, CoherentPort1, CoherentPort3 };

enum class SweepKind {
  FixBeta1,   // beta1 fixed, sweep beta2
  FixBeta2,   // beta2 fixed, sweep beta1
  Diagonal,   // beta1 = beta2 = swept value
  Intensity,  // beta1 = beta2 = fixed, sweep |alpha|
};

struct ScalingSweep {
  SweepKind kind = SweepKind::FixBeta1;
  double fixed = 3.0;
  GridAxis range{2.5, 5.0, 11};
};

struct ScalingPoint {
  double parameter = 0.0;
  double n_total = 0.0;
  double dphi1 = 0.0;
  /// Vacuum only; NaN for coherent inputs.
  double dphi3 = 0.0;
  double heisenberg = 0.0;
};

struct ScalingCurve {
  std::vector<ScalingPoint> points;
};

/// Vacuum: optimal-weight Delta phi_1 and Delta phi_3. Coherent port 1 uses
/// n13 + n14, port 3 uses n12 + n13. `amplitude` is |alpha| for coherent
/// inputs (ignored for Intensity sweeps).
ScalingCurve scaling_curve(InputKind kind, const ScalingSweep& sweep, double amplitude = 5.0,
                           const WeightSearchSpec& search = {});

/// Least-squares slope of log(dphi1) (or dphi3) against log(n_total).
double log_log_slope(const ScalingCurve& curve, bool use_dphi3 = false);

struct RatioCell {
  double beta2 = 0.0;
  double alpha_abs = 0.0;
  double ratio = 0.0;
  double dphi1 = 0.0;
};

/// Optimal free ratio per (beta2, |alpha|) cell with beta1 = beta2. Port 1
/// forces s = 0 and records r/t; port 3 forces r = 0 and records t/s.
std::vector<RatioCell> optimal_ratio_surface(int port, const GridAxis& beta2, const GridAxis& alpha_abs,
                                             const WeightSearchSpec& search = {});

/// Search spec for a coherent input on `port` (1 or 3).
WeightSearchSpec coherent_port_search(int port, const WeightSearchSpec& base = {});

}  // namespace su12
