#include <doctest.h>

#include <cmath>
#include <numbers>

#include "su12/optimizer.hpp"

using namespace su12;

namespace {

const InterferometerConfig kBalanced3 = InterferometerConfig::balanced(3.0, 3.0);

double offset_value(const DetectorWeights& w, const InputState& in = InputState::vacuum(),
                    const InterferometerConfig& c = kBalanced3) {
  return offset_sensitivity(PhaseIndex(1), c, in, w, 1e-3).delta_phi;
}

}  // namespace

TEST_CASE("grid axis") {
  const GridAxis a{-1.0, 1.0, 5};
  CHECK(a.step() == 0.5);
  CHECK(a.values() == std::vector<double>{-1.0, -0.5, 0.0, 0.5, 1.0});
  CHECK(GridAxis{2.0, 2.0, 1}.values() == std::vector<double>{2.0});
}

TEST_CASE("vacuum weights are defined modulo the conserved combination") {
  const DetectorWeights w{1.0, 0.3, -0.8};
  for (double c : {-0.7, 0.4, 2.0}) {
    const DetectorWeights shifted{w.s + c, w.t - c, w.r - c};
    CHECK(offset_value(shifted) == doctest::Approx(offset_value(w)).epsilon(1e-8));
  }
  const DetectorWeights k = canonical_vacuum_weights({2.0, 0.5, 1.0});
  CHECK(k.t + k.r == doctest::Approx(k.s));
  CHECK(offset_value(k) == doctest::Approx(offset_value({2.0, 0.5, 1.0})).epsilon(1e-8));
}

TEST_CASE("vacuum optimum at beta1 = beta2 = 3") {
  const WeightOptimum opt = optimize_weights(PhaseIndex(1), kBalanced3, InputState::vacuum());
  CHECK(opt.final_step <= 0.01);
  CHECK(opt.weights.s == 1.0);
  CHECK(std::abs(opt.ratios[0] - 0.5) <= opt.final_step);
  CHECK(std::abs(opt.ratios[1] - 0.5) <= opt.final_step);
  REQUIRE(opt.limit.ok());
  // Better than the two named combinations.
  CHECK(opt.limit.delta_phi < limit_sensitivity_n12_n13(3.0, 3.0));
  CHECK(opt.limit.delta_phi <
        zero_phase_limit(PhaseIndex(1), kBalanced3, InputState::vacuum(), {1.0, 0.0, 1.0}).delta_phi);
  for (std::size_t i = 1; i < opt.round_best.size(); ++i) {
    CHECK(opt.round_best[i] <= opt.round_best[i - 1]);
  }
}

TEST_CASE("optimum is not beaten by a brute-force fine grid") {
  const WeightOptimum opt = optimize_weights(PhaseIndex(1), kBalanced3, InputState::vacuum());
  const auto cells = weight_surface(kBalanced3, InputState::vacuum(), {-3.0, 3.0, 241}, {-3.0, 3.0, 241});
  double best = 1e300;
  for (const auto& c : cells) {
    if (std::isfinite(c.value)) {
      best = std::min(best, c.value);
    }
  }
  CHECK(opt.at_epsilon.delta_phi <= best * (1.0 + 1e-9));
}

TEST_CASE("optimum is stable under grid refinement and repeatable") {
  const WeightOptimum a = optimize_weights(PhaseIndex(1), kBalanced3, InputState::vacuum());
  WeightSearchSpec fine;
  fine.first.points = fine.second.points = 121;
  const WeightOptimum b = optimize_weights(PhaseIndex(1), kBalanced3, InputState::vacuum(), fine);
  CHECK(std::abs(a.ratios[0] - b.ratios[0]) < a.final_step);
  CHECK(std::abs(a.ratios[1] - b.ratios[1]) < a.final_step);
  const WeightOptimum again = optimize_weights(PhaseIndex(1), kBalanced3, InputState::vacuum());
  CHECK(again.ratios == a.ratios);
  CHECK(again.limit.delta_phi == a.limit.delta_phi);
}

TEST_CASE("no gain means no valid weights") {
  CHECK_THROWS_AS(optimize_weights(PhaseIndex(1), InterferometerConfig::balanced(0.0, 0.0), InputState::vacuum()),
                  AllDivergentError);
}

TEST_CASE("coherent port 1 prefers n13 + n14 at high gain and low intensity") {
  const WeightOptimum opt = optimize_weights(PhaseIndex(1), InterferometerConfig::balanced(5.0, 5.0),
                                             InputState::coherent(1, 0.5), coherent_port_search(1));
  CHECK(opt.weights.s == 0.0);
  CHECK(std::abs(opt.ratios[0] - 1.0) < 0.05);
}

TEST_CASE("coherent port searches") {
  CHECK(coherent_port_search(1).fixed_zero == WeightComponent::S);
  CHECK(coherent_port_search(2).fixed_zero == WeightComponent::T);
  CHECK(coherent_port_search(3).fixed_zero == WeightComponent::R);
  CHECK_THROWS_AS(coherent_port_search(4), std::out_of_range);
  const DetectorWeights w = weights_from_ratios(coherent_port_search(2), {0.7});
  CHECK(w.t == 0.0);
  CHECK(w.r == 0.7);
  // Port 2 detects a combination of beams 12 and 14.
  const WeightOptimum opt = optimize_weights(PhaseIndex(1), kBalanced3, InputState::coherent(2, 2.0),
                                             coherent_port_search(2));
  CHECK(opt.at_epsilon.ok());
  CHECK(opt.weights.t == 0.0);
}

TEST_CASE("phase surface") {
  const GridAxis axis{-0.5, 0.5, 21};
  const auto cells = phase_surface(kBalanced3, InputState::vacuum(), {1.0, 1.0, 0.0}, axis, axis);
  REQUIRE(cells.size() == 441);
  const SurfaceCell& origin = cells[10 * 21 + 10];
  CHECK(origin.x == 0.0);
  CHECK(origin.y == 0.0);
  CHECK(origin.value == doctest::Approx(limit_sensitivity_n12_n13(3.0, 3.0)).epsilon(1e-4));
  double along2_min = 1e300, along2_max = 0.0, along3_min = 1e300, along3_max = 0.0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    CHECK(cells[i].value >= origin.value);
    const SurfaceCell& mirror = cells[cells.size() - 1 - i];
    CHECK(mirror.value == doctest::Approx(cells[i].value).epsilon(1e-8));
    if (cells[i].y == 0.0) {
      along2_min = std::min(along2_min, cells[i].value);
      along2_max = std::max(along2_max, cells[i].value);
    }
    if (cells[i].x == 0.0) {
      along3_min = std::min(along3_min, cells[i].value);
      along3_max = std::max(along3_max, cells[i].value);
    }
  }
  CHECK(along3_max - along3_min > along2_max - along2_min);
  CHECK_THROWS_AS(phase_surface(InterferometerConfig::balanced(0.0, 0.0), InputState::vacuum(), {1.0, 1.0, 0.0},
                                axis, axis),
                  std::invalid_argument);
}

TEST_CASE("weight surface") {
  const GridAxis axis{-1.0, 1.0, 11};
  const auto cells = weight_surface(kBalanced3, InputState::vacuum(), axis, axis);
  REQUIRE(cells.size() == 121);
  for (const auto& c : cells) {
    if (std::abs(c.x) < 1e-12 && std::abs(c.y - 1.0) < 1e-12) {
      CHECK(c.value == doctest::Approx(offset_value({1.0, 0.0, 1.0})));
      CHECK(c.value == doctest::Approx(offset_value({-2.5, 0.0, -2.5})));
    }
  }
}

TEST_CASE("log-log slope of a synthetic curve") {
  ScalingCurve c;
  for (double n : {10.0, 20.0, 40.0, 80.0}) {
    c.points.push_back({0.0, n, 3.0 / n, 5.0 / std::sqrt(n), 1.0 / n});
  }
  CHECK(log_log_slope(c) == doctest::Approx(-1.0));
  CHECK(log_log_slope(c, true) == doctest::Approx(-0.5));
}

TEST_CASE("vacuum scaling approaches the Heisenberg limit") {
  ScalingSweep sweep;
  sweep.kind = SweepKind::FixBeta1;
  sweep.fixed = 3.0;
  sweep.range = {2.5, 5.0, 6};
  const ScalingCurve curve = scaling_curve(InputKind::Vacuum, sweep);
  REQUIRE(curve.points.size() == 6);
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    const auto& p = curve.points[i];
    CHECK(p.heisenberg == doctest::Approx(1.0 / p.n_total));
    CHECK(p.n_total == doctest::Approx(vacuum_total_photon_number(3.0, p.parameter)));
    if (i > 0) {
      CHECK(p.n_total > curve.points[i - 1].n_total);
    }
  }
  const double slope = log_log_slope(curve);
  CHECK(slope >= -1.1);
  CHECK(slope <= -0.9);
  CHECK_THROWS_AS(scaling_curve(InputKind::Vacuum, {SweepKind::Intensity, 3.0, {1.0, 2.0, 2}}), std::invalid_argument);
}

TEST_CASE("coherent scaling") {
  const ScalingCurve p1 = scaling_curve(InputKind::CoherentPort1, {SweepKind::Diagonal, 0.0, {2.0, 5.0, 7}}, 5.0);
  for (const auto& p : p1.points) {
    CHECK(p.dphi1 > p.heisenberg);
    CHECK(std::isnan(p.dphi3));
  }
  const ScalingCurve p3 = scaling_curve(InputKind::CoherentPort3, {SweepKind::Diagonal, 0.0, {4.0, 6.0, 5}}, 5.0);
  CHECK(std::abs(log_log_slope(p3) + 1.0) < 0.1);
  const ScalingCurve intensity =
      scaling_curve(InputKind::CoherentPort3, {SweepKind::Intensity, 3.0, {1.0, 10.0, 4}}, 0.0);
  CHECK(intensity.points.back().n_total > intensity.points.front().n_total);
}

TEST_CASE("ratio surface cells reproduce their minima") {
  const auto cells = optimal_ratio_surface(1, {1.0, 5.0, 3}, {0.5, 5.0, 3});
  REQUIRE(cells.size() == 9);
  const WeightSearchSpec spec = coherent_port_search(1);
  for (const auto& c : cells) {
    const DetectorWeights w = weights_from_ratios(spec, {c.ratio});
    const double again = offset_sensitivity(PhaseIndex(1), InterferometerConfig::balanced(c.beta2, c.beta2),
                                            InputState::coherent(1, c.alpha_abs), w, spec.epsilon)
                             .delta_phi;
    CHECK(again == doctest::Approx(c.dphi1).epsilon(1e-10));
  }
  CHECK_THROWS_AS(optimal_ratio_surface(2, {1.0, 2.0, 2}, {1.0, 2.0, 2}), std::out_of_range);
}
