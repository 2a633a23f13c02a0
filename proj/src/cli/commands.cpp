#include "su12/cli/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>
#include <sstream>

#include "su12/cli/csv.hpp"
#include "su12/fock_oracle.hpp"
#include "su12/optimizer.hpp"

namespace su12::cli {

namespace {

using Entries = std::vector<std::pair<std::string, std::string>>;

void append(Entries& dst, const Entries& src) { dst.insert(dst.end(), src.begin(), src.end()); }

Entries search_defaults() {
  return {{"grid_lo", "-3"}, {"grid_hi", "3"}, {"grid_points", "61"}, {"refine", "4"}, {"epsilon", "0.001"}};
}

WeightSearchSpec search_from(const ParamSet& p) {
  WeightSearchSpec spec;
  spec.first = {p.get_double("grid_lo"), p.get_double("grid_hi"), p.get_int("grid_points")};
  spec.second = spec.first;
  spec.refinement_rounds = p.get_int("refine");
  spec.epsilon = p.get_double("epsilon");
  if (spec.first.points < 2 || spec.refinement_rounds < 0 || !(spec.epsilon > 0.0) ||
      !(spec.first.hi > spec.first.lo)) {
    throw ConfigError("search grid needs grid_hi > grid_lo, grid_points >= 2, refine >= 0, epsilon > 0");
  }
  return spec;
}

GridAxis axis_from(const ParamSet& p, const std::string& prefix, int min_points = 1) {
  GridAxis a{p.get_double(prefix + "_lo"), p.get_double(prefix + "_hi"), p.get_int(prefix + "_points")};
  if (a.points < min_points || (a.points > 1 && !(a.hi > a.lo))) {
    throw ConfigError("axis '" + prefix + "' needs " + prefix + "_hi > " + prefix + "_lo and at least " +
                      std::to_string(min_points) + " points");
  }
  return a;
}

PhaseIndex phase_from(const ParamSet& p) {
  const int j = p.get_int("phase");
  if (j < 1 || j > 3) {
    throw ConfigError("phase must be 1, 2 or 3");
  }
  return PhaseIndex(j);
}

DetectorWeights weights_from(const ParamSet& p) {
  DetectorWeights w{p.get_double("s"), p.get_double("t"), p.get_double("r")};
  if (w.is_zero()) {
    throw ConfigError("detector weights s, t, r must not all vanish");
  }
  return w;
}

InputState checked_input(const ParamSet& p) {
  InputState in = input_from(p);
  try {
    in.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return in;
}

std::filesystem::path output_dir(const RunOptions& opts, bool always) {
  if (opts.out_dir.empty() && !always) {
    return {};
  }
  std::filesystem::path dir = opts.out_dir.empty() ? std::filesystem::path(".") : std::filesystem::path(opts.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw ConfigError("cannot create output directory '" + dir.string() + "'");
  }
  return dir;
}

// Prints key = value lines and mirrors them to summary.txt when an output
// directory is in use.
class Summary {
 public:
  Summary(std::string command, const ParamSet& params, const RunOptions& opts)
      : lines_(provenance_lines(std::move(command), params, opts.timestamp)) {
    for (auto& l : lines_) {
      l = "# " + l;
    }
  }

  void add(const std::string& key, const std::string& value) { body_.push_back(key + " = " + value); }
  void add(const std::string& key, double value) { add(key, format_number(value)); }

  void flush(std::ostream& out, const std::filesystem::path& dir) const {
    for (const auto& l : body_) {
      out << l << '\n';
    }
    if (!dir.empty()) {
      std::vector<std::string> all = lines_;
      all.insert(all.end(), body_.begin(), body_.end());
      write_lines((dir / "summary.txt").string(), all);
    }
  }

 private:
  std::vector<std::string> lines_;
  std::vector<std::string> body_;
};

bool close(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

// Balanced vacuum device at zero phases: the regime of the closed forms.
bool closed_form_regime(const InterferometerConfig& cfg, const InputState& in) {
  const InterferometerConfig ref = InterferometerConfig::balanced(cfg.fwm1.beta, cfg.fwm2.beta);
  auto same = [](const FwmParams& a, const FwmParams& b) { return close(a.beta, b.beta) && close(a.theta, b.theta); };
  return in.is_vacuum() && same(cfg.fwm1, ref.fwm1) && same(cfg.fwm2, ref.fwm2) && same(cfg.fwm3, ref.fwm3) &&
         same(cfg.fwm4, ref.fwm4) && cfg.phases.phi == PhaseShifts{}.phi;
}

bool parallel_to(const DetectorWeights& a, const DetectorWeights& b) {
  const Eigen::Vector3d u = a.vector();
  const Eigen::Vector3d v = b.vector();
  return u.cross(v).norm() <= 1e-12 * u.norm() * v.norm();
}

int figure3(const ParamSet& p, CsvTable& table, Summary& summary) {
  const InterferometerConfig cfg = interferometer_from(p);
  const GridAxis phi = axis_from(p, "phi");
  std::vector<SurfaceCell> cells;
  try {
    cells = phase_surface(cfg, checked_input(p), weights_from(p), phi, phi);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  table.header = {"phi2", "phi3", "dphi1"};
  const SurfaceCell* best = nullptr;
  for (const auto& c : cells) {
    table.add_row({c.x, c.y, c.value});
    if (std::isfinite(c.value) && (!best || c.value < best->value)) {
      best = &c;
    }
  }
  if (best) {
    summary.add("argmin_phi2", best->x);
    summary.add("argmin_phi3", best->y);
    summary.add("min_dphi1", best->value);
  }
  return kExitOk;
}

int figure4(const ParamSet& p, CsvTable& table, Summary& summary) {
  const InterferometerConfig cfg = interferometer_from(p);
  const GridAxis ratio = axis_from(p, "ratio");
  const auto cells = weight_surface(cfg, checked_input(p), ratio, ratio, p.get_double("epsilon"));
  table.header = {"t_over_s", "r_over_s", "dphi1"};
  const SurfaceCell* best = nullptr;
  for (const auto& c : cells) {
    table.add_row({c.x, c.y, c.value});
    if (std::isfinite(c.value) && (!best || c.value < best->value)) {
      best = &c;
    }
  }
  if (best) {
    summary.add("argmin_t_over_s", best->x);
    summary.add("argmin_r_over_s", best->y);
    summary.add("min_dphi1", best->value);
  }
  return kExitOk;
}

int figure5(const ParamSet& p, CsvTable& table, Summary& summary) {
  ScalingSweep sweep;
  const std::string panel = p.get("panel");
  if (panel == "a") {
    sweep.kind = SweepKind::FixBeta1;
  } else if (panel == "b") {
    sweep.kind = SweepKind::FixBeta2;
  } else if (panel == "diagonal") {
    sweep.kind = SweepKind::Diagonal;
  } else {
    throw ConfigError("panel must be a, b or diagonal");
  }
  sweep.fixed = p.get_double("fixed");
  sweep.range = axis_from(p, "sweep", 2);
  if (sweep.range.lo < 0.0 || sweep.fixed < 0.0) {
    throw ConfigError("gains must be non-negative");
  }
  const ScalingCurve curve = scaling_curve(InputKind::Vacuum, sweep, 0.0, search_from(p));
  table.header = {"beta", "n_total", "dphi1", "dphi3", "heisenberg"};
  for (const auto& pt : curve.points) {
    table.add_row({pt.parameter, pt.n_total, pt.dphi1, pt.dphi3, pt.heisenberg});
  }
  ScalingCurve upper;
  upper.points.assign(curve.points.begin() + static_cast<long>(curve.points.size() / 2), curve.points.end());
  summary.add("slope_dphi1", log_log_slope(curve));
  summary.add("slope_dphi3", log_log_slope(curve, true));
  summary.add("slope_dphi1_upper_half", log_log_slope(upper));
  return kExitOk;
}

int figure67(int port, const ParamSet& p, CsvTable& table, Summary& summary) {
  const GridAxis beta2 = axis_from(p, "beta2");
  const GridAxis alpha = axis_from(p, "alpha");
  if (beta2.lo < 0.0 || alpha.lo < 0.0) {
    throw ConfigError("gain and amplitude axes must be non-negative");
  }
  const auto cells = optimal_ratio_surface(port, beta2, alpha, search_from(p));
  table.header = {"beta2", "alpha_abs", "opt_ratio"};
  for (const auto& c : cells) {
    table.add_row({c.beta2, c.alpha_abs, c.ratio});
  }
  summary.add("port", std::to_string(port));
  summary.add("ratio", port == 1 ? "r_over_t" : "t_over_s");
  return kExitOk;
}

int figure8(const ParamSet& p, CsvTable& table, Summary& summary) {
  const int port = p.get_int("port");
  if (port != 1 && port != 3) {
    throw ConfigError("port must be 1 or 3");
  }
  ScalingSweep sweep;
  const std::string kind = p.get("sweep");
  if (kind == "gain") {
    sweep.kind = SweepKind::Diagonal;
  } else if (kind == "intensity") {
    sweep.kind = SweepKind::Intensity;
  } else {
    throw ConfigError("sweep must be gain or intensity");
  }
  sweep.fixed = p.get_double("fixed");
  sweep.range = axis_from(p, "sweep", 2);
  if (sweep.range.lo < 0.0 || sweep.fixed < 0.0) {
    throw ConfigError("sweep values must be non-negative");
  }
  const InputKind in = port == 1 ? InputKind::CoherentPort1 : InputKind::CoherentPort3;
  const ScalingCurve curve = scaling_curve(in, sweep, p.get_double("amplitude"));
  table.header = {"sweep_param", "n_total", "dphi1", "heisenberg"};
  for (const auto& pt : curve.points) {
    table.add_row({pt.parameter, pt.n_total, pt.dphi1, pt.heisenberg});
  }
  summary.add("slope_dphi1", log_log_slope(curve));
  return kExitOk;
}

double max_abs(const Eigen::MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

ParamSet default_params(const std::string& command, int figure) {
  Entries e;
  if (command == "lie-verify") {
    e = {{"seed", "20240601"}};
  } else if (command == "sensitivity") {
    e = physics_defaults(3.0, 3.0);
    append(e, {{"phase", "1"}, {"s", "1"}, {"t", "0"}, {"r", "1"}, {"method", "auto"}});
  } else if (command == "optimize") {
    e = physics_defaults(3.0, 3.0);
    append(e, {{"phase", "1"}, {"fixed_zero", "none"}, {"canonical", "1"}});
    append(e, search_defaults());
  } else if (command == "oracle-check") {
    e = physics_defaults(0.3, 0.3);
    for (auto& kv : e) {
      if (kv.first == "alpha1_re") {
        kv.second = "0.5";
      } else if (kv.first == "phi1") {
        kv.second = "0.1";
      }
    }
    append(e, {{"cases", "50"}, {"seed", "7"}, {"cutoff", "14"}, {"beta_max", "0.5"}, {"alpha_max", "0.7"}});
  } else if (command == "figure") {
    switch (figure) {
      case 3:
        e = physics_defaults(3.0, 3.0);
        append(e, {{"s", "1"}, {"t", "1"}, {"r", "0"}, {"phi_lo", "-0.5"}, {"phi_hi", "0.5"}, {"phi_points", "21"}});
        break;
      case 4:
        e = physics_defaults(3.0, 3.0);
        append(e, {{"ratio_lo", "-3"}, {"ratio_hi", "3"}, {"ratio_points", "61"}, {"epsilon", "0.001"}});
        break;
      case 5:
        e = {{"panel", "a"}, {"fixed", "3"}, {"sweep_lo", "0.5"}, {"sweep_hi", "5"}, {"sweep_points", "10"}};
        append(e, search_defaults());
        break;
      case 6:
      case 7:
        e = {{"beta2_lo", "0.5"}, {"beta2_hi", "5"}, {"beta2_points", "10"},
             {"alpha_lo", "0"},   {"alpha_hi", "10"}, {"alpha_points", "11"}};
        append(e, search_defaults());
        break;
      case 8:
        e = {{"port", "1"},     {"sweep", "gain"},  {"amplitude", "5"},   {"fixed", "3"},
             {"sweep_lo", "1"}, {"sweep_hi", "5"},  {"sweep_points", "9"}};
        break;
      default:
        throw ConfigError("figure must be one of 3, 4, 5, 6, 7, 8");
    }
  } else {
    throw ConfigError("unknown command '" + command + "'");
  }
  return ParamSet(std::move(e));
}

ParamSet resolve_params(const std::string& command, const RunOptions& opts, int figure) {
  ParamSet p = default_params(command, figure);
  if (!opts.config_path.empty()) {
    p.load_file(opts.config_path);
  }
  for (const auto& o : opts.overrides) {
    p.apply_override(o);
  }
  if (p.has("beta3")) {
    resolve_balanced(p);
  }
  return p;
}

int cmd_lie_verify(const StructureConstantTable& table, std::uint64_t seed, std::ostream& out) {
  int failures = 0;
  const auto results = verify_lie_properties(table, seed);
  for (const auto& r : results) {
    out << (r.pass ? "PASS " : "FAIL ") << r.name << " (deviation " << format_number(r.deviation) << ")\n";
    failures += r.pass ? 0 : 1;
  }
  out << results.size() - failures << "/" << results.size() << " properties hold\n";
  return failures ? kExitCheckFailed : kExitOk;
}

int cmd_lie_verify(const RunOptions& opts, std::ostream& out) {
  const ParamSet p = resolve_params("lie-verify", opts);
  const int seed = p.get_int("seed");
  std::ostringstream body;
  const int code = cmd_lie_verify(commutator_table(), static_cast<std::uint64_t>(seed), body);
  out << body.str();
  const auto dir = output_dir(opts, false);
  if (!dir.empty()) {
    Summary s("lie-verify", p, opts);
    s.add("status", code == kExitOk ? "PASS" : "FAIL");
    std::ostringstream sink;
    s.flush(sink, dir);
  }
  return code;
}

int cmd_sensitivity(const RunOptions& opts, std::ostream& out) {
  const ParamSet p = resolve_params("sensitivity", opts);
  const InterferometerConfig cfg = interferometer_from(p);
  const InputState in = checked_input(p);
  const DetectorWeights w = weights_from(p);
  const PhaseIndex j = phase_from(p);
  const std::string method = p.get("method");
  bool limit = false;
  if (method == "auto") {
    limit = cfg.phases.phi == PhaseShifts{}.phi;
  } else if (method == "limit") {
    limit = true;
  } else if (method != "point") {
    throw ConfigError("method must be auto, point or limit");
  }
  const SensitivityReport rep = limit ? zero_phase_limit(j, cfg, in, w) : phase_sensitivity(j, cfg, in, w);

  Summary s("sensitivity", p, opts);
  s.add("delta_phi", rep.delta_phi);
  s.add("n_total", rep.n_total);
  s.add("method", to_string(rep.method));
  s.add("status", to_string(rep.status));
  s.add("mean_derivative", rep.mean_derivative);
  s.add("estimator_sd", rep.estimator_sd);
  if (limit) {
    s.add("extrapolation_residual", rep.extrapolation_residual);
  }
  if (closed_form_regime(cfg, in)) {
    const double b1 = cfg.fwm1.beta;
    const double b2 = cfg.fwm2.beta;
    s.add("ref_high_gain_optimum", optimal_sensitivity_asymptote(b1, b2));
    s.add("ref_su11_beta1", su11_sensitivity(b1));
    if (j.value() == 1 && parallel_to(canonical_vacuum_weights(w), {1.0, 1.0, 0.0})) {
      s.add("ref_n12_n13_limit", limit_sensitivity_n12_n13(b1, b2));
    }
  }
  s.flush(out, output_dir(opts, false));
  return rep.status == SensitivityStatus::NonConvergent ? kExitGuard : kExitOk;
}

int cmd_optimize(const RunOptions& opts, std::ostream& out) {
  const ParamSet p = resolve_params("optimize", opts);
  const InterferometerConfig cfg = interferometer_from(p);
  const InputState in = checked_input(p);
  const PhaseIndex j = phase_from(p);
  WeightSearchSpec spec = search_from(p);
  spec.canonicalize_vacuum = p.get_bool("canonical");
  const std::string fz = p.get("fixed_zero");
  if (fz == "s") {
    spec.fixed_zero = WeightComponent::S;
  } else if (fz == "t") {
    spec.fixed_zero = WeightComponent::T;
  } else if (fz == "r") {
    spec.fixed_zero = WeightComponent::R;
  } else if (fz != "none") {
    throw ConfigError("fixed_zero must be none, s, t or r");
  }
  const WeightOptimum opt = optimize_weights(j, cfg, in, spec);

  Summary s("optimize", p, opts);
  s.add("s", opt.weights.s);
  s.add("t", opt.weights.t);
  s.add("r", opt.weights.r);
  if (spec.fixed_zero) {
    const char* const names[] = {"r_over_t", "r_over_s", "t_over_s"};
    s.add(names[static_cast<int>(*spec.fixed_zero)], opt.ratios.at(0));
  } else {
    s.add("t_over_s", opt.ratios.at(0));
    s.add("r_over_s", opt.ratios.at(1));
  }
  s.add("final_step", opt.final_step);
  s.add("delta_phi_at_epsilon", opt.at_epsilon.delta_phi);
  s.add("delta_phi_limit", opt.limit.delta_phi);
  s.add("limit_status", to_string(opt.limit.status));
  s.add("n_total", opt.limit.n_total);
  s.flush(out, output_dir(opts, false));
  return kExitOk;
}

int cmd_figure(int figure, const RunOptions& opts, std::ostream& out) {
  const ParamSet p = resolve_params("figure", opts, figure);
  const std::string command = "figure " + std::to_string(figure);
  CsvTable table;
  table.provenance = provenance_lines(command, p, opts.timestamp);
  Summary s(command, p, opts);
  switch (figure) {
    case 3:
      figure3(p, table, s);
      break;
    case 4:
      figure4(p, table, s);
      break;
    case 5:
      figure5(p, table, s);
      break;
    case 6:
    case 7:
      figure67(figure == 6 ? 1 : 3, p, table, s);
      break;
    case 8:
      figure8(p, table, s);
      break;
  }
  const auto dir = output_dir(opts, true);
  const auto csv = dir / ("fig" + std::to_string(figure) + ".csv");
  table.write_file(csv.string());
  s.add("file", csv.string());
  s.add("rows", std::to_string(table.rows.size()));
  s.flush(out, dir);
  return kExitOk;
}

int cmd_oracle_check(const RunOptions& opts, std::ostream& out) {
  const ParamSet p = resolve_params("oracle-check", opts);
  const int cases = p.get_int("cases");
  const int cutoff = p.get_int("cutoff");
  const double beta_max = p.get_double("beta_max");
  const double alpha_max = p.get_double("alpha_max");
  if (cases < 0 || cutoff < 2 || beta_max < 0.0 || alpha_max < 0.0) {
    throw ConfigError("oracle-check needs cases >= 0, cutoff >= 2, beta_max >= 0, alpha_max >= 0");
  }

  struct Case {
    InterferometerConfig cfg;
    InputState in;
    DetectorWeights w;
    PhaseIndex j;
  };
  std::vector<Case> suite{{interferometer_from(p), checked_input(p), {1.0, -0.5, 2.0}, PhaseIndex(1)}};
  std::mt19937_64 rng(static_cast<std::uint64_t>(p.get_int("seed")));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double two_pi = 2.0 * std::numbers::pi;
  for (int n = 0; n < cases; ++n) {
    Case c{InterferometerConfig{}, InputState{}, {}, PhaseIndex(1 + n % 3)};
    for (FwmParams* f : {&c.cfg.fwm1, &c.cfg.fwm2, &c.cfg.fwm3, &c.cfg.fwm4}) {
      f->beta = beta_max * unit(rng);
      f->theta = two_pi * unit(rng);
    }
    for (double& phi : c.cfg.phases.phi) {
      phi = two_pi * unit(rng) - std::numbers::pi;
    }
    // alpha_max bounds the total input amplitude, spread over the three ports.
    const double radius = alpha_max * unit(rng);
    Eigen::Vector3d share(unit(rng), unit(rng), unit(rng));
    share /= std::max(share.norm(), 1e-300);
    for (int k = 0; k < 3; ++k) {
      c.in.alpha[k] = std::polar(radius * share[k], two_pi * unit(rng));
    }
    c.w = {4.0 * unit(rng) - 2.0, 4.0 * unit(rng) - 2.0, 4.0 * unit(rng) - 2.0};
    suite.push_back(c);
  }

  double dev_mean = 0.0;
  double dev_cov = 0.0;
  double dev_var = 0.0;
  double dev_deriv = 0.0;
  double dev_conserved = 0.0;
  double max_leak = 0.0;
  for (const auto& c : suite) {
    const PhotonStatistics g = output_statistics(c.cfg, c.in);
    const fock::FockStateVector state = fock::run_circuit(c.cfg, c.in, cutoff);
    const PhotonStatistics f = fock::photon_statistics(state);
    dev_mean = std::max(dev_mean, max_abs(g.mean - f.mean));
    dev_cov = std::max(dev_cov, max_abs(g.cov - f.cov));
    dev_var = std::max(dev_var, std::abs(estimator_stats(g, c.w).variance - fock::estimator_stats(state, c.w).variance));
    dev_deriv = std::max(dev_deriv, std::abs(mean_derivative(c.j, c.cfg, c.in, c.w) -
                                             fock::mean_derivative(c.j, c.cfg, c.in, c.w, cutoff)));
    const DetectorWeights conserved{1.0, -1.0, -1.0};
    const double before = fock::estimator_stats(fock::FockStateVector::coherent(c.in, cutoff), conserved).mean;
    dev_conserved = std::max(dev_conserved, std::abs(fock::estimator_stats(state, conserved).mean - before));
    max_leak = std::max(max_leak, state.leakage);
  }
  const fock::KMoments km = fock::k_moments(fock::FockStateVector::vacuum(cutoff));
  double dev_k = 0.0;
  for (int i = 0; i < 4; ++i) {
    dev_k = std::max(dev_k, std::abs(km.cov(i, i) - 0.25));
  }

  struct Row {
    const char* name;
    double dev;
    double tol;
  };
  const Row rows[] = {
      {"photon_mean", dev_mean, 1e-6},
      {"photon_covariance", dev_cov, 1e-6},
      {"estimator_variance", dev_var, 1e-6},
      {"phase_derivative", dev_deriv, 1e-6},
      {"conserved_difference", dev_conserved, 1e-6},
      {"vacuum_k_variance", dev_k, 1e-9},
  };
  Summary s("oracle-check", p, opts);
  bool ok = true;
  out << "quantity,max_abs_deviation,tolerance,result\n";
  for (const auto& r : rows) {
    const bool pass = r.dev < r.tol;
    ok = ok && pass;
    char tol[16];
    std::snprintf(tol, sizeof tol, "%g", r.tol);
    out << r.name << ',' << format_number(r.dev) << ',' << tol << ',' << (pass ? "PASS" : "FAIL") << '\n';
    s.add(r.name, r.dev);
  }
  s.add("cases", std::to_string(suite.size()));
  s.add("max_leakage", max_leak);
  s.add("status", ok ? "PASS" : "FAIL");
  out << "cases = " << suite.size() << "\nmax_leakage = " << format_number(max_leak) << '\n';
  std::ostringstream file_only;
  s.flush(file_only, output_dir(opts, false));
  return ok ? kExitOk : kExitCheckFailed;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"SU(1,2) interferometer model: algebra checks, sensitivities, weight optimisation, figure data"};
  app.require_subcommand(1);
  RunOptions opts;
  bool no_timestamp = false;
  int figure = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opts.config_path, "key = value parameter file");
    sub->add_option("--set", opts.overrides, "override one parameter, KEY=VALUE (repeatable)");
    sub->add_option("--out", opts.out_dir, "output directory");
    sub->add_flag("--no-timestamp", no_timestamp, "omit the generation time from written files");
  };
  CLI::App* lie = app.add_subcommand("lie-verify", "check the algebra and group properties");
  CLI::App* sens = app.add_subcommand("sensitivity", "phase sensitivity of a weighted photon-number estimator");
  CLI::App* optc = app.add_subcommand("optimize", "search detector weights for the best sensitivity");
  CLI::App* fig = app.add_subcommand("figure", "write the data table of one figure");
  CLI::App* oracle = app.add_subcommand("oracle-check", "compare the Gaussian pipeline with the Fock simulator");
  for (CLI::App* sub : {lie, sens, optc, fig, oracle}) {
    add_common(sub);
  }
  fig->add_option("number", figure, "figure number (3..8)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  opts.timestamp = !no_timestamp;

  try {
    if (*lie) {
      return cmd_lie_verify(opts, out);
    }
    if (*sens) {
      return cmd_sensitivity(opts, out);
    }
    if (*optc) {
      return cmd_optimize(opts, out);
    }
    if (*fig) {
      return cmd_figure(figure, opts, out);
    }
    return cmd_oracle_check(opts, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const fock::LeakageExceeded& e) {
    err << "engine guard: " << e.what() << '\n';
    return kExitGuard;
  } catch (const AllDivergentError& e) {
    err << "engine guard: " << e.what() << '\n';
    return kExitGuard;
  }
}

}  // namespace su12::cli
