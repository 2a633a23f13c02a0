#include "su12/fock_oracle.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

namespace su12::fock {

namespace {

using Triplet = Eigen::Triplet<Complex>;

struct Occupation {
  std::array<int, 3> n;
};

Occupation occupation(int index, int cutoff) {
  Occupation o;
  o.n[2] = index % cutoff;
  o.n[1] = (index / cutoff) % cutoff;
  o.n[0] = index / (cutoff * cutoff);
  return o;
}

int flat(const std::array<int, 3>& n, int cutoff) { return (n[0] * cutoff + n[1]) * cutoff + n[2]; }

void require_cutoff(int cutoff) {
  if (cutoff < 2) {
    throw std::invalid_argument("Fock cutoff must be at least 2");
  }
}

SparseOperator from_triplets(int dim, const std::vector<Triplet>& entries) {
  SparseOperator m(dim, dim);
  m.setFromTriplets(entries.begin(), entries.end());
  m.makeCompressed();
  return m;
}

// a_p^dagger a_q^dagger (p != q).
SparseOperator pair_creation(int p, int q, int cutoff) {
  const int dim = cutoff * cutoff * cutoff;
  std::vector<Triplet> entries;
  for (int i = 0; i < dim; ++i) {
    auto n = occupation(i, cutoff).n;
    if (n[p] + 1 >= cutoff || n[q] + 1 >= cutoff) {
      continue;
    }
    const double amp = std::sqrt(static_cast<double>((n[p] + 1) * (n[q] + 1)));
    ++n[p];
    ++n[q];
    entries.emplace_back(flat(n, cutoff), i, amp);
  }
  return from_triplets(dim, entries);
}

// a_p^dagger a_q (p != q).
SparseOperator hop(int p, int q, int cutoff) {
  const int dim = cutoff * cutoff * cutoff;
  std::vector<Triplet> entries;
  for (int i = 0; i < dim; ++i) {
    auto n = occupation(i, cutoff).n;
    if (n[q] == 0 || n[p] + 1 >= cutoff) {
      continue;
    }
    const double amp = std::sqrt(static_cast<double>((n[p] + 1) * n[q]));
    ++n[p];
    --n[q];
    entries.emplace_back(flat(n, cutoff), i, amp);
  }
  return from_triplets(dim, entries);
}

SparseOperator diagonal(int cutoff, const std::function<double(const std::array<int, 3>&)>& f) {
  const int dim = cutoff * cutoff * cutoff;
  std::vector<Triplet> entries;
  for (int i = 0; i < dim; ++i) {
    const double v = f(occupation(i, cutoff).n);
    if (v != 0.0) {
      entries.emplace_back(i, i, v);
    }
  }
  return from_triplets(dim, entries);
}

int find_root(std::vector<int>& parent, int i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

void guard(double loss, const std::string& where) {
  if (loss > kLeakageGuard) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", loss);
    throw LeakageExceeded(where + ": truncation loss " + buf + " exceeds the guard");
  }
}

}  // namespace

FockStateVector FockStateVector::vacuum(int cutoff) {
  require_cutoff(cutoff);
  FockStateVector s;
  s.cutoff = cutoff;
  s.amplitudes = Eigen::VectorXcd::Zero(s.dimension());
  s.amplitudes[0] = 1.0;
  return s;
}

FockStateVector FockStateVector::coherent(const InputState& input, int cutoff) {
  require_cutoff(cutoff);
  input.validate();
  std::array<Eigen::VectorXcd, 3> factors;
  double kept = 1.0;
  for (int k = 0; k < 3; ++k) {
    const Complex a = input.alpha[k];
    Eigen::VectorXcd f(cutoff);
    f[0] = std::exp(-0.5 * std::norm(a));
    for (int n = 1; n < cutoff; ++n) {
      f[n] = f[n - 1] * a / std::sqrt(static_cast<double>(n));
    }
    kept *= f.squaredNorm();
    factors[k] = f.normalized();
  }
  FockStateVector s;
  s.cutoff = cutoff;
  s.amplitudes.resize(s.dimension());
  for (int i = 0; i < s.dimension(); ++i) {
    const auto n = occupation(i, cutoff).n;
    s.amplitudes[i] = factors[0][n[0]] * factors[1][n[1]] * factors[2][n[2]];
  }
  s.leakage = 1.0 - kept;
  return s;
}

double FockStateVector::edge_population() const {
  double p = 0.0;
  for (int i = 0; i < dimension(); ++i) {
    const auto n = occupation(i, cutoff).n;
    if (n[0] == cutoff - 1 || n[1] == cutoff - 1 || n[2] == cutoff - 1) {
      p += std::norm(amplitudes[i]);
    }
  }
  return p;
}

FockStateVector TruncatedOperator::apply(const FockStateVector& state) const {
  if (state.cutoff != cutoff) {
    throw std::invalid_argument("operator and state cutoffs differ");
  }
  FockStateVector out = state;
  out.amplitudes = matrix * state.amplitudes;
  return out;
}

double TruncatedOperator::unitarity_defect(int total_photon_limit) const {
  const SparseOperator g = matrix.adjoint() * matrix;
  double worst = 0.0;
  for (int col = 0; col < g.outerSize(); ++col) {
    const auto nc = occupation(col, cutoff).n;
    if (nc[0] + nc[1] + nc[2] > total_photon_limit) {
      continue;
    }
    for (SparseOperator::InnerIterator it(g, col); it; ++it) {
      const auto nr = occupation(static_cast<int>(it.row()), cutoff).n;
      if (nr[0] + nr[1] + nr[2] > total_photon_limit) {
        continue;
      }
      if (it.row() == col) {
        worst = std::max(worst, std::abs(it.value() - 1.0));
      } else {
        worst = std::max(worst, std::abs(it.value()));
      }
    }
    if (g.coeff(col, col) == Complex(0.0)) {
      worst = std::max(worst, 1.0);
    }
  }
  return worst;
}

TruncatedOperator annihilation(int mode, int cutoff) {
  require_cutoff(cutoff);
  if (mode < 1 || mode > 3) {
    throw std::out_of_range("mode must be in 1..3");
  }
  const int k = mode - 1;
  const int dim = cutoff * cutoff * cutoff;
  std::vector<Triplet> entries;
  for (int i = 0; i < dim; ++i) {
    auto n = occupation(i, cutoff).n;
    if (n[k] == 0) {
      continue;
    }
    const double amp = std::sqrt(static_cast<double>(n[k]));
    --n[k];
    entries.emplace_back(flat(n, cutoff), i, amp);
  }
  return {cutoff, from_triplets(dim, entries)};
}

TruncatedOperator number_operator(int mode, int cutoff) {
  require_cutoff(cutoff);
  if (mode < 1 || mode > 3) {
    throw std::out_of_range("mode must be in 1..3");
  }
  const int k = mode - 1;
  return {cutoff, diagonal(cutoff, [k](const std::array<int, 3>& n) { return static_cast<double>(n[k]); })};
}

TruncatedOperator k_operator(GeneratorIndex i, int cutoff) {
  require_cutoff(cutoff);
  const Complex half(0.5, 0.0);
  const Complex minus_half_i(0.0, -0.5);
  SparseOperator m;
  switch (i.value()) {
    case 1: {
      const SparseOperator c = pair_creation(0, 1, cutoff);
      m = half * (c + SparseOperator(c.adjoint()));
      break;
    }
    case 2: {
      const SparseOperator c = pair_creation(0, 1, cutoff);
      m = minus_half_i * (c - SparseOperator(c.adjoint()));
      break;
    }
    case 3: {
      const SparseOperator c = pair_creation(0, 2, cutoff);
      m = half * (c + SparseOperator(c.adjoint()));
      break;
    }
    case 4: {
      const SparseOperator c = pair_creation(0, 2, cutoff);
      m = minus_half_i * (c - SparseOperator(c.adjoint()));
      break;
    }
    case 5: {
      const SparseOperator h = hop(1, 2, cutoff);
      m = -half * (h + SparseOperator(h.adjoint()));
      break;
    }
    case 6: {
      const SparseOperator h = hop(1, 2, cutoff);
      m = minus_half_i * (h - SparseOperator(h.adjoint()));
      break;
    }
    case 7:
      m = diagonal(cutoff, [](const std::array<int, 3>& n) { return 0.5 * (n[0] + n[1] + 1); });
      break;
    case 8:
      m = diagonal(cutoff, [](const std::array<int, 3>& n) {
        return (n[0] - (n[1] + 1) + 2.0 * (n[2] + 1)) / (2.0 * std::sqrt(3.0));
      });
      break;
  }
  m.makeCompressed();
  return {cutoff, m};
}

TruncatedOperator exp_i_hermitian(const TruncatedOperator& h) {
  const int dim = static_cast<int>(h.matrix.rows());
  std::vector<int> parent(dim);
  std::iota(parent.begin(), parent.end(), 0);
  for (int col = 0; col < h.matrix.outerSize(); ++col) {
    for (SparseOperator::InnerIterator it(h.matrix, col); it; ++it) {
      const int a = find_root(parent, static_cast<int>(it.row()));
      const int b = find_root(parent, col);
      if (a != b) {
        parent[a] = b;
      }
    }
  }
  std::vector<std::vector<int>> blocks(dim);
  for (int i = 0; i < dim; ++i) {
    blocks[find_root(parent, i)].push_back(i);
  }
  std::vector<Triplet> entries;
  for (const auto& block : blocks) {
    const int n = static_cast<int>(block.size());
    if (n == 0) {
      continue;
    }
    Eigen::MatrixXcd dense(n, n);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        dense(r, c) = h.matrix.coeff(block[r], block[c]);
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(dense);
    const Eigen::VectorXcd phases = (Complex(0.0, 1.0) * eig.eigenvalues().cast<Complex>()).array().exp();
    const Eigen::MatrixXcd u = eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        if (u(r, c) != Complex(0.0)) {
          entries.emplace_back(block[r], block[c], u(r, c));
        }
      }
    }
  }
  return {h.cutoff, from_triplets(dim, entries)};
}

TruncatedOperator fwm_unitary(double beta, double theta, ModePair pair, int cutoff) {
  require_cutoff(cutoff);
  if (!(beta >= 0.0) || !std::isfinite(beta) || !std::isfinite(theta)) {
    throw std::invalid_argument("gain must be finite and non-negative");
  }
  const int a = pair == ModePair::Modes12 ? 1 : 3;
  const TruncatedOperator ka = k_operator(GeneratorIndex(a), cutoff);
  const TruncatedOperator kb = k_operator(GeneratorIndex(a + 1), cutoff);
  TruncatedOperator h{cutoff, SparseOperator(-beta * (std::sin(theta) * ka.matrix - std::cos(theta) * kb.matrix))};
  TruncatedOperator u = exp_i_hermitian(h);
  guard(u.apply(FockStateVector::vacuum(cutoff)).edge_population(), "four-wave mixer");
  return u;
}

TruncatedOperator phase_unitary(const PhaseShifts& phases, int cutoff) {
  require_cutoff(cutoff);
  const SparseOperator h = diagonal(cutoff, [&](const std::array<int, 3>& n) {
    return phases.phi[0] * n[0] + phases.phi[1] * n[1] + phases.phi[2] * n[2];
  });
  return exp_i_hermitian({cutoff, h});
}

FockStateVector run_circuit(const InterferometerConfig& cfg, const InputState& input, int cutoff) {
  cfg.validate();
  FockStateVector state = FockStateVector::coherent(input, cutoff);
  guard(state.leakage, "coherent preparation");
  auto step = [&](const TruncatedOperator& u, const char* where) {
    state = u.apply(state);
    state.leakage = std::max(state.leakage, state.edge_population());
    guard(state.leakage, where);
  };
  step(fwm_unitary(cfg.fwm1.beta, cfg.fwm1.theta, cfg.fwm1.pair, cutoff), "first mixer");
  step(fwm_unitary(cfg.fwm2.beta, cfg.fwm2.theta, cfg.fwm2.pair, cutoff), "second mixer");
  step(phase_unitary(cfg.phases, cutoff), "phase shifts");
  step(fwm_unitary(cfg.fwm3.beta, cfg.fwm3.theta, cfg.fwm3.pair, cutoff), "third mixer");
  step(fwm_unitary(cfg.fwm4.beta, cfg.fwm4.theta, cfg.fwm4.pair, cutoff), "fourth mixer");
  return state;
}

double expectation(const TruncatedOperator& op, const FockStateVector& state) {
  return std::real(state.amplitudes.dot(op.matrix * state.amplitudes)) / state.amplitudes.squaredNorm();
}

PhotonStatistics photon_statistics(const FockStateVector& state) {
  Eigen::Vector3d first = Eigen::Vector3d::Zero();
  Eigen::Matrix3d second = Eigen::Matrix3d::Zero();
  double total = 0.0;
  for (int i = 0; i < state.dimension(); ++i) {
    const double p = std::norm(state.amplitudes[i]);
    if (p == 0.0) {
      continue;
    }
    const auto n = occupation(i, state.cutoff).n;
    const Eigen::Vector3d v(n[0], n[1], n[2]);
    first += p * v;
    second += p * v * v.transpose();
    total += p;
  }
  PhotonStatistics ps;
  ps.mean = first / total;
  ps.cov = second / total - ps.mean * ps.mean.transpose();
  return ps;
}

KMoments k_moments(const FockStateVector& state) {
  const double total = state.amplitudes.squaredNorm();
  std::array<Eigen::VectorXcd, 8> images;
  KMoments km;
  for (GeneratorIndex i : all_generators()) {
    images[i.offset()] = k_operator(i, state.cutoff).matrix * state.amplitudes;
    km.mean[i.offset()] = std::real(state.amplitudes.dot(images[i.offset()])) / total;
  }
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      km.cov(i, j) = std::real(images[i].dot(images[j])) / total - km.mean[i] * km.mean[j];
    }
  }
  return km;
}

EstimatorStats estimator_stats(const FockStateVector& state, const DetectorWeights& w) {
  return su12::estimator_stats(photon_statistics(state), w);
}

double mean_derivative(PhaseIndex j, const InterferometerConfig& cfg, const InputState& input,
                       const DetectorWeights& w, int cutoff, double h) {
  if (!(h > 0.0)) {
    throw std::invalid_argument("finite-difference step must be positive");
  }
  InterferometerConfig plus = cfg;
  InterferometerConfig minus = cfg;
  plus.phases[j] += h;
  minus.phases[j] -= h;
  const double up = estimator_stats(run_circuit(plus, input, cutoff), w).mean;
  const double down = estimator_stats(run_circuit(minus, input, cutoff), w).mean;
  return (up - down) / (2.0 * h);
}

}  // namespace su12::fock
