#include "su12/lie.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "su12/expm.hpp"

namespace su12 {

namespace {

constexpr Complex kI{0.0, 1.0};

using Vector8c = Eigen::Matrix<Complex, 8, 1>;

GeneratorIndex K(int i) { return GeneratorIndex(i); }

StructureConstantTable build_table() {
  const Complex h = 0.5 * kI;
  const Complex r = 0.5 * std::sqrt(3.0) * kI;
  StructureConstantTable t;
  auto row = [&t](int i, std::array<std::vector<BracketTerm>, 8> entries) {
    for (int j = 1; j <= 8; ++j) {
      t.set_entry(K(i), K(j), std::move(entries[j - 1]));
    }
  };
  // clang-format off
  row(1, {{{}, {{kI, K(7)}}, {{h, K(6)}}, {{-h, K(5)}}, {{-h, K(4)}}, {{h, K(3)}}, {{kI, K(2)}}, {}}});
  row(2, {{{{-kI, K(7)}}, {}, {{h, K(5)}}, {{h, K(6)}}, {{h, K(3)}}, {{h, K(4)}}, {{-kI, K(1)}}, {}}});
  row(3, {{{{-h, K(6)}}, {{-h, K(5)}}, {}, {{h, K(7)}, {r, K(8)}}, {{-h, K(2)}}, {{-h, K(1)}}, {{h, K(4)}}, {{r, K(4)}}}});
  row(4, {{{{h, K(5)}}, {{-h, K(6)}}, {{-h, K(7)}, {-r, K(8)}}, {}, {{h, K(1)}}, {{-h, K(2)}}, {{-h, K(3)}}, {{-r, K(3)}}}});
  row(5, {{{{h, K(4)}}, {{-h, K(3)}}, {{h, K(2)}}, {{-h, K(1)}}, {}, {{h, K(7)}, {-r, K(8)}}, {{-h, K(6)}}, {{r, K(6)}}}});
  row(6, {{{{-h, K(3)}}, {{-h, K(4)}}, {{h, K(1)}}, {{h, K(2)}}, {{-h, K(7)}, {r, K(8)}}, {}, {{h, K(5)}}, {{-r, K(5)}}}});
  row(7, {{{{-kI, K(2)}}, {{kI, K(1)}}, {{-h, K(4)}}, {{h, K(3)}}, {{h, K(6)}}, {{-h, K(5)}}, {}, {}}});
  row(8, {{{}, {}, {{-r, K(4)}}, {{r, K(3)}}, {{-r, K(6)}}, {{r, K(5)}}, {}, {}}});
  // clang-format on
  return t;
}

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

ModeMatrix commutator(const ModeMatrix& a, const ModeMatrix& b) { return a * b - b * a; }

ModeMatrix combine(const Vector8c& coords) {
  ModeMatrix m = ModeMatrix::Zero();
  for (const auto k : all_generators()) {
    m += coords[k.offset()] * representation_matrix(k);
  }
  return m;
}

}  // namespace

GeneratorIndex::GeneratorIndex(int index) : index_(index) {
  if (index < 1 || index > 8) {
    throw std::out_of_range("generator index must be in 1..8, got " + std::to_string(index));
  }
}

std::array<GeneratorIndex, 8> all_generators() {
  return {K(1), K(2), K(3), K(4), K(5), K(6), K(7), K(8)};
}

Eigen::Matrix<Complex, 8, 1> StructureConstantTable::coordinates(GeneratorIndex i, GeneratorIndex j) const {
  Vector8c v = Vector8c::Zero();
  for (const auto& term : entry(i, j)) {
    v[term.k.offset()] += term.coeff;
  }
  return v;
}

ModeMatrix generator_defining_rep(GeneratorIndex i) {
  ModeMatrix g = ModeMatrix::Zero();
  switch (i.value()) {
    case 1:
      g(0, 1) = -0.5 * kI;
      g(1, 0) = 0.5 * kI;
      break;
    case 2:
      g(0, 1) = -0.5;
      g(1, 0) = -0.5;
      break;
    case 3:
      g(0, 2) = -0.5 * kI;
      g(2, 0) = 0.5 * kI;
      break;
    case 4:
      g(0, 2) = -0.5;
      g(2, 0) = -0.5;
      break;
    case 5:
      g(1, 2) = -0.5 * kI;
      g(2, 1) = -0.5 * kI;
      break;
    case 6:
      g(1, 2) = -0.5;
      g(2, 1) = 0.5;
      break;
    case 7:
      g(0, 0) = -0.5 * kI;
      g(1, 1) = 0.5 * kI;
      break;
    case 8: {
      const double c = 1.0 / (2.0 * std::sqrt(3.0));
      g(0, 0) = -c * kI;
      g(1, 1) = -c * kI;
      g(2, 2) = 2.0 * c * kI;
      break;
    }
  }
  return g;
}

ModeMatrix representation_matrix(GeneratorIndex i) { return kI * generator_defining_rep(i); }

ModeMatrix exp_generator(GeneratorIndex i, double alpha) {
  const double ch = std::cosh(alpha / 2.0);
  const double sh = std::sinh(alpha / 2.0);
  const double c = std::cos(alpha / 2.0);
  const double s = std::sin(alpha / 2.0);
  ModeMatrix m = ModeMatrix::Identity();
  switch (i.value()) {
    case 1:
      m(0, 0) = ch;
      m(1, 1) = ch;
      m(0, 1) = -kI * sh;
      m(1, 0) = kI * sh;
      break;
    case 2:
      m(0, 0) = ch;
      m(1, 1) = ch;
      m(0, 1) = -sh;
      m(1, 0) = -sh;
      break;
    case 3:
      m(0, 0) = ch;
      m(2, 2) = ch;
      m(0, 2) = -kI * sh;
      m(2, 0) = kI * sh;
      break;
    case 4:
      m(0, 0) = ch;
      m(2, 2) = ch;
      m(0, 2) = -sh;
      m(2, 0) = -sh;
      break;
    case 5:
      // Compact rotation between modes 2 and 3.
      m(1, 1) = c;
      m(2, 2) = c;
      m(1, 2) = -kI * s;
      m(2, 1) = -kI * s;
      break;
    case 6:
      m(1, 1) = c;
      m(2, 2) = c;
      m(1, 2) = -s;
      m(2, 1) = s;
      break;
    case 7:
      m(0, 0) = std::exp(-kI * alpha / 2.0);
      m(1, 1) = std::exp(kI * alpha / 2.0);
      break;
    case 8: {
      const double a = alpha / (2.0 * std::sqrt(3.0));
      m(0, 0) = std::exp(-kI * a);
      m(1, 1) = std::exp(-kI * a);
      m(2, 2) = std::exp(2.0 * kI * a);
      break;
    }
  }
  return m;
}

const StructureConstantTable& commutator_table() {
  static const StructureConstantTable table = build_table();
  return table;
}

AdjointMatrix adjoint_rep(GeneratorIndex i, const StructureConstantTable& table) {
  AdjointMatrix ad;
  for (const auto j : all_generators()) {
    ad.col(j.offset()) = table.bracket(i, j);
  }
  return ad;
}

AdjointMatrix adjoint_rep(const Eigen::Matrix<Complex, 8, 1>& coeffs, const StructureConstantTable& table) {
  AdjointMatrix ad = AdjointMatrix::Zero();
  for (const auto i : all_generators()) {
    if (coeffs[i.offset()] != Complex{}) {
      ad += coeffs[i.offset()] * adjoint_rep(i, table);
    }
  }
  return ad;
}

ModeMatrix metric() { return Eigen::Vector3cd(1.0, -1.0, -1.0).asDiagonal(); }

double pseudo_unitarity_defect(const ModeMatrix& s) {
  const ModeMatrix j = metric();
  return max_abs(j * s.adjoint() * j * s - ModeMatrix::Identity());
}

bool is_pseudo_unitary(const ModeMatrix& s, double tol) {
  if (!s.allFinite()) {
    return false;
  }
  return pseudo_unitarity_defect(s) <= tol;
}

ModeMatrix conserved_number_generator() {
  // [n1 - n2 - n3, v] = -v for v in (a1, a2^dagger, a3^dagger); the conjugation
  // generator is i times that action.
  return -kI * ModeMatrix::Identity();
}

ModeMatrix random_group_element(std::uint64_t seed, int factors, double max_alpha) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(1, 8);
  std::uniform_real_distribution<double> angle(-max_alpha, max_alpha);
  ModeMatrix s = ModeMatrix::Identity();
  for (int f = 0; f < factors; ++f) {
    const int k = pick(rng);
    s = exp_generator(GeneratorIndex(k), angle(rng)) * s;
  }
  return s;
}

std::vector<PropertyResult> verify_lie_properties(const StructureConstantTable& table, std::uint64_t seed) {
  std::vector<PropertyResult> results;
  auto record = [&results](std::string name, double deviation, double tol) {
    results.push_back({std::move(name), deviation <= tol, deviation});
  };

  // Brackets against the defining representation, one global sign for all pairs.
  for (int i = 1; i <= 8; ++i) {
    for (int j = i + 1; j <= 8; ++j) {
      const ModeMatrix lhs = commutator(representation_matrix(K(i)), representation_matrix(K(j)));
      const ModeMatrix rhs = combine(table.bracket(K(i), K(j)));
      record("bracket [K" + std::to_string(i) + ",K" + std::to_string(j) + "]", max_abs(lhs - rhs),
             kStructureTol);
    }
  }

  double antisym = 0.0;
  double jacobi = 0.0;
  for (const auto i : all_generators()) {
    for (const auto j : all_generators()) {
      antisym = std::max(antisym, (table.coordinates(i, j) + table.coordinates(j, i)).cwiseAbs().maxCoeff());
      for (const auto k : all_generators()) {
        // [Ki,[Kj,Kk]] + [Kj,[Kk,Ki]] + [Kk,[Ki,Kj]] through the adjoint maps.
        const Vector8c v = adjoint_rep(i, table) * table.bracket(j, k) +
                           adjoint_rep(j, table) * table.bracket(k, i) +
                           adjoint_rep(k, table) * table.bracket(i, j);
        jacobi = std::max(jacobi, v.cwiseAbs().maxCoeff());
      }
    }
  }
  record("table antisymmetry", antisym, kStructureTol);
  record("Jacobi identity", jacobi, kStructureTol);

  // Printed ad K1: nonzero entries only at (2,7),(7,2),(3,6),(6,3),(4,5),(5,4).
  {
    AdjointMatrix expected = AdjointMatrix::Zero();
    expected(1, 6) = -kI;
    expected(6, 1) = -kI;
    expected(2, 5) = -0.5 * kI;
    expected(5, 2) = -0.5 * kI;
    expected(3, 4) = 0.5 * kI;
    expected(4, 3) = 0.5 * kI;
    record("ad K1 matches tabulated matrix", max_abs(adjoint_rep(K(1), table) - expected), kStructureTol);
  }

  double trace = 0.0;
  for (const auto i : all_generators()) {
    trace = std::max(trace, std::abs(adjoint_rep(i, table).trace()));
  }
  record("ad K_i traceless", trace, kStructureTol);

  double exp_dev = 0.0;
  double inf_dev = 0.0;
  for (const auto i : all_generators()) {
    const ModeMatrix g = generator_defining_rep(i);
    inf_dev = std::max(inf_dev, max_abs(metric() * g.adjoint() * metric() + g));
    for (double alpha : {-3.0, -1.3, -0.2, 0.0, 0.7, 1.9, 3.0}) {
      exp_dev = std::max(exp_dev, max_abs(exp_generator(i, alpha) - linalg::expm(alpha * g)));
    }
  }
  record("generators infinitesimally pseudo-unitary", inf_dev, kStructureTol);
  record("closed-form exponentials match dense expm", exp_dev, kStructureTol);

  double member = 0.0;
  double det_dev = 0.0;
  for (const auto i : all_generators()) {
    for (double alpha : {-3.0, -0.5, 1.7, 3.0}) {
      const ModeMatrix s = exp_generator(i, alpha);
      member = std::max(member, pseudo_unitarity_defect(s));
      det_dev = std::max(det_dev, std::abs(std::abs(s.determinant()) - 1.0));
    }
  }
  record("exponentials are SU(1,2) members", member, kMembershipTol);
  record("exponentials have unit-modulus determinant", det_dev, kMembershipTol);

  {
    std::mt19937_64 rng(seed);
    double closure = 0.0;
    for (int n = 0; n < 10000; ++n) {
      const ModeMatrix a = random_group_element(rng(), 4, 1.0);
      const ModeMatrix b = random_group_element(rng(), 4, 1.0);
      closure = std::max(closure, pseudo_unitarity_defect(a * b));
    }
    record("group closure over 10^4 random products", closure, 1e-9);
  }

  {
    // exp(-i beta ad G) K_j == e^{-i beta G} K_j e^{i beta G} in the defining rep.
    double conj_dev = 0.0;
    for (double theta : {0.0, 0.4, 2.1}) {
      for (double beta : {0.3, 1.5}) {
        Vector8c coeffs = Vector8c::Zero();
        coeffs[0] = std::cos(theta);
        coeffs[1] = std::sin(theta);
        const Eigen::Matrix<Complex, 8, 8> transport = linalg::expm((-kI * beta) * adjoint_rep(coeffs, table));
        const ModeMatrix g_rep = combine(coeffs);
        const ModeMatrix left = linalg::expm((-kI * beta) * g_rep);
        const ModeMatrix right = linalg::expm((kI * beta) * g_rep);
        for (const auto j : all_generators()) {
          const ModeMatrix direct = left * representation_matrix(j) * right;
          const ModeMatrix via_adjoint = combine(transport.col(j.offset()));
          conj_dev = std::max(conj_dev, max_abs(direct - via_adjoint));
        }
      }
    }
    record("adjoint exponential equals conjugation", conj_dev, kStructureTol);
  }

  {
    const ModeMatrix c = conserved_number_generator();
    double comm = 0.0;
    for (const auto i : all_generators()) {
      comm = std::max(comm, max_abs(commutator(c, generator_defining_rep(i))));
    }
    record("n1 - n2 - n3 commutes with all generators", comm, kStructureTol);
  }

  return results;
}

}  // namespace su12
