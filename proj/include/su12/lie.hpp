#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace su12 {

using Complex = std::complex<double>;

/// 3x3 complex matrix acting on the operator vector (a1, a2^dagger, a3^dagger).
using ModeMatrix = Eigen::Matrix3cd;

/// Matrix of ad K_i on span{K_1..K_8}: column j holds the coordinates of
/// [K_i, K_j].
using AdjointMatrix = Eigen::Matrix<Complex, 8, 8>;

inline constexpr double kMembershipTol = 1e-10;
inline constexpr double kStructureTol = 1e-9;

/// Label of one of the eight su(1,2) generators K_1..K_8.
class GeneratorIndex {
 public:
  explicit GeneratorIndex(int index);

  int value() const { return index_; }
  int offset() const { return index_ - 1; }

  friend bool operator==(GeneratorIndex, GeneratorIndex) = default;

 private:
  int index_;
};

/// All eight generator labels in order.
std::array<GeneratorIndex, 8> all_generators();

struct BracketTerm {
  Complex coeff;
  GeneratorIndex k;
};

/// Commutation table of K_1..K_8 stored exactly as tabulated: entry (i, j)
/// sits in row K_i, column K_j and equals [K_j, K_i]. The bracket in the
/// usual order is therefore [K_i, K_j] = kTableSign * table(i, j).
class StructureConstantTable {
 public:
  static constexpr double kTableSign = -1.0;

  StructureConstantTable() = default;

  const std::vector<BracketTerm>& entry(GeneratorIndex i, GeneratorIndex j) const {
    return entries_[i.offset()][j.offset()];
  }
  void set_entry(GeneratorIndex i, GeneratorIndex j, std::vector<BracketTerm> terms) {
    entries_[i.offset()][j.offset()] = std::move(terms);
  }

  /// Coordinates of the table entry (i, j) in the basis K_1..K_8.
  Eigen::Matrix<Complex, 8, 1> coordinates(GeneratorIndex i, GeneratorIndex j) const;

  /// Coordinates of the operator bracket [K_i, K_j].
  Eigen::Matrix<Complex, 8, 1> bracket(GeneratorIndex i, GeneratorIndex j) const {
    return kTableSign * coordinates(i, j);
  }

 private:
  std::array<std::array<std::vector<BracketTerm>, 8>, 8> entries_{};
};

/// d/dalpha at alpha = 0 of exp_generator(i, alpha).
ModeMatrix generator_defining_rep(GeneratorIndex i);

/// Matrix representing K_i itself in the defining representation,
/// i * generator_defining_rep(i). The map K_i -> this matrix preserves
/// operator brackets.
ModeMatrix representation_matrix(GeneratorIndex i);

/// Closed-form conjugation matrix of exp(i alpha K_i) on (a1, a2^dagger, a3^dagger).
ModeMatrix exp_generator(GeneratorIndex i, double alpha);

const StructureConstantTable& commutator_table();

AdjointMatrix adjoint_rep(GeneratorIndex i, const StructureConstantTable& table = commutator_table());

/// Adjoint matrix of a general element sum_k coeffs[k] K_{k+1}.
AdjointMatrix adjoint_rep(const Eigen::Matrix<Complex, 8, 1>& coeffs,
                          const StructureConstantTable& table = commutator_table());

/// The metric J = diag(1, -1, -1).
ModeMatrix metric();

/// max |J S^dagger J S - I|.
double pseudo_unitarity_defect(const ModeMatrix& s);

bool is_pseudo_unitary(const ModeMatrix& s, double tol = kMembershipTol);

/// Defining-rep matrix of the conjugation generated by n1 - n2 - n3. It is a
/// multiple of the identity and commutes with every generator.
ModeMatrix conserved_number_generator();

/// Product of exp_generator factors with uniform random parameters in
/// [-max_alpha, max_alpha].
ModeMatrix random_group_element(std::uint64_t seed, int factors = 8, double max_alpha = 2.0);

struct PropertyResult {
  std::string name;
  bool pass;
  double deviation;
};

/// Runs the algebra and group property checks against `table`. One result per
/// property; the 28 independent brackets are reported individually.
std::vector<PropertyResult> verify_lie_properties(const StructureConstantTable& table = commutator_table(),
                                                  std::uint64_t seed = 20240601);

}  // namespace su12
