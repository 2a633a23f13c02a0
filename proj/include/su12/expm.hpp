#pragma once

#include <cmath>
#include <complex>

#include <Eigen/Dense>

namespace su12::linalg {

using Complex = std::complex<double>;

/// Dense matrix exponential by scaling and squaring with a diagonal [8/8]
/// Pade approximant. The scaled matrix has 1-norm <= 1/2, where the [8/8]
/// truncation error is below double precision.
template <typename Derived>
auto expm(const Eigen::MatrixBase<Derived>& input)
    -> Eigen::Matrix<typename Derived::Scalar, Derived::RowsAtCompileTime,
                     Derived::ColsAtCompileTime> {
  using Scalar = typename Derived::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Derived::RowsAtCompileTime,
                               Derived::ColsAtCompileTime>;
  constexpr int degree = 8;

  const Eigen::Index n = input.rows();
  const double norm = input.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  }
  const Matrix a = input / std::ldexp(1.0, squarings);

  // c_k = (2q-k)! q! / ((2q)! k! (q-k)!) via the ratio c_k/c_{k-1}.
  Matrix numerator = Matrix::Identity(n, n);
  Matrix denominator = Matrix::Identity(n, n);
  Matrix power = Matrix::Identity(n, n);
  double c = 1.0;
  for (int k = 1; k <= degree; ++k) {
    c *= static_cast<double>(degree - k + 1) /
         static_cast<double>(k * (2 * degree - k + 1));
    power = (power * a).eval();
    numerator += c * power;
    denominator += ((k % 2 == 0) ? c : -c) * power;
  }
  Matrix result = denominator.partialPivLu().solve(numerator);
  for (int i = 0; i < squarings; ++i) {
    result = (result * result).eval();
  }
  return result;
}

/// Matrix exponential through a complex eigendecomposition. Only valid for
/// diagonalisable input; used as an independent cross-check of expm().
template <typename Derived>
Eigen::MatrixXcd expm_eigen(const Eigen::MatrixBase<Derived>& input) {
  const Eigen::MatrixXcd m = input.template cast<Complex>();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m);
  const Eigen::MatrixXcd& v = solver.eigenvectors();
  const Eigen::VectorXcd exp_values = solver.eigenvalues().array().exp();
  return v * exp_values.asDiagonal() * v.inverse();
}

}  // namespace su12::linalg
