#pragma once

#include <complex>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace qdgate::detail {

// V diag(exp(sign i lambda_j t)) V^dagger for Hermitian h. No validation;
// callers on the public surface check their inputs first.
inline Eigen::MatrixXcd expm_hermitian_raw(const Eigen::MatrixXcd& h, double t, int sign) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  const Eigen::VectorXd& lambda = solver.eigenvalues();
  const Eigen::MatrixXcd& v = solver.eigenvectors();
  Eigen::VectorXcd phases(lambda.size());
  for (Eigen::Index j = 0; j < lambda.size(); ++j) {
    phases(j) = std::polar(1.0, static_cast<double>(sign) * lambda(j) * t);
  }
  return v * phases.asDiagonal() * v.adjoint();
}

}  // namespace qdgate::detail
