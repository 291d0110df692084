#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "qdgate/operator_algebra.hpp"

namespace qdgate {

// hbar = 1 internally: energies in eV, times in 1/eV. This constant is the
// only conversion between 1/eV and femtoseconds.
inline constexpr double kHbarEvFs = 0.6582119569;

inline constexpr double to_femtoseconds(double t_inv_ev) { return t_inv_ev * kHbarEvFs; }
inline constexpr double from_femtoseconds(double t_fs) { return t_fs / kHbarEvFs; }

/// Single-dot drive E(t) = A exp(i(omega t + phase)) on a dot with gap epsilon.
struct DriveParams {
  double epsilon = 1.0;
  double amplitude = 0.0;
  double omega = 1.0;
  double phase = 0.0;  ///< drive phase offset in radians
};

struct CoupledDotParams {
  double epsilon = 1.0;
  double coupling = 0.0;  ///< Forster coupling V
};

/// N identical dots with a symmetric pairwise coupling matrix.
struct DotArrayParams {
  std::size_t n_dots = 1;
  double epsilon = 1.0;
  Eigen::MatrixXd coupling;  ///< n_dots x n_dots, symmetric, zero diagonal, entries >= 0
  double drive_amplitude = 0.0;
  double drive_omega = 1.0;
  double drive_phase = 0.0;
  bool drive_on = false;

  /// Every pair coupled with the same strength, as for equispaced dots.
  static DotArrayParams uniform(std::size_t n_dots, double epsilon, double coupling);
  /// Only neighbours (i, i+1) coupled.
  static DotArrayParams nearest_neighbour(std::size_t n_dots, double epsilon, double coupling);
};

void validate(const DriveParams& p);
void validate(const CoupledDotParams& p);
void validate(const DotArrayParams& p);

/// (eps/2) Z + A cos(wt + phi) X + A sin(wt + phi) Y.
HermitianMatrix single_dot_hamiltonian(const DriveParams& p, double t);

/// Time-independent generator in the frame co-rotating with the drive:
/// ((eps - w)/2) Z + A (cos(phi) X + sin(phi) Y). The lab propagator is
/// exp(-i w t Z/2) exp(-i H_rot t).
HermitianMatrix rotating_frame_hamiltonian(const DriveParams& p);

/// Two dots without light, basis {|00>, |01>, |10>, |11>}:
/// diag(eps, 0, 0, -eps) with -2V between |01> and |10>.
HermitianMatrix coupled_hamiltonian(const CoupledDotParams& p);

/// N-dot array in the quasi-spin picture. Site i is the i-th Kronecker factor
/// from the left (big-endian). The pair term is normalised so that N = 2
/// reproduces coupled_hamiltonian: -sum_{i<j} V_ij (X_i X_j + Y_i Y_j).
HermitianMatrix array_hamiltonian(const DotArrayParams& p, double t);

/// sum_i (J_iZ + 1/2) on n_dots sites, with J_Z = Z/2.
ComplexMatrix excitation_number_operator(std::size_t n_dots);

}  // namespace qdgate
