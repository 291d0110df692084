#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qdgate/hamiltonians.hpp"

using namespace qdgate;
namespace orc = qdgate::oracle;

namespace {

double dist(const ComplexMatrix& a, const Matrix& b) { return (a.eigen() - b).norm(); }

// -sum_{i<j} V_ij (X_i X_j + Y_i Y_j) + (eps/2) sum Z_i + drive, built from
// explicit Kronecker products.
Matrix array_oracle(const DotArrayParams& p, double t) {
  const std::size_t n = p.n_dots;
  const Eigen::Index dim = Eigen::Index{1} << n;
  Matrix h = Matrix::Zero(dim, dim);
  for (std::size_t i = 0; i < n; ++i) h += 0.5 * p.epsilon * orc::embed(orc::pauli('Z'), i, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = p.coupling(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      const Matrix xx = orc::embed(orc::pauli('X'), i, n) * orc::embed(orc::pauli('X'), j, n);
      const Matrix yy = orc::embed(orc::pauli('Y'), i, n) * orc::embed(orc::pauli('Y'), j, n);
      h -= v * (xx + yy);
    }
  if (p.drive_on) {
    const double a = p.drive_amplitude;
    const double ang = p.drive_omega * t + p.drive_phase;
    for (std::size_t i = 0; i < n; ++i) {
      h += a * std::cos(ang) * orc::embed(orc::pauli('X'), i, n);
      h += a * std::sin(ang) * orc::embed(orc::pauli('Y'), i, n);
    }
  }
  return h;
}

}  // namespace

TEST(SingleDot, PauliForm) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  for (int trial = 0; trial < 30; ++trial) {
    const DriveParams p{u(rng), u(rng) / 4.0, u(rng), u(rng)};
    const double t = 3.0 * u(rng);
    const double ang = p.omega * t + p.phase;
    const Matrix expected = 0.5 * p.epsilon * orc::pauli('Z') +
                            p.amplitude * std::cos(ang) * orc::pauli('X') +
                            p.amplitude * std::sin(ang) * orc::pauli('Y');
    EXPECT_LT(dist(single_dot_hamiltonian(p, t), expected), 1e-14);
  }
}

TEST(SingleDot, DiagonalWithoutDrive) {
  const auto h = single_dot_hamiltonian({1.4, 0.0, 1.0, 0.0}, 2.5);
  EXPECT_EQ(h.matrix()(0, 0), Complex(0.7));
  EXPECT_EQ(h.matrix()(1, 1), Complex(-0.7));
  EXPECT_EQ(h.matrix()(0, 1), Complex(0.0));
}

TEST(SingleDot, RejectsBadParameters) {
  EXPECT_THROW(single_dot_hamiltonian({0.0, 0.1, 1.0, 0.0}, 0.0), InvalidArgument);
  EXPECT_THROW(single_dot_hamiltonian({1.0, -0.1, 1.0, 0.0}, 0.0), InvalidArgument);
  EXPECT_THROW(single_dot_hamiltonian({1.0, 0.1, 0.0, 0.0}, 0.0), InvalidArgument);
  EXPECT_THROW(single_dot_hamiltonian({1.0, 0.1, 1.0, std::nan("")}, 0.0), InvalidArgument);
}

TEST(RotatingFrame, MatchesFrameTransform) {
  // H_rot = R^dag H R - w Z/2 with R = exp(-i w t Z/2), independent of t.
  const DriveParams p{1.1, 0.3, 0.8, 0.4};
  const Complex i{0.0, 1.0};
  for (double t : {0.0, 0.7, 2.3}) {
    const Matrix r = orc::taylor_expm(-i * p.omega * t * 0.5 * orc::pauli('Z'));
    const Matrix expected = r.adjoint() * single_dot_hamiltonian(p, t).eigen() * r -
                            0.5 * p.omega * orc::pauli('Z');
    EXPECT_LT(dist(rotating_frame_hamiltonian(p), expected), 1e-13);
  }
}

TEST(Coupled, MatrixEntries) {
  const auto h = coupled_hamiltonian({1.4, 0.1});
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = 1.4;
  expected(3, 3) = -1.4;
  expected(1, 2) = -0.2;
  expected(2, 1) = -0.2;
  EXPECT_LT(dist(h, expected), 1e-15);
}

TEST(Coupled, RejectsNonPositive) {
  EXPECT_THROW(coupled_hamiltonian({1.4, 0.0}), InvalidArgument);
  EXPECT_THROW(coupled_hamiltonian({-1.0, 0.1}), InvalidArgument);
}

TEST(Array, TwoDotsEqualCoupled) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double eps = u(rng);
    const double v = u(rng) / 10.0;
    const auto arr = array_hamiltonian(DotArrayParams::uniform(2, eps, v), 0.0);
    EXPECT_LT((arr.eigen() - coupled_hamiltonian({eps, v}).eigen()).norm(), 1e-14);
  }
}

TEST(Array, SingleDotEqualsDrivenDot) {
  DotArrayParams p = DotArrayParams::uniform(1, 1.2, 0.0);
  p.drive_on = true;
  p.drive_amplitude = 0.2;
  p.drive_omega = 0.9;
  p.drive_phase = 0.3;
  for (double t : {0.0, 1.0, 4.2}) {
    const auto single = single_dot_hamiltonian({1.2, 0.2, 0.9, 0.3}, t);
    EXPECT_LT((array_hamiltonian(p, t).eigen() - single.eigen()).norm(), 1e-14);
  }
}

TEST(Array, MatchesKroneckerOracle) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(0.0, 0.2);
  for (std::size_t n : {2u, 3u, 4u, 5u}) {
    DotArrayParams p = DotArrayParams::uniform(n, 1.3, 0.0);
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(n); ++i)
      for (Eigen::Index j = i + 1; j < static_cast<Eigen::Index>(n); ++j)
        p.coupling(i, j) = p.coupling(j, i) = u(rng);
    p.drive_on = (n % 2 == 1);
    p.drive_amplitude = 0.15;
    p.drive_omega = 1.1;
    p.drive_phase = -0.6;
    const double t = 0.83;
    EXPECT_LT(dist(array_hamiltonian(p, t), array_oracle(p, t)), 1e-13) << "n=" << n;
  }
}

TEST(Array, NearestNeighbourCoupling) {
  const auto p = DotArrayParams::nearest_neighbour(4, 1.0, 0.1);
  EXPECT_EQ(p.coupling(0, 1), 0.1);
  EXPECT_EQ(p.coupling(2, 3), 0.1);
  EXPECT_EQ(p.coupling(0, 2), 0.0);
  EXPECT_EQ(p.coupling(0, 3), 0.0);
  EXPECT_LT(dist(array_hamiltonian(p, 0.0), array_oracle(p, 0.0)), 1e-13);
}

TEST(Array, ConservesExcitationNumberWithoutDrive) {
  for (std::size_t n : {2u, 3u, 4u, 6u}) {
    const auto h = array_hamiltonian(DotArrayParams::uniform(n, 0.9, 0.07), 0.0);
    EXPECT_LT(commutator_norm(h, excitation_number_operator(n)), 1e-12) << "n=" << n;
  }
}

TEST(Array, DriveBreaksExcitationNumber) {
  DotArrayParams p = DotArrayParams::uniform(3, 0.9, 0.07);
  p.drive_on = true;
  p.drive_amplitude = 0.1;
  EXPECT_GT(commutator_norm(array_hamiltonian(p, 0.0), excitation_number_operator(3)), 1e-3);
}

TEST(Array, Capacity) {
  EXPECT_THROW(array_hamiltonian(DotArrayParams::uniform(13, 1.0, 0.1), 0.0), CapacityError);
  EXPECT_THROW(excitation_number_operator(13), CapacityError);
}

TEST(Array, RejectsInvalidCoupling) {
  DotArrayParams p = DotArrayParams::uniform(3, 1.0, 0.1);
  p.coupling(0, 1) = 0.2;
  EXPECT_THROW(array_hamiltonian(p, 0.0), InvalidArgument);
  p = DotArrayParams::uniform(3, 1.0, 0.1);
  p.coupling(1, 1) = 0.1;
  EXPECT_THROW(array_hamiltonian(p, 0.0), InvalidArgument);
  p = DotArrayParams::uniform(3, 1.0, -0.1);
  EXPECT_THROW(array_hamiltonian(p, 0.0), InvalidArgument);
}

TEST(Units, FemtosecondRoundTrip) {
  EXPECT_NEAR(to_femtoseconds(1.0), 0.6582119569, 1e-16);
  EXPECT_NEAR(from_femtoseconds(to_femtoseconds(22.4399)), 22.4399, 1e-12);
}

TEST(SingleDot, NamedTimes) {
  const DriveParams p{1.3, 0.2, 0.9, 0.0};
  const Matrix at0 = 0.65 * orc::pauli('Z') + 0.2 * orc::pauli('X');
  EXPECT_LT(dist(single_dot_hamiltonian(p, 0.0), at0), 1e-15);
  const Matrix quarter = 0.65 * orc::pauli('Z') + 0.2 * orc::pauli('Y');
  EXPECT_LT(dist(single_dot_hamiltonian(p, std::numbers::pi / (2 * 0.9)), quarter), 1e-15);
}

TEST(RotatingFrame, NamedCases) {
  EXPECT_LT(dist(rotating_frame_hamiltonian({1.0, 0.3, 1.0, 0.0}), 0.3 * orc::pauli('X')), 1e-15);
  EXPECT_LT(dist(rotating_frame_hamiltonian({1.4, 0.0, 1.0, 0.0}), 0.2 * orc::pauli('Z')), 1e-15);
}

TEST(Coupled, WeakCouplingIsNearlyDiagonal) {
  const Matrix h = coupled_hamiltonian({1.4, 1e-12}).eigen();
  const Matrix off = h - Matrix(h.diagonal().asDiagonal());
  EXPECT_LT(off.norm(), 1e-11);
  EXPECT_LT(std::abs(h(0, 0) - 1.4), 1e-15);
  EXPECT_LT(std::abs(h(3, 3) + 1.4), 1e-15);
}
