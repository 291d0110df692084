#pragma once

// Reference computations used only by the tests. Nothing here calls into the
// code paths it is used to check.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace qdgate::oracle {

using Cx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr double kPi = std::numbers::pi;

inline Mat pauli(char name) {
  Mat m(2, 2);
  const Cx i{0.0, 1.0};
  switch (name) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m << 1, 0, 0, 1; break;
  }
  return m;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

/// Operator `op` on site `site` of an n-site register, identities elsewhere.
inline Mat embed(const Mat& op, std::size_t site, std::size_t n) {
  Mat out = Mat::Identity(1, 1);
  for (std::size_t k = 0; k < n; ++k) out = kron(out, k == site ? op : pauli('I'));
  return out;
}

/// exp(a) by scaling and squaring of a truncated Taylor series.
inline Mat taylor_expm(const Mat& a) {
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.25) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.25)));
  const Mat scaled = a / std::ldexp(1.0, squarings);
  Mat term = Mat::Identity(a.rows(), a.cols());
  Mat sum = term;
  for (int k = 1; k <= 30; ++k) {
    term = term * scaled / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

/// Classical RK4 on i dpsi/dt = H(t) psi applied to every column of the
/// identity. Not norm preserving; accurate for small steps.
template <class H>
Mat rk4_propagator(H&& hamiltonian, Eigen::Index dim, double t0, double t1, std::size_t steps) {
  const Cx minus_i{0.0, -1.0};
  Mat u = Mat::Identity(dim, dim);
  const double h = (t1 - t0) / static_cast<double>(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = t0 + static_cast<double>(k) * h;
    const Mat k1 = minus_i * hamiltonian(t) * u;
    const Mat k2 = minus_i * hamiltonian(t + 0.5 * h) * (u + 0.5 * h * k1);
    const Mat k3 = minus_i * hamiltonian(t + 0.5 * h) * (u + 0.5 * h * k2);
    const Mat k4 = minus_i * hamiltonian(t + h) * (u + h * k3);
    u += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return u;
}

inline double wrapped_distance(double a, double b) {
  double d = std::fmod(a - b, 2.0 * kPi);
  if (d > kPi) d -= 2.0 * kPi;
  if (d < -kPi) d += 2.0 * kPi;
  return std::abs(d);
}

/// Closed-form phases of one period of the driven dot, from the rotating
/// frame: psi+ has rotating-frame energy Omega/2 and the frame turns once.
struct DrivePhases {
  double chi;
  double rabi;
  double total;      // pi - pi Omega / w (not reduced)
  double dynamic;    // -pi Omega / w - pi cos(chi)
  double geometric;  // -pi (1 - cos(chi))
};

inline DrivePhases drive_phases(double epsilon, double amplitude, double omega) {
  DrivePhases out{};
  out.rabi = std::sqrt((epsilon - omega) * (epsilon - omega) + 4.0 * amplitude * amplitude);
  out.chi = std::atan2(2.0 * amplitude, epsilon - omega);
  out.total = kPi - kPi * out.rabi / omega;
  out.dynamic = -kPi * out.rabi / omega - kPi * std::cos(out.chi);
  out.geometric = -kPi * (1.0 - std::cos(out.chi));
  return out;
}

inline Mat random_hermitian(std::mt19937_64& rng, Eigen::Index dim, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  Mat a(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) a(r, c) = Cx(n(rng), n(rng));
  return 0.5 * (a + a.adjoint());
}

inline Mat random_unitary(std::mt19937_64& rng, Eigen::Index dim) {
  return taylor_expm(Cx(0.0, 1.0) * random_hermitian(rng, dim));
}

/// Every (k, m) with t = 2 k pi / eps, V = (m pi - pi/4) / t, scored by |V - target|.
struct TimingCandidate {
  int k;
  int m;
  double t;
  double v;
  double residual;
};

inline std::vector<TimingCandidate> enumerate_timings(double epsilon, double target, int k_max,
                                                      int m_max) {
  std::vector<TimingCandidate> out;
  for (int k = 1; k <= k_max; ++k)
    for (int m = 1; m <= m_max; ++m) {
      const double t = 2.0 * kPi * k / epsilon;
      const double v = epsilon * (m - 0.25) / (2.0 * k);
      out.push_back({k, m, t, v, std::abs(v - target)});
    }
  return out;
}

}  // namespace qdgate::oracle
