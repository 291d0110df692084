#include "qdgate/hamiltonians.hpp"

#include <cmath>
#include <string>

namespace qdgate {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidArgument(what);
}

bool finite(double x) { return std::isfinite(x); }

}  // namespace

DotArrayParams DotArrayParams::uniform(std::size_t n_dots, double epsilon, double coupling) {
  DotArrayParams p;
  p.n_dots = n_dots;
  p.epsilon = epsilon;
  const auto n = static_cast<Eigen::Index>(n_dots);
  p.coupling = Eigen::MatrixXd::Constant(n, n, coupling);
  p.coupling.diagonal().setZero();
  return p;
}

DotArrayParams DotArrayParams::nearest_neighbour(std::size_t n_dots, double epsilon,
                                                 double coupling) {
  DotArrayParams p;
  p.n_dots = n_dots;
  p.epsilon = epsilon;
  const auto n = static_cast<Eigen::Index>(n_dots);
  p.coupling = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    p.coupling(i, i + 1) = coupling;
    p.coupling(i + 1, i) = coupling;
  }
  return p;
}

void validate(const DriveParams& p) {
  require(finite(p.epsilon) && p.epsilon > 0.0, "drive: epsilon must be > 0");
  require(finite(p.amplitude) && p.amplitude >= 0.0, "drive: amplitude must be >= 0");
  require(finite(p.omega) && p.omega > 0.0, "drive: omega must be > 0");
  require(finite(p.phase), "drive: phase must be finite");
}

void validate(const CoupledDotParams& p) {
  require(finite(p.epsilon) && p.epsilon > 0.0, "coupled: epsilon must be > 0");
  require(finite(p.coupling) && p.coupling > 0.0, "coupled: coupling must be > 0");
}

void validate(const DotArrayParams& p) {
  if (p.n_dots > kMaxQubits) {
    throw CapacityError("array: n_dots = " + std::to_string(p.n_dots) + " exceeds " +
                        std::to_string(kMaxQubits));
  }
  require(p.n_dots >= 1, "array: n_dots must be >= 1");
  require(finite(p.epsilon) && p.epsilon > 0.0, "array: epsilon must be > 0");
  const auto n = static_cast<Eigen::Index>(p.n_dots);
  require(p.coupling.rows() == n && p.coupling.cols() == n,
          "array: coupling matrix must be n_dots x n_dots");
  for (Eigen::Index i = 0; i < n; ++i) {
    require(p.coupling(i, i) == 0.0, "array: coupling diagonal must be zero");
    for (Eigen::Index j = 0; j < n; ++j) {
      require(finite(p.coupling(i, j)) && p.coupling(i, j) >= 0.0,
              "array: couplings must be finite and >= 0");
      require(p.coupling(i, j) == p.coupling(j, i), "array: coupling matrix must be symmetric");
    }
  }
  if (p.drive_on) {
    require(finite(p.drive_amplitude) && p.drive_amplitude >= 0.0,
            "array: drive amplitude must be >= 0");
    require(finite(p.drive_omega) && p.drive_omega > 0.0, "array: drive omega must be > 0");
    require(finite(p.drive_phase), "array: drive phase must be finite");
  }
}

HermitianMatrix single_dot_hamiltonian(const DriveParams& p, double t) {
  validate(p);
  const double angle = p.omega * t + p.phase;
  // Off-diagonal <1|H|0> = E(t) = A e^{i angle}.
  const Complex e = std::polar(p.amplitude, angle);
  Matrix h(2, 2);
  h << 0.5 * p.epsilon, std::conj(e), e, -0.5 * p.epsilon;
  return HermitianMatrix(ComplexMatrix(std::move(h)));
}

HermitianMatrix rotating_frame_hamiltonian(const DriveParams& p) {
  validate(p);
  const Complex e = std::polar(p.amplitude, p.phase);
  const double half_detuning = 0.5 * (p.epsilon - p.omega);
  Matrix h(2, 2);
  h << half_detuning, std::conj(e), e, -half_detuning;
  return HermitianMatrix(ComplexMatrix(std::move(h)));
}

HermitianMatrix coupled_hamiltonian(const CoupledDotParams& p) {
  validate(p);
  Matrix h = Matrix::Zero(4, 4);
  h(0, 0) = p.epsilon;
  h(3, 3) = -p.epsilon;
  h(1, 2) = -2.0 * p.coupling;
  h(2, 1) = -2.0 * p.coupling;
  return HermitianMatrix(ComplexMatrix(std::move(h)));
}

HermitianMatrix array_hamiltonian(const DotArrayParams& p, double t) {
  validate(p);
  const std::size_t n = p.n_dots;
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  const auto bit_of = [n](std::size_t site) { return std::size_t{1} << (n - 1 - site); };

  Matrix h = Matrix::Zero(dim, dim);
  const Complex e =
      p.drive_on ? std::polar(p.drive_amplitude, p.drive_omega * t + p.drive_phase) : Complex{};

  for (Eigen::Index s = 0; s < dim; ++s) {
    const auto state = static_cast<std::size_t>(s);
    double diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      // J_Z = Z/2; bit clear means |0>, the +1 eigenstate of Z.
      diag += (state & bit_of(i)) ? -0.5 * p.epsilon : 0.5 * p.epsilon;
    }
    h(s, s) = diag;

    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double v = p.coupling(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        if (v == 0.0) continue;
        const bool bi = state & bit_of(i);
        const bool bj = state & bit_of(j);
        if (bi == bj) continue;
        const auto partner = static_cast<Eigen::Index>(state ^ bit_of(i) ^ bit_of(j));
        h(partner, s) += -2.0 * v;
      }
    }

    if (p.drive_on) {
      for (std::size_t i = 0; i < n; ++i) {
        const auto flipped = static_cast<Eigen::Index>(state ^ bit_of(i));
        // J_+ = |1><0| carries E, J_- = |0><1| carries E*.
        h(flipped, s) += (state & bit_of(i)) ? std::conj(e) : e;
      }
    }
  }
  return HermitianMatrix(ComplexMatrix(std::move(h)));
}

ComplexMatrix excitation_number_operator(std::size_t n_dots) {
  if (n_dots > kMaxQubits) throw CapacityError("excitation_number_operator: too many sites");
  if (n_dots < 1) throw InvalidArgument("excitation_number_operator: need at least one site");
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n_dots);
  Matrix m = Matrix::Zero(dim, dim);
  for (Eigen::Index s = 0; s < dim; ++s) {
    const auto state = static_cast<std::size_t>(s);
    double count = 0.0;
    for (std::size_t i = 0; i < n_dots; ++i) {
      const bool set = state & (std::size_t{1} << (n_dots - 1 - i));
      count += (set ? -0.5 : 0.5) + 0.5;
    }
    m(s, s) = count;
  }
  return ComplexMatrix(std::move(m));
}

}  // namespace qdgate
