#include "qdgate/operator_algebra.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "detail/eigen_kernels.hpp"

namespace qdgate {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid_argument";
    case ErrorKind::Capacity: return "capacity";
    case ErrorKind::ContractViolation: return "contract_violation";
    case ErrorKind::Accuracy: return "accuracy";
    case ErrorKind::NotCyclic: return "not_cyclic";
    case ErrorKind::DegenerateDrive: return "degenerate_drive";
    case ErrorKind::CancellationFailed: return "cancellation_failed";
    case ErrorKind::DecompositionMismatch: return "decomposition_mismatch";
  }
  return "unknown";
}

bool is_power_of_two_dim(std::size_t dim) {
  return dim >= 2 && dim <= kMaxDim && (dim & (dim - 1)) == 0;
}

ComplexMatrix::ComplexMatrix(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) {
    throw InvalidArgument("matrix must be square, got " + std::to_string(m_.rows()) + "x" +
                          std::to_string(m_.cols()));
  }
  const auto dim = static_cast<std::size_t>(m_.rows());
  if (dim > kMaxDim) {
    throw CapacityError("matrix dimension " + std::to_string(dim) + " exceeds " +
                        std::to_string(kMaxDim));
  }
  if (!is_power_of_two_dim(dim)) {
    throw InvalidArgument("matrix dimension " + std::to_string(dim) + " is not a power of two");
  }
  if (!m_.allFinite()) throw InvalidArgument("matrix has non-finite entries");
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  return ComplexMatrix(Matrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)));
}

ComplexMatrix ComplexMatrix::zero(std::size_t dim) {
  return ComplexMatrix(Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)));
}

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.dim() != b.dim()) {
    throw InvalidArgument(std::string(op) + ": dimension mismatch " + std::to_string(a.dim()) +
                          " vs " + std::to_string(b.dim()));
  }
}

}  // namespace

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "product");
  return ComplexMatrix(a.m_ * b.m_, ComplexMatrix::Unchecked{});
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "sum");
  return ComplexMatrix(a.m_ + b.m_, ComplexMatrix::Unchecked{});
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "difference");
  return ComplexMatrix(a.m_ - b.m_, ComplexMatrix::Unchecked{});
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& a) {
  if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
    throw InvalidArgument("non-finite scalar factor");
  }
  return ComplexMatrix(s * a.m_, ComplexMatrix::Unchecked{});
}

bool is_hermitian(const ComplexMatrix& m) {
  const double norm = m.frobenius_norm();
  const double defect = (m.eigen() - m.eigen().adjoint()).norm();
  return defect <= kHermitianRelTol * norm;
}

double unitarity_residual(const ComplexMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.dim());
  return (m.eigen().adjoint() * m.eigen() - Matrix::Identity(n, n)).norm();
}

HermitianMatrix::HermitianMatrix(ComplexMatrix m) : m_(std::move(m)) {
  if (!is_hermitian(m_)) {
    throw ContractViolation("matrix is not Hermitian: ||M - M^dagger||_F = " +
                            std::to_string((m_.eigen() - m_.eigen().adjoint()).norm()));
  }
}

UnitaryMatrix::UnitaryMatrix(ComplexMatrix m) : m_(std::move(m)) {
  const double residual = unitarity_residual(m_);
  if (residual > kUnitaryTolPerDim * static_cast<double>(m_.dim())) {
    throw ContractViolation("matrix is not unitary: ||U^dagger U - I||_F = " +
                            std::to_string(residual));
  }
}

ComplexMatrix quasi_pauli(std::string_view name) {
  const Complex i{0.0, 1.0};
  Matrix m(2, 2);
  if (name == "I") {
    m << 1.0, 0.0, 0.0, 1.0;
  } else if (name == "X") {
    m << 0.0, 1.0, 1.0, 0.0;
  } else if (name == "Y") {
    m << 0.0, -i, i, 0.0;
  } else if (name == "Z") {
    m << 1.0, 0.0, 0.0, -1.0;
  } else {
    throw InvalidArgument("unknown quasi-Pauli operator '" + std::string(name) + "'");
  }
  return ComplexMatrix(std::move(m));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t na = a.dim();
  const std::size_t nb = b.dim();
  if (na * nb > kMaxDim) {
    throw CapacityError("Kronecker product dimension " + std::to_string(na * nb) + " exceeds " +
                        std::to_string(kMaxDim));
  }
  const auto ea = static_cast<Eigen::Index>(na);
  const auto eb = static_cast<Eigen::Index>(nb);
  Matrix out(ea * eb, ea * eb);
  for (Eigen::Index r = 0; r < ea; ++r) {
    for (Eigen::Index c = 0; c < ea; ++c) {
      out.block(r * eb, c * eb, eb, eb) = a.eigen()(r, c) * b.eigen();
    }
  }
  return ComplexMatrix(std::move(out));
}

UnitaryMatrix expm_hermitian(const HermitianMatrix& h, double t, int sign) {
  if (sign != 1 && sign != -1) throw InvalidArgument("exponent sign must be +1 or -1");
  if (!std::isfinite(t)) throw InvalidArgument("non-finite time");
  return UnitaryMatrix(ComplexMatrix(detail::expm_hermitian_raw(h.eigen(), t, sign)));
}

double fidelity_up_to_phase(const ComplexMatrix& u, const ComplexMatrix& v) {
  require_same_dim(u, v, "fidelity_up_to_phase");
  // Tr(u^dagger v) without forming the product.
  const Complex overlap = (u.eigen().conjugate().cwiseProduct(v.eigen())).sum();
  const double f = std::abs(overlap) / static_cast<double>(u.dim());
  return f > 1.0 ? 1.0 : f;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "commutator");
  return a * b - b * a;
}

double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b) {
  return commutator(a, b).frobenius_norm();
}

}  // namespace qdgate
