#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

#include <Eigen/Dense>

#include "qdgate/errors.hpp"

namespace qdgate {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

inline constexpr std::size_t kMaxQubits = 12;
inline constexpr std::size_t kMaxDim = std::size_t{1} << kMaxQubits;

inline constexpr double kHermitianRelTol = 1e-12;
inline constexpr double kUnitaryTolPerDim = 1e-10;

/// Dense square complex matrix whose dimension is a power of two (2..4096)
/// and whose entries are all finite.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(Matrix m);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix zero(std::size_t dim);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  Complex operator()(std::size_t r, std::size_t c) const { return m_(r, c); }
  const Matrix& eigen() const noexcept { return m_; }

  ComplexMatrix adjoint() const { return ComplexMatrix(m_.adjoint(), Unchecked{}); }
  Complex trace() const { return m_.trace(); }
  double frobenius_norm() const { return m_.norm(); }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(Complex s, const ComplexMatrix& a);

 private:
  struct Unchecked {};
  ComplexMatrix(Matrix m, Unchecked) : m_(std::move(m)) {}

  Matrix m_;
};

inline ComplexMatrix operator*(double s, const ComplexMatrix& a) { return Complex(s, 0.0) * a; }

/// ComplexMatrix satisfying ||M - M^dagger||_F <= 1e-12 ||M||_F.
class HermitianMatrix {
 public:
  /// Throws ContractViolation when the input is not Hermitian.
  explicit HermitianMatrix(ComplexMatrix m);

  std::size_t dim() const noexcept { return m_.dim(); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  const Matrix& eigen() const noexcept { return m_.eigen(); }
  operator const ComplexMatrix&() const noexcept { return m_; }

 private:
  ComplexMatrix m_;
};

/// ComplexMatrix satisfying ||U^dagger U - I||_F <= 1e-10 dim.
class UnitaryMatrix {
 public:
  /// Throws ContractViolation when the input is not unitary.
  explicit UnitaryMatrix(ComplexMatrix m);

  std::size_t dim() const noexcept { return m_.dim(); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  const Matrix& eigen() const noexcept { return m_.eigen(); }
  Complex operator()(std::size_t r, std::size_t c) const { return m_(r, c); }
  operator const ComplexMatrix&() const noexcept { return m_; }

  UnitaryMatrix adjoint() const { return UnitaryMatrix(m_.adjoint()); }

  friend UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b) {
    return UnitaryMatrix(a.m_ * b.m_);
  }

 private:
  ComplexMatrix m_;
};

bool is_hermitian(const ComplexMatrix& m);
double unitarity_residual(const ComplexMatrix& m);
bool is_power_of_two_dim(std::size_t dim);

/// Quasi-Pauli operator by name: "I", "X", "Y" or "Z".
ComplexMatrix quasi_pauli(std::string_view name);

/// Kronecker product; the left factor indexes the leading qubit.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// exp(sign * i * h * t) by eigendecomposition of h. `sign` must be +1 or -1.
UnitaryMatrix expm_hermitian(const HermitianMatrix& h, double t, int sign);

/// |Tr(u^dagger v)| / dim, equal to one exactly when u and v differ by a
/// global phase.
double fidelity_up_to_phase(const ComplexMatrix& u, const ComplexMatrix& v);

/// ||ab - ba||_F.
double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace qdgate
