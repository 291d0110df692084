#pragma once

#include <string>
#include <variant>
#include <vector>

#include "qdgate/hamiltonians.hpp"
#include "qdgate/operator_algebra.hpp"

namespace qdgate {

/// (chi, gamma) of a cyclic single-qubit evolution.
struct SingleQubitGateSpec {
  double chi = 0.0;    ///< [0, pi]
  double gamma = 0.0;  ///< (-pi, pi]
};

void validate(const SingleQubitGateSpec& spec);

/// The displayed cyclic-evolution gate
///   [ e^{ig} cos^2(chi/2) + e^{-ig} sin^2(chi/2)   i sin(chi) sin(g) ]
///   [ i sin(chi) sin(g)   e^{ig} sin^2(chi/2) + e^{-ig} cos^2(chi/2) ]
UnitaryMatrix u_chi_gamma(const SingleQubitGateSpec& spec);

/// Same gate as exp(i gamma (cos(chi) Z + sin(chi) X)).
UnitaryMatrix u_chi_gamma_from_generator(const SingleQubitGateSpec& spec);

/// U(0, -gamma_z/2) = diag(e^{-i gamma_z/2}, e^{i gamma_z/2}).
UnitaryMatrix u_z(double gamma_z);

/// U(pi/2, -gamma_x/2) = cos(gamma_x/2) I - i sin(gamma_x/2) X.
UnitaryMatrix u_x(double gamma_x);

/// sin(g1) sin(g2) sin(chi2 - chi1) != 0 (threshold 1e-12).
bool noncommuting(const SingleQubitGateSpec& s1, const SingleQubitGateSpec& s2);

inline constexpr double kNoncommutingThreshold = 1e-12;

/// Closed-form two-dot propagator, entries kept literally as
/// diag corners e^{-i t eps}, e^{i t eps} and central block
/// [[cos(-2Vt), i sin(-2Vt)], [i sin(-2Vt), cos(-2Vt)]].
UnitaryMatrix two_qubit_propagator(const CoupledDotParams& p, double t);

/// [[1,0,0,0],[0,0,i,0],[0,i,0,0],[0,0,0,1]].
UnitaryMatrix iswap();

/// Standard CNOT, control on `control_qubit` (1 or 2), target on the other.
UnitaryMatrix cnot_standard(int control_qubit = 1);

/// Embed a single-qubit gate on qubit 1 (gate x I) or qubit 2 (I x gate).
UnitaryMatrix apply_single(const UnitaryMatrix& gate, int qubit);

struct SingleQubitStep {
  std::string label;  ///< e.g. "U_Z(-pi/2)"
  UnitaryMatrix gate;
  int qubit = 1;
};

struct IswapStep {};

using SequenceElement = std::variant<SingleQubitStep, IswapStep>;

/// Ordered gate list as written left to right; the rightmost element acts
/// first, so the composed matrix is elements[0] * elements[1] * ... .
class GateSequence {
 public:
  explicit GateSequence(std::vector<SequenceElement> elements);

  const std::vector<SequenceElement>& elements() const noexcept { return elements_; }
  const UnitaryMatrix& composed() const noexcept { return composed_; }
  std::size_t iswap_count() const;

  static UnitaryMatrix element_matrix(const SequenceElement& e);
  static std::string element_label(const SequenceElement& e);

 private:
  std::vector<SequenceElement> elements_;
  UnitaryMatrix composed_;
};

struct CnotVerification {
  GateSequence sequence;
  double fidelity_control1 = 0.0;
  double fidelity_control2 = 0.0;
  int matched_control = 0;  ///< 1 or 2, 0 when neither matched
  double fidelity = 0.0;    ///< against the matched (or control-1) CNOT
};

class DecompositionMismatchError : public Error {
 public:
  DecompositionMismatchError(const std::string& what, CnotVerification report)
      : Error(ErrorKind::DecompositionMismatch, what), report_(std::move(report)) {}
  const CnotVerification& report() const noexcept { return report_; }

 private:
  CnotVerification report_;
};

inline constexpr double kCnotFidelityTol = 1e-10;

/// Compare a composed two-qubit sequence with the standard CNOT for both
/// control assignments.
CnotVerification verify_cnot(const GateSequence& sequence);

/// U_Z2(-pi/2) iSWAP U_X1(pi/2) iSWAP U_Z1(pi/2) U_Z2(-pi/2) U_X2(-pi/2),
/// verified against the standard CNOT up to global phase. Throws
/// DecompositionMismatchError when neither control assignment reaches
/// fidelity 1 - 1e-10.
GateSequence cnot_sequence();

}  // namespace qdgate
