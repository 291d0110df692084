#include "qdgate/gate_synthesis.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qdgate {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

// Displayed closed form; no range check so u_z / u_x can take any angle.
UnitaryMatrix cyclic_gate(double chi, double gamma) {
  const double c2 = std::cos(0.5 * chi) * std::cos(0.5 * chi);
  const double s2 = std::sin(0.5 * chi) * std::sin(0.5 * chi);
  const Complex ep = std::polar(1.0, gamma);
  const Complex em = std::polar(1.0, -gamma);
  const Complex off = kI * std::sin(chi) * std::sin(gamma);
  Matrix m(2, 2);
  m << ep * c2 + em * s2, off, off, ep * s2 + em * c2;
  return UnitaryMatrix(ComplexMatrix(std::move(m)));
}

}  // namespace

void validate(const SingleQubitGateSpec& spec) {
  if (!(spec.chi >= 0.0 && spec.chi <= kPi)) throw InvalidArgument("gate spec: chi must lie in [0, pi]");
  if (!(spec.gamma > -kPi && spec.gamma <= kPi)) {
    throw InvalidArgument("gate spec: gamma must lie in (-pi, pi]");
  }
}

UnitaryMatrix u_chi_gamma(const SingleQubitGateSpec& spec) {
  validate(spec);
  return cyclic_gate(spec.chi, spec.gamma);
}

UnitaryMatrix u_chi_gamma_from_generator(const SingleQubitGateSpec& spec) {
  validate(spec);
  const HermitianMatrix axis(std::cos(spec.chi) * quasi_pauli("Z") +
                             std::sin(spec.chi) * quasi_pauli("X"));
  return expm_hermitian(axis, spec.gamma, +1);
}

UnitaryMatrix u_z(double gamma_z) { return cyclic_gate(0.0, -0.5 * gamma_z); }

UnitaryMatrix u_x(double gamma_x) { return cyclic_gate(0.5 * kPi, -0.5 * gamma_x); }

bool noncommuting(const SingleQubitGateSpec& s1, const SingleQubitGateSpec& s2) {
  validate(s1);
  validate(s2);
  const double witness = std::sin(s1.gamma) * std::sin(s2.gamma) * std::sin(s2.chi - s1.chi);
  return std::abs(witness) > kNoncommutingThreshold;
}

UnitaryMatrix two_qubit_propagator(const CoupledDotParams& p, double t) {
  validate(p);
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("two_qubit_propagator: t must be >= 0");
  const double angle = -2.0 * p.coupling * t;
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = std::polar(1.0, -t * p.epsilon);
  m(1, 1) = std::cos(angle);
  m(1, 2) = kI * std::sin(angle);
  m(2, 1) = kI * std::sin(angle);
  m(2, 2) = std::cos(angle);
  m(3, 3) = std::polar(1.0, t * p.epsilon);
  return UnitaryMatrix(ComplexMatrix(std::move(m)));
}

UnitaryMatrix iswap() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = 1.0;
  m(1, 2) = kI;
  m(2, 1) = kI;
  m(3, 3) = 1.0;
  return UnitaryMatrix(ComplexMatrix(std::move(m)));
}

UnitaryMatrix cnot_standard(int control_qubit) {
  Matrix m = Matrix::Zero(4, 4);
  if (control_qubit == 1) {
    m(0, 0) = m(1, 1) = 1.0;
    m(2, 3) = m(3, 2) = 1.0;
  } else if (control_qubit == 2) {
    m(0, 0) = m(2, 2) = 1.0;
    m(1, 3) = m(3, 1) = 1.0;
  } else {
    throw InvalidArgument("cnot_standard: control qubit must be 1 or 2");
  }
  return UnitaryMatrix(ComplexMatrix(std::move(m)));
}

UnitaryMatrix apply_single(const UnitaryMatrix& gate, int qubit) {
  if (gate.dim() != 2) throw InvalidArgument("apply_single: gate must be 2x2");
  const ComplexMatrix id = ComplexMatrix::identity(2);
  if (qubit == 1) return UnitaryMatrix(kron(gate, id));
  if (qubit == 2) return UnitaryMatrix(kron(id, gate));
  throw InvalidArgument("apply_single: qubit index must be 1 or 2, got " + std::to_string(qubit));
}

UnitaryMatrix GateSequence::element_matrix(const SequenceElement& e) {
  if (const auto* single = std::get_if<SingleQubitStep>(&e)) {
    return apply_single(single->gate, single->qubit);
  }
  return iswap();
}

std::string GateSequence::element_label(const SequenceElement& e) {
  if (const auto* single = std::get_if<SingleQubitStep>(&e)) {
    return single->label + "[q" + std::to_string(single->qubit) + "]";
  }
  return "iSWAP";
}

namespace {

UnitaryMatrix compose(const std::vector<SequenceElement>& elements) {
  if (elements.empty()) throw InvalidArgument("gate sequence is empty");
  ComplexMatrix acc = ComplexMatrix::identity(4);
  for (const auto& e : elements) acc = acc * GateSequence::element_matrix(e).matrix();
  return UnitaryMatrix(std::move(acc));
}

}  // namespace

GateSequence::GateSequence(std::vector<SequenceElement> elements)
    : elements_(std::move(elements)), composed_(compose(elements_)) {}

std::size_t GateSequence::iswap_count() const {
  std::size_t n = 0;
  for (const auto& e : elements_) n += std::holds_alternative<IswapStep>(e) ? 1 : 0;
  return n;
}

CnotVerification verify_cnot(const GateSequence& sequence) {
  CnotVerification report{sequence, 0.0, 0.0, 0, 0.0};
  report.fidelity_control1 = fidelity_up_to_phase(sequence.composed(), cnot_standard(1));
  report.fidelity_control2 = fidelity_up_to_phase(sequence.composed(), cnot_standard(2));
  if (report.fidelity_control1 >= 1.0 - kCnotFidelityTol) {
    report.matched_control = 1;
    report.fidelity = report.fidelity_control1;
  } else if (report.fidelity_control2 >= 1.0 - kCnotFidelityTol) {
    report.matched_control = 2;
    report.fidelity = report.fidelity_control2;
  } else {
    report.fidelity = report.fidelity_control1;
  }
  return report;
}

GateSequence cnot_sequence() {
  const double half_pi = 0.5 * kPi;
  GateSequence sequence({
      SingleQubitStep{"U_Z(-pi/2)", u_z(-half_pi), 2},
      IswapStep{},
      SingleQubitStep{"U_X(pi/2)", u_x(half_pi), 1},
      IswapStep{},
      SingleQubitStep{"U_Z(pi/2)", u_z(half_pi), 1},
      SingleQubitStep{"U_Z(-pi/2)", u_z(-half_pi), 2},
      SingleQubitStep{"U_X(-pi/2)", u_x(-half_pi), 2},
  });
  CnotVerification report = verify_cnot(sequence);
  if (report.matched_control == 0) {
    std::ostringstream os;
    os.precision(17);
    os << "CNOT sequence does not match a standard CNOT: fidelity (control 1) = "
       << report.fidelity_control1 << ", fidelity (control 2) = " << report.fidelity_control2;
    throw DecompositionMismatchError(os.str(), std::move(report));
  }
  return sequence;
}

}  // namespace qdgate
