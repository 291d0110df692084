#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>

#include "qdgate/qdgate.hpp"

namespace py = pybind11;
using namespace qdgate;

namespace {

// Matrices cross the boundary as numpy complex128 arrays; every incoming one
// goes through the same validation as in C++.
ComplexMatrix as_matrix(const Matrix& m) { return ComplexMatrix(m); }
Matrix as_array(const ComplexMatrix& m) { return m.eigen(); }

std::vector<SequenceElement> sequence_from_python(const py::list& items) {
  std::vector<SequenceElement> out;
  for (const auto& item : items) {
    if (py::isinstance<py::str>(item)) {
      if (item.cast<std::string>() != "iswap") throw InvalidArgument("sequence: unknown step");
      out.emplace_back(IswapStep{});
      continue;
    }
    const auto t = item.cast<py::tuple>();
    if (t.size() != 3) throw InvalidArgument("sequence: single-qubit steps are (label, gate, qubit)");
    out.emplace_back(SingleQubitStep{t[0].cast<std::string>(),
                                     UnitaryMatrix(as_matrix(t[1].cast<Matrix>())),
                                     t[2].cast<int>()});
  }
  return out;
}

py::dict verification_dict(const CnotVerification& v) {
  py::list labels;
  for (const auto& e : v.sequence.elements()) labels.append(GateSequence::element_label(e));
  py::dict d;
  d["labels"] = labels;
  d["composed"] = as_array(v.sequence.composed());
  d["iswap_count"] = v.sequence.iswap_count();
  d["fidelity_control1"] = v.fidelity_control1;
  d["fidelity_control2"] = v.fidelity_control2;
  d["matched_control"] = v.matched_control;
  d["fidelity"] = v.fidelity;
  return d;
}

}  // namespace

PYBIND11_MODULE(_qdgate, m) {
  m.doc() = "Exciton-qubit geometric and dynamic gate toolkit";

  py::object base = py::module_::import("builtins").attr("RuntimeError");
  static py::exception<Error> error(m, "QdgateError", base.ptr());
  const std::pair<ErrorKind, const char*> kinds[] = {
      {ErrorKind::InvalidArgument, "InvalidArgumentError"},
      {ErrorKind::Capacity, "CapacityError"},
      {ErrorKind::ContractViolation, "ContractViolationError"},
      {ErrorKind::Accuracy, "AccuracyError"},
      {ErrorKind::NotCyclic, "NotCyclicError"},
      {ErrorKind::DegenerateDrive, "DegenerateDriveError"},
      {ErrorKind::CancellationFailed, "CancellationFailedError"},
      {ErrorKind::DecompositionMismatch, "DecompositionMismatchError"},
  };
  // Leaked on purpose: the handles must outlive interpreter shutdown.
  static auto& by_kind = *new std::map<ErrorKind, py::object>();
  for (const auto& [kind, name] : kinds) {
    py::object cls = py::reinterpret_steal<py::object>(
        PyErr_NewException((std::string("qdgate.") + name).c_str(), error.ptr(), nullptr));
    m.attr(name) = cls;
    by_kind[kind] = cls;
  }
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(by_kind.at(e.kind()).ptr(), e.what());
    }
  });

  m.attr("HBAR_EV_FS") = kHbarEvFs;

  // operator algebra
  m.def("quasi_pauli", [](const std::string& name) { return as_array(quasi_pauli(name)); },
        py::arg("name"));
  m.def("kron", [](const Matrix& a, const Matrix& b) { return as_array(kron(as_matrix(a), as_matrix(b))); });
  m.def("expm_hermitian",
        [](const Matrix& h, double t, int sign) {
          return as_array(expm_hermitian(HermitianMatrix(as_matrix(h)), t, sign));
        },
        py::arg("h"), py::arg("t"), py::arg("sign") = -1);
  m.def("fidelity_up_to_phase", [](const Matrix& u, const Matrix& v) {
    return fidelity_up_to_phase(as_matrix(u), as_matrix(v));
  });
  m.def("commutator_norm", [](const Matrix& a, const Matrix& b) {
    return commutator_norm(as_matrix(a), as_matrix(b));
  });

  // hamiltonians
  py::class_<DriveParams>(m, "DriveParams")
      .def(py::init([](double eps, double amp, double omega, double phase) {
             return DriveParams{eps, amp, omega, phase};
           }),
           py::arg("epsilon"), py::arg("amplitude"), py::arg("omega"), py::arg("phase") = 0.0)
      .def_readwrite("epsilon", &DriveParams::epsilon)
      .def_readwrite("amplitude", &DriveParams::amplitude)
      .def_readwrite("omega", &DriveParams::omega)
      .def_readwrite("phase", &DriveParams::phase)
      .def("__repr__", [](const DriveParams& p) {
        return "DriveParams(epsilon=" + std::to_string(p.epsilon) + ", amplitude=" +
               std::to_string(p.amplitude) + ", omega=" + std::to_string(p.omega) +
               ", phase=" + std::to_string(p.phase) + ")";
      });

  py::class_<CoupledDotParams>(m, "CoupledDotParams")
      .def(py::init([](double eps, double v) { return CoupledDotParams{eps, v}; }),
           py::arg("epsilon"), py::arg("coupling"))
      .def_readwrite("epsilon", &CoupledDotParams::epsilon)
      .def_readwrite("coupling", &CoupledDotParams::coupling);

  m.def("single_dot_hamiltonian",
        [](const DriveParams& p, double t) { return as_array(single_dot_hamiltonian(p, t)); });
  m.def("rotating_frame_hamiltonian",
        [](const DriveParams& p) { return as_array(rotating_frame_hamiltonian(p)); });
  m.def("coupled_hamiltonian",
        [](const CoupledDotParams& p) { return as_array(coupled_hamiltonian(p)); });
  m.def("array_hamiltonian",
        [](std::size_t n, double eps, double coupling, bool nearest_neighbour) {
          const auto p = nearest_neighbour ? DotArrayParams::nearest_neighbour(n, eps, coupling)
                                           : DotArrayParams::uniform(n, eps, coupling);
          return as_array(array_hamiltonian(p, 0.0));
        },
        py::arg("n_dots"), py::arg("epsilon"), py::arg("coupling"),
        py::arg("nearest_neighbour") = false);
  m.def("to_femtoseconds", &to_femtoseconds);
  m.def("from_femtoseconds", &from_femtoseconds);

  // propagation
  py::enum_<Scheme>(m, "Scheme")
      .value("MIDPOINT", Scheme::MidpointExponential)
      .value("MAGNUS4", Scheme::Magnus4);

  py::class_<IntegratorConfig>(m, "IntegratorConfig")
      .def(py::init([](std::size_t steps, Scheme scheme, double tol) {
             return IntegratorConfig{steps, scheme, tol};
           }),
           py::arg("steps_per_period") = 4096, py::arg("scheme") = Scheme::Magnus4,
           py::arg("tolerance") = 1e-8)
      .def_readwrite("steps_per_period", &IntegratorConfig::steps_per_period)
      .def_readwrite("scheme", &IntegratorConfig::scheme)
      .def_readwrite("tolerance", &IntegratorConfig::tolerance);

  m.def("period", &period);
  m.def("evolve_const",
        [](const Matrix& h, double t) { return as_array(evolve_const(HermitianMatrix(as_matrix(h)), t)); });
  m.def("evolve_driven",
        [](const DriveParams& p, double t, const IntegratorConfig& cfg) {
          return as_array(evolve_driven(p, t, cfg).unitary);
        },
        py::arg("drive"), py::arg("t"), py::arg("config") = phase_engine_config());
  m.def("driven_trajectory",
        [](const DriveParams& p, double t, const StateVector& initial, const IntegratorConfig& cfg) {
          const auto run = evolve_driven(p, t, cfg, initial);
          std::vector<double> times;
          Matrix states(static_cast<Eigen::Index>(run.samples.size()), 2);
          for (std::size_t i = 0; i < run.samples.size(); ++i) {
            times.push_back(run.samples[i].t);
            states.row(static_cast<Eigen::Index>(i)) = run.samples[i].state.transpose();
          }
          return py::make_tuple(times, states);
        },
        py::arg("drive"), py::arg("t"), py::arg("initial"), py::arg("config") = phase_engine_config());
  m.def("analytic_driven_propagator",
        [](const DriveParams& p, double t) { return as_array(analytic_driven_propagator(p, t)); });

  // phase engine
  py::class_<PhaseDecomposition>(m, "PhaseDecomposition")
      .def_readonly("gamma_total", &PhaseDecomposition::gamma_total)
      .def_readonly("gamma_dynamic", &PhaseDecomposition::gamma_dynamic)
      .def_readonly("gamma_geometric", &PhaseDecomposition::gamma_geometric)
      .def_readonly("chi", &PhaseDecomposition::chi)
      .def_readonly("cyclicity_residual", &PhaseDecomposition::cyclicity_residual);

  m.def("wrap_angle", &wrap_angle);
  m.def("cyclic_states", [](const DriveParams& p) {
    const auto pair = cyclic_states(p);
    return py::make_tuple(pair.chi, StateVector(pair.psi_plus), StateVector(pair.psi_minus));
  });
  m.def("decompose_phases", &decompose_phases, py::arg("drive"),
        py::arg("config") = phase_engine_config());
  m.def("total_phase", &total_phase, py::arg("drive"), py::arg("config") = phase_engine_config());
  m.def("dynamic_phase", &dynamic_phase, py::arg("drive"), py::arg("config") = phase_engine_config());
  m.def("geometric_phase", &geometric_phase, py::arg("drive"),
        py::arg("config") = phase_engine_config());
  m.def("cancellation_feasible", &cancellation_feasible);
  m.def("cancellation_sequence",
        [](const DriveParams& p, const IntegratorConfig& cfg) {
          const auto schedule = cancellation_sequence(p, cfg);
          const auto check = simulate_schedule(schedule, cyclic_states(p).psi_plus, cfg);
          py::list loops;
          for (std::size_t i = 0; i < schedule.segments.size(); ++i) {
            py::dict l;
            l["drive"] = schedule.segments[i].drive;
            l["periods"] = schedule.segments[i].periods;
            l["duration"] = schedule.segments[i].duration;
            l["gamma_dynamic"] = check.loops[i].gamma_dynamic;
            l["gamma_geometric"] = check.loops[i].gamma_geometric;
            loops.append(l);
          }
          py::dict d;
          d["loops"] = loops;
          d["net_dynamic"] = check.net_dynamic;
          d["net_total"] = check.net_total;
          d["geometric_target"] = check.geometric_target;
          return d;
        },
        py::arg("drive"), py::arg("config") = phase_engine_config());

  // gate synthesis
  m.def("u_chi_gamma",
        [](double chi, double gamma) { return as_array(u_chi_gamma({chi, gamma})); },
        py::arg("chi"), py::arg("gamma"));
  m.def("u_z", [](double g) { return as_array(u_z(g)); });
  m.def("u_x", [](double g) { return as_array(u_x(g)); });
  m.def("noncommuting", [](double chi1, double g1, double chi2, double g2) {
    return noncommuting({chi1, g1}, {chi2, g2});
  });
  m.def("two_qubit_propagator",
        [](const CoupledDotParams& p, double t) { return as_array(two_qubit_propagator(p, t)); });
  m.def("iswap", [] { return as_array(iswap()); });
  m.def("cnot_standard", [](int control) { return as_array(cnot_standard(control)); },
        py::arg("control_qubit") = 1);
  m.def("cnot_sequence", [] { return verification_dict(verify_cnot(cnot_sequence())); });
  m.def("verify_cnot",
        [](const py::list& steps) { return verification_dict(verify_cnot(GateSequence(sequence_from_python(steps)))); },
        "Steps are 'iswap' or (label, 2x2 gate, qubit); the first listed acts last.");

  // pulse scheduler
  py::class_<TimingSolution>(m, "TimingSolution")
      .def_readonly("k", &TimingSolution::k)
      .def_readonly("m", &TimingSolution::m)
      .def_readonly("t", &TimingSolution::t)
      .def_readonly("v_required", &TimingSolution::v_required)
      .def_readonly("v_target", &TimingSolution::v_target)
      .def_readonly("v_residual", &TimingSolution::v_residual)
      .def_property_readonly("t_fs", &TimingSolution::t_fs);

  m.def("iswap_timing_candidates", &iswap_timing_candidates, py::arg("epsilon"), py::arg("v_target"),
        py::arg("k_max") = 10, py::arg("m_max") = 10);
  m.def("solve_iswap_timing", &solve_iswap_timing, py::arg("epsilon"), py::arg("v_target"),
        py::arg("k_max") = 10, py::arg("m_max") = 10);
  m.def("fidelity_penalty", &fidelity_penalty, py::arg("solution"), py::arg("epsilon"),
        py::arg("v_actual"), py::arg("dt_jitter") = 0.0);
  m.def("idle_phase_tracker", [](double eps, const std::vector<double>& spans) {
    const auto idle = idle_phase_tracker(eps, spans);
    return py::make_tuple(idle.idle_time, as_array(idle.accumulated), idle.compensating_gamma_z);
  });
  m.def("decoherence_budget", [](double tau_d_ps, double v_ev) {
    const auto b = decoherence_budget(tau_d_ps, v_ev);
    return py::make_tuple(b.tau_v_fs, b.op_count);
  });
}
