#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <numbers>
#include <sstream>
#include <thread>

#ifndef QDGATE_VERSION
#define QDGATE_VERSION "unknown"
#endif

namespace qdgate::cli {

namespace {

constexpr double kPi = std::numbers::pi;

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

const Json& section(const Json& config, const char* key) {
  static const Json empty = Json::object();
  if (!config.contains(key)) return empty;
  return config.at(key);
}

std::string require_string(const Json& obj, const char* key) {
  if (!obj.contains(key) || !obj.at(key).is_string()) {
    throw ConfigError(std::string("missing string field '") + key + "'");
  }
  return obj.at(key).get<std::string>();
}

std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    now = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  }
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

StateVector parse_initial_state(const Json& spec, std::size_t dim) {
  StateVector psi = StateVector::Zero(static_cast<Eigen::Index>(dim));
  if (spec.is_string()) {
    const std::string bits = spec.get<std::string>();
    if ((std::size_t{1} << bits.size()) != dim) {
      throw ConfigError("initial state label '" + bits + "' does not match dimension " +
                        std::to_string(dim));
    }
    std::size_t index = 0;
    for (char b : bits) {
      if (b != '0' && b != '1') throw ConfigError("initial state label must be a bit string");
      index = (index << 1) | static_cast<std::size_t>(b - '0');
    }
    psi(static_cast<Eigen::Index>(index)) = 1.0;
    return psi;
  }
  if (!spec.is_array() || spec.size() != dim) {
    throw ConfigError("initial state must be a bit string or an array of " + std::to_string(dim) +
                      " [re, im] pairs");
  }
  for (std::size_t i = 0; i < dim; ++i) {
    const Json& e = spec[i];
    if (!e.is_array() || e.size() != 2) throw ConfigError("initial amplitudes must be [re, im] pairs");
    psi(static_cast<Eigen::Index>(i)) = Complex(e[0].get<double>(), e[1].get<double>());
  }
  if (std::abs(psi.norm() - 1.0) > 1e-10) throw ConfigError("initial state must be normalised");
  return psi;
}

std::string basis_label(std::size_t index, std::size_t dim) {
  std::string s;
  for (std::size_t bit = dim >> 1; bit > 0; bit >>= 1) s.push_back((index & bit) ? '1' : '0');
  return s;
}

struct TrajectoryRow {
  double t;
  StateVector state;
};

CommandOutput render_trajectory(Json report, const std::vector<TrajectoryRow>& rows, std::size_t dim,
                                Format format) {
  CommandOutput out;
  if (format == Format::Csv) {
    std::ostringstream os;
    os << "t_invEV,t_fs";
    for (std::size_t i = 0; i < dim; ++i) os << ",p" << basis_label(i, dim);
    for (std::size_t i = 0; i < dim; ++i) os << ",phase" << basis_label(i, dim);
    os << "\n";
    for (const auto& r : rows) {
      os << format_number(r.t) << "," << format_number(to_femtoseconds(r.t));
      for (std::size_t i = 0; i < dim; ++i) os << "," << format_number(std::norm(r.state(static_cast<Eigen::Index>(i))));
      for (std::size_t i = 0; i < dim; ++i) os << "," << format_number(std::arg(r.state(static_cast<Eigen::Index>(i))));
      os << "\n";
    }
    out.text = os.str();
    return out;
  }
  Json traj = Json::array();
  for (const auto& r : rows) {
    Json pops = Json::array();
    Json phases = Json::array();
    for (std::size_t i = 0; i < dim; ++i) {
      pops.push_back(std::norm(r.state(static_cast<Eigen::Index>(i))));
      phases.push_back(std::arg(r.state(static_cast<Eigen::Index>(i))));
    }
    traj.push_back({{"t", r.t}, {"t_fs", to_femtoseconds(r.t)}, {"populations", pops}, {"phases", phases}});
  }
  report["basis"] = Json::array();
  for (std::size_t i = 0; i < dim; ++i) report["basis"].push_back(basis_label(i, dim));
  report["trajectory"] = std::move(traj);
  out.text = dump(report);
  return out;
}

double resolve_time(const Json& config, const char* what) {
  const bool has_t = config.contains("t");
  const bool has_fs = config.contains("t_fs");
  if (has_t && has_fs) throw ConfigError(std::string(what) + ": give either t or t_fs, not both");
  if (has_t) return get_number(config, "t");
  if (has_fs) return from_femtoseconds(get_number(config, "t_fs"));
  throw ConfigError(std::string(what) + ": missing evolution time (t in 1/eV or t_fs)");
}

Json phase_report(const PhaseDecomposition& d) {
  return {{"chi", d.chi},
          {"gamma_total", d.gamma_total},
          {"gamma_dynamic", d.gamma_dynamic},
          {"gamma_geometric", d.gamma_geometric},
          {"cyclicity_residual", d.cyclicity_residual}};
}

}  // namespace

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return kExitInvalidConfig;
  if (dynamic_cast<const nlohmann::json::exception*>(&e)) return kExitInvalidConfig;
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    switch (err->kind()) {
      case ErrorKind::InvalidArgument:
      case ErrorKind::Capacity:
      case ErrorKind::DegenerateDrive:
        return kExitInvalidConfig;
      case ErrorKind::ContractViolation:
      case ErrorKind::Accuracy:
      case ErrorKind::NotCyclic:
        return kExitNumerical;
      case ErrorKind::CancellationFailed:
      case ErrorKind::DecompositionMismatch:
        return kExitMismatch;
    }
  }
  return kExitNumerical;
}

Json error_json(const std::string& command, const std::exception& e) {
  std::string kind = "internal";
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const nlohmann::json::exception*>(&e)) {
    kind = "invalid_config";
  } else if (const auto* err = dynamic_cast<const Error*>(&e)) {
    kind = to_string(err->kind());
  }
  Json j = {{"command", command},
            {"error", {{"kind", kind}, {"message", e.what()}, {"exit_code", exit_code_for(e)}}}};
  if (const auto* cancel = dynamic_cast<const CancellationFailedError*>(&e); cancel && cancel->diagnostics()) {
    Json loops = Json::array();
    for (const auto& l : cancel->diagnostics()->loops) loops.push_back(phase_report(l));
    j["error"]["loops"] = loops;
  }
  if (const auto* mismatch = dynamic_cast<const DecompositionMismatchError*>(&e)) {
    Json steps = Json::array();
    for (const auto& el : mismatch->report().sequence.elements()) {
      steps.push_back({{"label", GateSequence::element_label(el)},
                       {"matrix", matrix_to_json(GateSequence::element_matrix(el))}});
    }
    j["error"]["steps"] = steps;
  }
  return j;
}

// ---------------------------------------------------------------------------
// phase

CommandOutput cmd_phase(const Json& config, Format format) {
  const DriveParams p = parse_drive(section(config, "drive"));
  const IntegratorConfig cfg = parse_integrator(section(config, "integrator"), phase_engine_config());
  const PhaseDecomposition d = decompose_phases(p, cfg);

  CommandOutput out;
  if (format == Format::Csv) {
    out.text = "chi,gamma_total,gamma_dynamic,gamma_geometric,cyclicity_residual\n" +
               format_number(d.chi) + "," + format_number(d.gamma_total) + "," +
               format_number(d.gamma_dynamic) + "," + format_number(d.gamma_geometric) + "," +
               format_number(d.cyclicity_residual) + "\n";
    return out;
  }
  Json report = phase_report(d);
  report["command"] = "phase";
  report["drive"] = to_json(p);
  report["period"] = period(p);
  report["integrator"] = to_json(cfg);
  if (config.value("cancellation", false)) {
    const LoopSchedule schedule = cancellation_sequence(p, cfg);
    const ScheduleVerification check =
        simulate_schedule(schedule, cyclic_states(p).psi_plus, cfg);
    Json loops = Json::array();
    for (std::size_t i = 0; i < schedule.segments.size(); ++i) {
      Json l = phase_report(check.loops[i]);
      l["drive"] = to_json(schedule.segments[i].drive);
      l["periods"] = schedule.segments[i].periods;
      l["duration"] = schedule.segments[i].duration;
      loops.push_back(std::move(l));
    }
    report["cancellation"] = {{"loops", loops},
                              {"net_dynamic", check.net_dynamic},
                              {"net_total", check.net_total},
                              {"geometric_target", check.geometric_target}};
  }
  out.text = dump(report);
  return out;
}

// ---------------------------------------------------------------------------
// evolve

CommandOutput cmd_evolve(const Json& config, Format format) {
  const std::string system = config.value("system", std::string("driven"));
  const int requested = get_int(config, "samples", 0);
  if (requested < 0) throw ConfigError("samples must be >= 0");

  if (system == "driven") {
    const DriveParams p = parse_drive(section(config, "drive"));
    const IntegratorConfig cfg =
        parse_integrator(section(config, "integrator"), IntegratorConfig{});
    double t = 0.0;
    if (config.contains("periods")) {
      if (config.contains("t") || config.contains("t_fs")) {
        throw ConfigError("evolve: give periods or an explicit time, not both");
      }
      t = get_number(config, "periods") * period(p);
    } else if (config.contains("t") || config.contains("t_fs")) {
      t = resolve_time(config, "evolve");
    } else {
      t = period(p);
    }
    const StateVector initial =
        parse_initial_state(config.contains("initial") ? config.at("initial") : Json("0"), 2);
    const PropagationResult run = evolve_driven(p, t, cfg, initial);

    Json report = {{"command", "evolve"},
                   {"system", system},
                   {"drive", to_json(p)},
                   {"t", t},
                   {"t_fs", to_femtoseconds(t)},
                   {"scheme", std::string(to_string(run.scheme_used))},
                   {"step_count", run.step_count},
                   {"unitary", matrix_to_json(run.unitary)}};
    std::vector<TrajectoryRow> rows;
    // `samples` rows evenly spread over the run, both ends included.
    if (requested > 0 && !run.samples.empty()) {
      const std::size_t last = run.samples.size() - 1;
      const auto n = static_cast<std::size_t>(requested);
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t k = n == 1 ? last : (i * last + (n - 1) / 2) / (n - 1);
        rows.push_back({run.samples[k].t, run.samples[k].state});
      }
    }
    return render_trajectory(std::move(report), rows, 2, format);
  }

  if (system == "coupled") {
    const CoupledDotParams p = parse_coupled(section(config, "coupled"));
    const double t = resolve_time(config, "evolve");
    if (!(t >= 0.0)) throw ConfigError("evolve: t must be >= 0");
    const StateVector initial =
        parse_initial_state(config.contains("initial") ? config.at("initial") : Json("01"), 4);
    const HermitianMatrix h = coupled_hamiltonian(p);
    Json report = {{"command", "evolve"},
                   {"system", system},
                   {"coupled", to_json(p)},
                   {"t", t},
                   {"t_fs", to_femtoseconds(t)},
                   {"scheme", "exact"},
                   {"step_count", 0},
                   {"unitary", matrix_to_json(evolve_const(h, t))}};
    std::vector<TrajectoryRow> rows;
    if (requested > 0) {
      for (int i = 0; i <= requested; ++i) {
        const double ti = t * static_cast<double>(i) / static_cast<double>(requested);
        rows.push_back({ti, evolve_const(h, ti).eigen() * initial});
      }
    }
    return render_trajectory(std::move(report), rows, 4, format);
  }
  throw ConfigError("evolve: system must be 'driven' or 'coupled', got '" + system + "'");
}

// ---------------------------------------------------------------------------
// gate

CommandOutput cmd_gate(const Json& config, Format format) {
  const std::string name = require_string(config, "gate");
  Json report = {{"command", "gate"}, {"gate", name}};
  std::optional<UnitaryMatrix> gate;
  if (name == "u_chi_gamma") {
    const SingleQubitGateSpec spec{get_number(config, "chi"), get_number(config, "gamma")};
    gate = u_chi_gamma(spec);
    report["chi"] = spec.chi;
    report["gamma"] = spec.gamma;
  } else if (name == "u_z" || name == "u_x") {
    const double angle = get_number(config, "angle");
    gate = name == "u_z" ? u_z(angle) : u_x(angle);
    report["angle"] = angle;
  } else if (name == "iswap") {
    gate = iswap();
  } else if (name == "cnot") {
    gate = cnot_sequence().composed();
  } else if (name == "cnot_standard") {
    const int control = get_int(config, "control", 1);
    gate = cnot_standard(control);
    report["control"] = control;
  } else if (name == "two_qubit_propagator") {
    const CoupledDotParams p = parse_coupled(section(config, "coupled"));
    const double t = resolve_time(config, "gate");
    gate = two_qubit_propagator(p, t);
    report["coupled"] = to_json(p);
    report["t"] = t;
  } else if (name == "pauli") {
    gate = UnitaryMatrix(quasi_pauli(require_string(config, "name")));
  } else {
    throw ConfigError("unknown gate '" + name + "'");
  }
  if (config.contains("qubit")) {
    const int qubit = get_int(config, "qubit", 1);
    gate = apply_single(*gate, qubit);
    report["qubit"] = qubit;
  }

  CommandOutput out;
  if (format == Format::Csv) {
    std::ostringstream os;
    os << "row,col,re,im\n";
    for (std::size_t r = 0; r < gate->dim(); ++r) {
      for (std::size_t c = 0; c < gate->dim(); ++c) {
        os << r << "," << c << "," << format_number((*gate)(r, c).real()) << ","
           << format_number((*gate)(r, c).imag()) << "\n";
      }
    }
    out.text = os.str();
    return out;
  }
  report["dim"] = gate->dim();
  report["matrix"] = matrix_to_json(*gate);
  out.text = dump(report);
  return out;
}

// ---------------------------------------------------------------------------
// iswap-schedule

std::string timing_grid_csv(const std::vector<TimingSolution>& candidates, double epsilon) {
  std::ostringstream os;
  os << "k,m,t_invEV,t_fs,v_required_eV,v_residual_eV,fidelity\n";
  for (const auto& c : candidates) {
    os << c.k << "," << c.m << "," << format_number(c.t) << "," << format_number(c.t_fs()) << ","
       << format_number(c.v_required) << "," << format_number(c.v_residual) << ","
       << format_number(fidelity_penalty(c, epsilon, c.v_required, 0.0)) << "\n";
  }
  return os.str();
}

CommandOutput cmd_iswap_schedule(const Json& config, Format format) {
  const double epsilon = get_number(config, "epsilon");
  const double v_target = get_number(config, "v_target");
  const int k_max = get_int(config, "k_max", 10);
  const int m_max = get_int(config, "m_max", 10);
  if (k_max >= 1 && m_max >= 1 &&
      static_cast<std::size_t>(k_max) * static_cast<std::size_t>(m_max) > kMaxGridPoints) {
    throw ConfigError("iswap-schedule: k_max * m_max exceeds the grid cap");
  }
  const auto candidates = iswap_timing_candidates(epsilon, v_target, k_max, m_max);
  const TimingSolution best = solve_iswap_timing(epsilon, v_target, k_max, m_max);
  const std::string csv = timing_grid_csv(candidates, epsilon);

  CommandOutput out;
  if (format == Format::Csv) {
    out.text = csv;
    return out;
  }
  Json report = {{"command", "iswap-schedule"},
                 {"epsilon", epsilon},
                 {"k_max", k_max},
                 {"m_max", m_max},
                 {"candidates", candidates.size()},
                 {"solution",
                  {{"k", best.k},
                   {"m", best.m},
                   {"t_invEV", best.t},
                   {"t_fs", best.t_fs()},
                   {"v_required_eV", best.v_required},
                   {"v_target_eV", best.v_target},
                   {"v_residual_eV", best.v_residual},
                   {"fidelity", fidelity_penalty(best, epsilon, best.v_required, 0.0)}}}};
  if (config.contains("grid_csv")) {
    const std::string path = require_string(config, "grid_csv");
    out.side_files.emplace_back(path, csv);
    report["grid_csv"] = path;
  }
  out.text = dump(report);
  return out;
}

// ---------------------------------------------------------------------------
// cnot-verify

namespace {

GateSequence sequence_from_config(const Json& spec) {
  if (!spec.is_array() || spec.empty()) throw ConfigError("sequence must be a non-empty array");
  std::vector<SequenceElement> elements;
  for (const Json& e : spec) {
    const std::string gate = require_string(e, "gate");
    if (gate == "iswap") {
      elements.emplace_back(IswapStep{});
      continue;
    }
    const int qubit = get_int(e, "qubit", 1);
    if (gate == "u_z" || gate == "u_x") {
      const double angle = get_number(e, "angle");
      elements.emplace_back(SingleQubitStep{
          (gate == "u_z" ? "U_Z(" : "U_X(") + format_number(angle) + ")",
          gate == "u_z" ? u_z(angle) : u_x(angle), qubit});
    } else if (gate == "u_chi_gamma") {
      const SingleQubitGateSpec s{get_number(e, "chi"), get_number(e, "gamma")};
      elements.emplace_back(SingleQubitStep{"U(" + format_number(s.chi) + "," + format_number(s.gamma) + ")",
                                            u_chi_gamma(s), qubit});
    } else {
      throw ConfigError("unknown sequence gate '" + gate + "'");
    }
  }
  return GateSequence(std::move(elements));
}

}  // namespace

CommandOutput cmd_cnot_verify(const Json& config, Format format) {
  const bool custom = config.contains("sequence");
  CnotVerification report = custom ? verify_cnot(sequence_from_config(config.at("sequence")))
                                   : verify_cnot(cnot_sequence());
  CommandOutput out;
  out.exit_code = report.matched_control != 0 ? kExitOk : kExitMismatch;

  if (format == Format::Csv) {
    std::ostringstream os;
    os << "index,label,kind,qubit\n";
    const auto& els = report.sequence.elements();
    for (std::size_t i = 0; i < els.size(); ++i) {
      const auto* single = std::get_if<SingleQubitStep>(&els[i]);
      os << i << "," << GateSequence::element_label(els[i]) << ","
         << (single ? "single" : "iswap") << "," << (single ? single->qubit : 0) << "\n";
    }
    out.text = os.str();
    return out;
  }

  Json steps = Json::array();
  const auto& els = report.sequence.elements();
  for (std::size_t i = 0; i < els.size(); ++i) {
    const auto* single = std::get_if<SingleQubitStep>(&els[i]);
    Json s = {{"index", i},
              {"label", GateSequence::element_label(els[i])},
              {"kind", single ? "single" : "iswap"},
              {"matrix", matrix_to_json(GateSequence::element_matrix(els[i]))}};
    if (single) {
      s["qubit"] = single->qubit;
      s["gate"] = matrix_to_json(single->gate);
    }
    steps.push_back(std::move(s));
  }
  Json j = {{"command", "cnot-verify"},
            {"order", "right-to-left (last listed element acts first)"},
            {"sequence", steps},
            {"iswap_count", report.sequence.iswap_count()},
            {"composed", matrix_to_json(report.sequence.composed())},
            {"fidelity_control1", report.fidelity_control1},
            {"fidelity_control2", report.fidelity_control2},
            {"matched_control", report.matched_control},
            {"fidelity", report.fidelity},
            {"threshold", 1.0 - kCnotFidelityTol},
            {"verified", report.matched_control != 0}};
  out.text = dump(j);
  return out;
}

// ---------------------------------------------------------------------------
// sweep

namespace {

const std::vector<std::string>& sweep_axes() {
  static const std::vector<std::string> names = {"epsilon", "amplitude", "omega", "phase",
                                                 "coupling", "v_target", "jitter", "k_max",
                                                 "m_max"};
  return names;
}

const std::vector<std::string>& sweep_quantities() {
  static const std::vector<std::string> names = {"gamma_geometric", "gamma_total", "gamma_dynamic",
                                                 "cyclicity_residual", "iswap_fidelity"};
  return names;
}

struct Axis {
  std::string name;
  std::vector<double> values;
};

Axis parse_axis(const Json& j) {
  Axis axis;
  axis.name = require_string(j, "name");
  if (std::find(sweep_axes().begin(), sweep_axes().end(), axis.name) == sweep_axes().end()) {
    throw ConfigError("unknown sweep axis '" + axis.name + "'");
  }
  if (j.contains("values")) {
    if (!j.at("values").is_array() || j.at("values").empty()) {
      throw ConfigError("axis '" + axis.name + "': values must be a non-empty array");
    }
    for (const Json& v : j.at("values")) {
      if (!v.is_number()) throw ConfigError("axis '" + axis.name + "': values must be numbers");
      axis.values.push_back(v.get<double>());
    }
    return axis;
  }
  const double start = get_number(j, "start");
  const double stop = get_number(j, "stop");
  const int count = get_int(j, "count", 0);
  if (count < 1) throw ConfigError("axis '" + axis.name + "': count must be >= 1");
  if (static_cast<std::size_t>(count) > kMaxGridPoints) throw ConfigError("axis too long");
  for (int i = 0; i < count; ++i) {
    axis.values.push_back(count == 1 ? start
                                     : start + (stop - start) * static_cast<double>(i) /
                                                   static_cast<double>(count - 1));
  }
  return axis;
}

struct SweepBase {
  Json drive;
  Json coupled;
  Json timing;
};

double evaluate_point(const std::string& quantity, const SweepBase& base,
                      const std::vector<Axis>& axes, const std::vector<std::size_t>& index,
                      const IntegratorConfig& cfg) {
  Json drive = base.drive;
  Json coupled = base.coupled;
  Json timing = base.timing;
  for (std::size_t a = 0; a < axes.size(); ++a) {
    const std::string& name = axes[a].name;
    const double v = axes[a].values[index[a]];
    if (name == "epsilon") {
      drive["epsilon"] = v;
      coupled["epsilon"] = v;
    } else if (name == "amplitude" || name == "omega" || name == "phase") {
      drive[name] = v;
    } else if (name == "coupling") {
      coupled["coupling"] = v;
    } else if (name == "k_max" || name == "m_max") {
      if (v != std::floor(v)) throw InvalidArgument(name + " must be an integer");
      timing[name] = static_cast<int>(v);
    } else {
      timing[name] = v;
    }
  }

  if (quantity == "iswap_fidelity") {
    const double epsilon = get_number(coupled, "epsilon");
    const bool has_coupling = coupled.contains("coupling");
    const double v_target = get_number(timing, "v_target", has_coupling ? get_number(coupled, "coupling") : -1.0);
    const TimingSolution sol = solve_iswap_timing(epsilon, v_target, get_int(timing, "k_max", 10),
                                                  get_int(timing, "m_max", 10));
    const double v_actual = has_coupling ? get_number(coupled, "coupling") : sol.v_required;
    return fidelity_penalty(sol, epsilon, v_actual, get_number(timing, "jitter", 0.0));
  }

  const PhaseDecomposition d = decompose_phases(parse_drive(drive), cfg);
  if (quantity == "gamma_geometric") return d.gamma_geometric;
  if (quantity == "gamma_total") return d.gamma_total;
  if (quantity == "gamma_dynamic") return d.gamma_dynamic;
  return d.cyclicity_residual;
}

std::string csv_safe(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == '\n' || c == '\r' || c == '"') c = ';';
  }
  return s;
}

}  // namespace

CommandOutput cmd_sweep(const Json& config, Format format) {
  const std::string quantity = require_string(config, "quantity");
  if (std::find(sweep_quantities().begin(), sweep_quantities().end(), quantity) ==
      sweep_quantities().end()) {
    throw ConfigError("unknown sweep quantity '" + quantity + "'");
  }
  const IntegratorConfig cfg = parse_integrator(section(config, "integrator"), phase_engine_config());
  const Json& base_json = section(config, "base");
  SweepBase base{base_json.value("drive", Json::object()), base_json.value("coupled", Json::object()),
                 base_json.value("timing", Json::object())};

  if (!config.contains("axes") || !config.at("axes").is_array() || config.at("axes").empty()) {
    throw ConfigError("sweep: 'axes' must be a non-empty array");
  }
  std::vector<Axis> axes;
  std::size_t points = 1;
  for (const Json& a : config.at("axes")) {
    axes.push_back(parse_axis(a));
    points *= axes.back().values.size();
    if (points > kMaxGridPoints) throw ConfigError("sweep grid exceeds 1e6 points");
  }

  // Row r enumerates the grid lexicographically, first axis outermost.
  auto index_of = [&axes](std::size_t row) {
    std::vector<std::size_t> idx(axes.size());
    for (std::size_t a = axes.size(); a-- > 0;) {
      idx[a] = row % axes[a].values.size();
      row /= axes[a].values.size();
    }
    return idx;
  };

  std::vector<double> values(points, std::nan(""));
  std::vector<std::string> errors(points);
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      try {
        values[r] = evaluate_point(quantity, base, axes, index_of(r), cfg);
      } catch (const std::exception& e) {
        const auto* err = dynamic_cast<const Error*>(&e);
        errors[r] = std::string(err ? to_string(err->kind()) : "invalid_config") + ": " + e.what();
      }
    }
  };
  std::size_t threads = config.contains("threads")
                            ? static_cast<std::size_t>(std::max(1, get_int(config, "threads", 1)))
                            : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, points);
  std::vector<std::thread> pool;
  const std::size_t chunk = (points + threads - 1) / threads;
  for (std::size_t t = 0; t < threads; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(points, begin + chunk);
    if (begin < end) pool.emplace_back(work, begin, end);
  }
  for (auto& th : pool) th.join();

  const Json metadata = {{"tool", "qdgate"},
                         {"version", QDGATE_VERSION},
                         {"quantity", quantity},
                         {"hbar_eV_fs", kHbarEvFs},
                         {"integrator", to_json(cfg)},
                         {"points", points},
                         {"timestamp", utc_timestamp()}};
  CommandOutput out;
  if (format == Format::Json) {
    Json columns = Json::array();
    for (const auto& a : axes) columns.push_back(a.name);
    columns.push_back(quantity);
    columns.push_back("error");
    Json rows = Json::array();
    for (std::size_t r = 0; r < points; ++r) {
      const auto idx = index_of(r);
      Json row = Json::array();
      for (std::size_t a = 0; a < axes.size(); ++a) row.push_back(axes[a].values[idx[a]]);
      if (errors[r].empty()) row.push_back(values[r]); else row.push_back(nullptr);
      row.push_back(errors[r]);
      rows.push_back(std::move(row));
    }
    out.text = dump({{"command", "sweep"}, {"metadata", metadata}, {"columns", columns}, {"rows", rows}});
    return out;
  }

  std::ostringstream os;
  os << "# qdgate sweep\n"
     << "# version=" << QDGATE_VERSION << "\n"
     << "# quantity=" << quantity << "\n"
     << "# hbar_eV_fs=" << format_number(kHbarEvFs) << "\n"
     << "# integrator=" << to_string(cfg.scheme) << ";steps_per_period=" << cfg.steps_per_period
     << ";tolerance=" << format_number(cfg.tolerance) << "\n"
     << "# timestamp=" << metadata["timestamp"].get<std::string>() << "\n";
  for (const auto& a : axes) os << a.name << ",";
  os << quantity << ",error\n";
  for (std::size_t r = 0; r < points; ++r) {
    const auto idx = index_of(r);
    for (std::size_t a = 0; a < axes.size(); ++a) os << format_number(axes[a].values[idx[a]]) << ",";
    if (errors[r].empty()) os << format_number(values[r]);
    os << "," << csv_safe(errors[r]) << "\n";
  }
  out.text = os.str();
  return out;
}

}  // namespace qdgate::cli
