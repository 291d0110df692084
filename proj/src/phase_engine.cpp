#include "qdgate/phase_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qdgate {

namespace {

constexpr double kPi = std::numbers::pi;

void require_nondegenerate(const DriveParams& p) {
  validate(p);
  if (p.amplitude == 0.0 && p.epsilon == p.omega) {
    throw DegenerateDriveError(
        "degenerate drive: A = 0 and eps = w leave H = 0 in the rotating frame, every state is "
        "cyclic and chi is undefined");
  }
}

double simpson(const std::vector<double>& f, double h) {
  const std::size_t n = f.size() - 1;  // number of intervals, even
  double acc = f.front() + f.back();
  for (std::size_t k = 1; k < n; ++k) acc += (k % 2 == 1 ? 4.0 : 2.0) * f[k];
  return acc * h / 3.0;
}

double bloch_polar_angle(const StateVector& psi) {
  return 2.0 * std::atan2(std::abs(psi(1)), std::abs(psi(0)));
}

// Simulate `periods` drive periods from `initial` and split the acquired
// phase. `initial` must be cyclic for the segment.
PhaseDecomposition decompose_segment(const DriveParams& drive, std::size_t periods,
                                     const StateVector& initial, const IntegratorConfig& cfg,
                                     StateVector* final_state = nullptr) {
  const double duration = static_cast<double>(periods) * period(drive);
  const PropagationResult run = evolve_driven(drive, duration, cfg, initial);

  const Complex overlap = initial.dot(run.unitary.eigen() * initial);
  PhaseDecomposition out;
  out.chi = bloch_polar_angle(initial);
  out.cyclicity_residual = std::max(0.0, 1.0 - std::abs(overlap));
  if (out.cyclicity_residual > kCyclicityTol) {
    std::ostringstream os;
    os.precision(17);
    os << "state is not cyclic over " << periods << " period(s): |<psi|U|psi>| = "
       << std::abs(overlap);
    throw NotCyclicError(os.str());
  }
  out.gamma_total = wrap_angle(std::arg(overlap));

  std::vector<double> energy;
  energy.reserve(run.samples.size());
  for (const auto& sample : run.samples) {
    const Matrix h = single_dot_hamiltonian(drive, sample.t).eigen();
    energy.push_back(sample.state.dot(h * sample.state).real());
  }
  const double dt = duration / static_cast<double>(run.step_count);
  out.gamma_dynamic = -simpson(energy, dt);
  out.gamma_geometric = wrap_angle(out.gamma_total - out.gamma_dynamic);
  if (final_state) *final_state = run.samples.back().state;
  return out;
}

}  // namespace

IntegratorConfig phase_engine_config() {
  IntegratorConfig cfg;
  cfg.steps_per_period = 4096;
  cfg.scheme = Scheme::Magnus4;
  return cfg;
}

double wrap_angle(double angle) {
  double r = std::remainder(angle, 2.0 * kPi);  // [-pi, pi]
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

CyclicPair cyclic_states(const DriveParams& p) {
  require_nondegenerate(p);
  CyclicPair pair;
  pair.chi = std::atan2(2.0 * p.amplitude, p.epsilon - p.omega);
  const double c = std::cos(0.5 * pair.chi);
  const double s = std::sin(0.5 * pair.chi);
  const Complex tilt = std::polar(1.0, p.phase);
  pair.psi_plus = StateVector(2);
  pair.psi_minus = StateVector(2);
  if (p.phase == 0.0) {
    pair.psi_plus << c, s;
    pair.psi_minus << -s, c;
  } else {
    pair.psi_plus << c, tilt * s;
    pair.psi_minus << -std::conj(tilt) * s, c;
  }
  return pair;
}

PhaseDecomposition decompose_phases(const DriveParams& p, const IntegratorConfig& cfg) {
  const CyclicPair pair = cyclic_states(p);
  PhaseDecomposition out = decompose_segment(p, 1, pair.psi_plus, cfg);
  out.chi = pair.chi;
  return out;
}

double total_phase(const DriveParams& p, const IntegratorConfig& cfg) {
  const CyclicPair pair = cyclic_states(p);
  const PropagationResult run = evolve_driven(p, period(p), cfg);
  const Matrix& u = run.unitary.eigen();
  const Complex plus = pair.psi_plus.dot(u * pair.psi_plus);
  const Complex minus = pair.psi_minus.dot(u * pair.psi_minus);
  const double residual = 1.0 - std::min(std::abs(plus), std::abs(minus));
  if (residual > kCyclicityTol) {
    throw NotCyclicError("cyclic pair does not return after one period (residual " +
                         std::to_string(residual) + ")");
  }
  const double gamma = wrap_angle(std::arg(plus));
  const double pair_mismatch = std::abs(wrap_angle(std::arg(minus) + gamma));
  if (pair_mismatch > kCyclicityTol) {
    throw NotCyclicError("psi- eigenphase is not -gamma (mismatch " + std::to_string(pair_mismatch) +
                         ")");
  }
  return gamma;
}

double dynamic_phase(const DriveParams& p, const IntegratorConfig& cfg) {
  return decompose_phases(p, cfg).gamma_dynamic;
}

double geometric_phase(const DriveParams& p, const IntegratorConfig& cfg) {
  return decompose_phases(p, cfg).gamma_geometric;
}

bool cancellation_feasible(const DriveParams& p) {
  validate(p);
  if (p.amplitude == 0.0) return false;
  const double chi = std::atan2(2.0 * p.amplitude, p.epsilon - p.omega);
  const double s = std::sin(chi);
  return 2.0 * s * s - p.epsilon / p.omega > 1e-9;
}

ScheduleVerification simulate_schedule(const LoopSchedule& schedule, const StateVector& initial,
                                       const IntegratorConfig& cfg) {
  if (schedule.segments.empty()) throw InvalidArgument("schedule has no segments");
  ScheduleVerification out;
  StateVector state = initial;
  for (const auto& seg : schedule.segments) {
    if (seg.periods == 0 || !(seg.duration > 0.0)) {
      throw InvalidArgument("schedule segment must run a positive whole number of periods");
    }
    StateVector next;
    out.loops.push_back(decompose_segment(seg.drive, seg.periods, state, cfg, &next));
    out.net_dynamic += out.loops.back().gamma_dynamic;
    state = std::move(next);
  }
  out.net_total = wrap_angle(std::arg(initial.dot(state)));
  out.geometric_target = wrap_angle(2.0 * out.loops.front().gamma_geometric);
  out.total_mismatch = std::abs(wrap_angle(out.net_total - out.geometric_target));
  return out;
}

LoopSchedule cancellation_sequence(const DriveParams& p, const IntegratorConfig& cfg) {
  require_nondegenerate(p);
  if (p.amplitude == 0.0) {
    throw DegenerateDriveError(
        "cancellation needs A > 0: without a drive the cyclic state is stationary and no second "
        "loop can carry the same geometric phase");
  }
  if (!cancellation_feasible(p)) {
    std::ostringstream os;
    os.precision(17);
    const double chi = std::atan2(2.0 * p.amplitude, p.epsilon - p.omega);
    os << "no single-period second loop with eps > 0 and w > 0 cancels the dynamic phase: need "
          "eps < 2 w sin^2(chi), got eps = "
       << p.epsilon << ", 2 w sin^2(chi) = " << 2.0 * p.omega * std::sin(chi) * std::sin(chi);
    throw CancellationFailedError(os.str(), std::nullopt);
  }

  const double detuning = p.epsilon - p.omega;
  const double rabi = std::hypot(detuning, 2.0 * p.amplitude);
  const double cos_chi = detuning / rabi;
  const double sin_chi = 2.0 * p.amplitude / rabi;

  // Per full frame turn the dynamic phase of psi+ is -2 pi lambda / w - pi cos(chi),
  // lambda being its rotating-frame energy. Pick (w2, lambda2) with eps fixed so
  // the second loop contributes exactly the opposite amount.
  const double ratio = -0.5 * (rabi / p.omega + 2.0 * cos_chi);  // lambda2 / w2
  const double omega2 = p.epsilon / (1.0 + 2.0 * ratio * cos_chi);
  const double lambda2 = ratio * omega2;

  DriveParams second = p;
  second.omega = omega2;
  second.amplitude = std::abs(lambda2) * sin_chi;
  second.phase = lambda2 < 0.0 ? p.phase + kPi : p.phase;

  LoopSchedule schedule;
  schedule.segments.push_back({p, 1, period(p)});
  schedule.segments.push_back({second, 1, period(second)});

  const CyclicPair pair = cyclic_states(p);
  ScheduleVerification check = simulate_schedule(schedule, pair.psi_plus, cfg);
  if (std::abs(check.net_dynamic) > kCancellationTol || check.total_mismatch > kCancellationTol) {
    std::ostringstream os;
    os.precision(17);
    os << "cancellation check failed: net dynamic phase " << check.net_dynamic
       << ", total-phase mismatch " << check.total_mismatch;
    throw CancellationFailedError(os.str(), std::move(check));
  }
  return schedule;
}

}  // namespace qdgate
