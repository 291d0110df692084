#include "qdgate/pulse_scheduler.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "qdgate/phase_engine.hpp"

namespace qdgate {

namespace {

constexpr double kPi = std::numbers::pi;

void check_timing_inputs(double epsilon, double v_target, int k_max, int m_max) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw InvalidArgument("iswap timing: epsilon must be > 0");
  if (!(v_target > 0.0) || !std::isfinite(v_target)) throw InvalidArgument("iswap timing: v_target must be > 0");
  if (k_max < 1 || m_max < 1) {
    throw InvalidArgument("iswap timing: empty search space (k_max and m_max must be >= 1)");
  }
}

bool better(const TimingSolution& a, const TimingSolution& b) {
  if (a.v_residual != b.v_residual) return a.v_residual < b.v_residual;
  if (a.t != b.t) return a.t < b.t;
  return a.k < b.k;
}

}  // namespace

std::vector<TimingSolution> iswap_timing_candidates(double epsilon, double v_target, int k_max,
                                                    int m_max) {
  check_timing_inputs(epsilon, v_target, k_max, m_max);
  std::vector<TimingSolution> out;
  out.reserve(static_cast<std::size_t>(k_max) * static_cast<std::size_t>(m_max));
  for (int k = 1; k <= k_max; ++k) {
    const double t = 2.0 * kPi * k / epsilon;
    for (int m = 1; m <= m_max; ++m) {
      TimingSolution s;
      s.k = k;
      s.m = m;
      s.t = t;
      s.v_required = (m * kPi - 0.25 * kPi) / t;
      s.v_target = v_target;
      s.v_residual = std::abs(s.v_required - v_target);
      out.push_back(s);
    }
  }
  return out;
}

TimingSolution solve_iswap_timing(double epsilon, double v_target, int k_max, int m_max) {
  const auto candidates = iswap_timing_candidates(epsilon, v_target, k_max, m_max);
  const TimingSolution* best = &candidates.front();
  for (const auto& c : candidates) {
    if (better(c, *best)) best = &c;
  }
  return *best;
}

double fidelity_penalty(const TimingSolution& sol, double epsilon, double v_actual,
                        double dt_jitter) {
  const double t = sol.t + dt_jitter;
  if (!(t >= 0.0)) throw InvalidArgument("fidelity_penalty: jittered window is negative");
  return fidelity_up_to_phase(two_qubit_propagator({epsilon, v_actual}, t), iswap());
}

IdlePhase idle_phase_tracker(double epsilon, std::span<const double> idle_spans) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw InvalidArgument("idle phase: epsilon must be > 0");
  double total = 0.0;
  for (double span : idle_spans) {
    if (!(span >= 0.0) || !std::isfinite(span)) throw InvalidArgument("idle phase: spans must be >= 0");
    total += span;
  }
  const HermitianMatrix free_evolution(Complex(0.5 * epsilon, 0.0) * quasi_pauli("Z"));
  // The free evolution equals u_z(eps T); u_z(-eps T) undoes it and a shift of
  // the angle by 2 pi only changes the global phase.
  return {total, evolve_const(free_evolution, total), wrap_angle(-epsilon * total)};
}

Budget decoherence_budget(double tau_d_ps, double v_ev) {
  if (!(tau_d_ps > 0.0) || !(v_ev > 0.0)) throw InvalidArgument("decoherence budget: inputs must be > 0");
  Budget b;
  b.tau_d_ps = tau_d_ps;
  b.tau_v_fs = kHbarEvFs / v_ev;
  const double ratio = tau_d_ps * 1000.0 / b.tau_v_fs;
  // Absorb the last-ulp error of the unit conversion so tau_d == tau_v gives 1.
  b.op_count = static_cast<std::int64_t>(
      std::floor(ratio * (1.0 + 8.0 * std::numeric_limits<double>::epsilon())));
  return b;
}

}  // namespace qdgate
