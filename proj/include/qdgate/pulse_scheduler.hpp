#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qdgate/gate_synthesis.hpp"
#include "qdgate/hamiltonians.hpp"

namespace qdgate {

/// Coupling window that turns the two-dot evolution into an iSWAP:
/// t eps = 2 k pi and v_required t = m pi - pi/4.
struct TimingSolution {
  int k = 1;
  int m = 1;
  double t = 0.0;           ///< 1/eV
  double v_required = 0.0;  ///< eV
  double v_target = 0.0;    ///< eV
  double v_residual = 0.0;  ///< |v_required - v_target|, eV

  double t_fs() const { return to_femtoseconds(t); }
};

/// Every (k, m) candidate in lexicographic order, k outer.
std::vector<TimingSolution> iswap_timing_candidates(double epsilon, double v_target, int k_max,
                                                    int m_max);

/// Candidate with the smallest residual; ties go to the shorter window, then
/// to the smaller k.
TimingSolution solve_iswap_timing(double epsilon, double v_target, int k_max, int m_max);

/// Gate fidelity (up to global phase) against iSWAP when the window of `sol`
/// is run with coupling v_actual and its length is off by dt_jitter.
double fidelity_penalty(const TimingSolution& sol, double epsilon, double v_actual,
                        double dt_jitter);

struct IdlePhase {
  double idle_time = 0.0;          ///< total idle time T, 1/eV
  UnitaryMatrix accumulated;       ///< diag(e^{-i eps T/2}, e^{i eps T/2})
  double compensating_gamma_z = 0.0;  ///< u_z angle that undoes it, in (-pi, pi]
};

/// Free-evolution phase a single dot picks up while idle.
IdlePhase idle_phase_tracker(double epsilon, std::span<const double> idle_spans);

struct Budget {
  double tau_d_ps = 0.0;
  double tau_v_fs = 0.0;   ///< hbar / V
  std::int64_t op_count = 0;  ///< floor(tau_d / tau_v)
};

Budget decoherence_budget(double tau_d_ps, double v_ev);

}  // namespace qdgate
