#pragma once

#include <array>
#include <optional>
#include <vector>

#include "qdgate/hamiltonians.hpp"
#include "qdgate/propagation.hpp"

namespace qdgate {

/// Orthogonal pair of states that return to themselves after one drive
/// period. For a zero drive phase:
///   psi_plus  =  cos(chi/2)|0> + sin(chi/2)|1>
///   psi_minus = -sin(chi/2)|0> + cos(chi/2)|1>
/// A drive phase phi multiplies the |1> amplitude of psi_plus by e^{i phi}
/// (and the |0> amplitude of psi_minus by e^{-i phi}).
struct CyclicPair {
  double chi = 0.0;  ///< atan2(2A, eps - w), in [0, pi]
  StateVector psi_plus;
  StateVector psi_minus;
};

struct PhaseDecomposition {
  double gamma_total = 0.0;      ///< in (-pi, pi]
  double gamma_dynamic = 0.0;    ///< unwrapped
  double gamma_geometric = 0.0;  ///< in (-pi, pi]
  double chi = 0.0;
  double cyclicity_residual = 0.0;  ///< 1 - |<psi+|U(tau)|psi+>|
};

struct LoopSegment {
  DriveParams drive;
  std::size_t periods = 1;
  double duration = 0.0;  ///< periods * 2 pi / omega
};

struct LoopSchedule {
  std::vector<LoopSegment> segments;
};

/// Phase bookkeeping of a simulated schedule, one entry per segment.
struct ScheduleVerification {
  std::vector<PhaseDecomposition> loops;
  double net_dynamic = 0.0;
  double net_total = 0.0;         ///< arg <psi+|U_schedule|psi+>, in (-pi, pi]
  double geometric_target = 0.0;  ///< 2 gamma_g of the first loop, wrapped
  double total_mismatch = 0.0;    ///< |wrap(net_total - geometric_target)|
};

class CancellationFailedError : public Error {
 public:
  CancellationFailedError(const std::string& what, std::optional<ScheduleVerification> diag)
      : Error(ErrorKind::CancellationFailed, what), diagnostics_(std::move(diag)) {}
  const std::optional<ScheduleVerification>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::optional<ScheduleVerification> diagnostics_;
};

inline constexpr double kCyclicityTol = 1e-8;
inline constexpr double kCancellationTol = 1e-6;

/// Integrator settings used by the phase engine unless the caller passes
/// its own: fourth-order Magnus, 4096 steps per period.
IntegratorConfig phase_engine_config();

/// Reduce an angle into (-pi, pi].
double wrap_angle(double angle);

CyclicPair cyclic_states(const DriveParams& p);

/// gamma with U(tau)|psi+> = e^{i gamma}|psi+>, from the simulated propagator.
double total_phase(const DriveParams& p, const IntegratorConfig& cfg = phase_engine_config());

/// -integral_0^tau <psi+(t)|H(t)|psi+(t)> dt by composite Simpson on the
/// simulated trajectory.
double dynamic_phase(const DriveParams& p, const IntegratorConfig& cfg = phase_engine_config());

/// wrap(total - dynamic).
double geometric_phase(const DriveParams& p, const IntegratorConfig& cfg = phase_engine_config());

/// All of the above from a single simulation of one period.
PhaseDecomposition decompose_phases(const DriveParams& p,
                                    const IntegratorConfig& cfg = phase_engine_config());

/// True when a second single-period loop can cancel the dynamic phase of p
/// while keeping the same cyclic pair: eps < 2 w sin^2(chi) and A > 0.
bool cancellation_feasible(const DriveParams& p);

/// Two-loop schedule whose dynamic phases cancel and whose geometric phases
/// add. Loop 1 is p for one period. Loop 2 keeps eps, retunes the drive
/// frequency and amplitude so psi+ stays an eigenstate of the rotating-frame
/// generator, and flips the drive phase by pi when the generator eigenvalue
/// has to change sign. The result is verified by simulation before return.
LoopSchedule cancellation_sequence(const DriveParams& p,
                                   const IntegratorConfig& cfg = phase_engine_config());

/// Simulate a schedule starting from `initial` and decompose the phases of
/// every segment. The initial state must be cyclic for each segment.
ScheduleVerification simulate_schedule(const LoopSchedule& schedule, const StateVector& initial,
                                       const IntegratorConfig& cfg = phase_engine_config());

}  // namespace qdgate
