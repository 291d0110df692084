#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "qdgate/hamiltonians.hpp"
#include "qdgate/operator_algebra.hpp"

namespace qdgate {

enum class Scheme {
  MidpointExponential,  ///< exp(-i H(t + h/2) h), second order
  Magnus4,              ///< two-point Gauss-Legendre Magnus, fourth order
};

std::string_view to_string(Scheme s);
Scheme scheme_from_string(std::string_view name);

struct IntegratorConfig {
  std::size_t steps_per_period = 4096;
  Scheme scheme = Scheme::MidpointExponential;
  double tolerance = 1e-8;  ///< used by the refinement check
};

void validate(const IntegratorConfig& cfg);

struct TrajectorySample {
  double t = 0.0;
  StateVector state;
};

struct PropagationResult {
  UnitaryMatrix unitary;
  std::vector<TrajectorySample> samples;  ///< empty unless requested
  Scheme scheme_used = Scheme::MidpointExponential;
  std::size_t step_count = 0;
};

/// exp(-i h t).
UnitaryMatrix evolve_const(const HermitianMatrix& h, double t);

/// Time-ordered propagator of an arbitrary Hamiltonian over [t0, t1] with a
/// fixed number of equal steps. When `sample_from` is given, the state it
/// evolves into is recorded at every step boundary (n_steps + 1 samples).
PropagationResult evolve_stepwise(const std::function<HermitianMatrix(double)>& hamiltonian,
                                  double t0, double t1, std::size_t n_steps, Scheme scheme,
                                  const std::optional<StateVector>& sample_from = std::nullopt);

/// Number of steps evolve_driven uses for duration t. Rounded up to an even
/// count so trajectory samples support composite Simpson quadrature.
std::size_t driven_step_count(const DriveParams& p, double t, const IntegratorConfig& cfg);

/// Numerical propagator of the driven single dot from time 0 to t.
PropagationResult evolve_driven(const DriveParams& p, double t, const IntegratorConfig& cfg,
                                const std::optional<StateVector>& sample_from = std::nullopt);

/// evolve_driven plus a step-doubling check; throws AccuracyError when the
/// two propagators differ by more than cfg.tolerance. Returns the finer run.
PropagationResult evolve_driven_refined(const DriveParams& p, double t,
                                        const IntegratorConfig& cfg);

/// Closed form exp(-i w t Z/2) exp(-i H_rot t).
UnitaryMatrix analytic_driven_propagator(const DriveParams& p, double t);

/// Drive period 2 pi / omega.
double period(const DriveParams& p);

}  // namespace qdgate
