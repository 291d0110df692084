#include "qdgate/propagation.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "detail/eigen_kernels.hpp"

namespace qdgate {

std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::MidpointExponential: return "piecewise-midpoint-exponential";
    case Scheme::Magnus4: return "fourth-order-Magnus";
  }
  return "unknown";
}

Scheme scheme_from_string(std::string_view name) {
  if (name == "piecewise-midpoint-exponential" || name == "midpoint") {
    return Scheme::MidpointExponential;
  }
  if (name == "fourth-order-Magnus" || name == "magnus4") return Scheme::Magnus4;
  throw InvalidArgument("unknown integrator scheme '" + std::string(name) + "'");
}

void validate(const IntegratorConfig& cfg) {
  if (cfg.steps_per_period < 16) throw InvalidArgument("integrator: steps_per_period must be >= 16");
  if (!(cfg.tolerance > 0.0) || !std::isfinite(cfg.tolerance)) {
    throw InvalidArgument("integrator: tolerance must be > 0");
  }
}

namespace {

using RawHamiltonian = std::function<Matrix(double)>;

const double kGaussOffset = std::sqrt(3.0) / 6.0;
const double kMagnusCommutatorWeight = std::sqrt(3.0) / 12.0;

Matrix step_propagator(const RawHamiltonian& h, double t, double dt, Scheme scheme) {
  switch (scheme) {
    case Scheme::MidpointExponential:
      return detail::expm_hermitian_raw(h(t + 0.5 * dt), dt, -1);
    case Scheme::Magnus4: {
      const Matrix h1 = h(t + (0.5 - kGaussOffset) * dt);
      const Matrix h2 = h(t + (0.5 + kGaussOffset) * dt);
      const Complex i{0.0, 1.0};
      const Matrix generator = 0.5 * dt * (h1 + h2) -
                               i * (kMagnusCommutatorWeight * dt * dt) * (h2 * h1 - h1 * h2);
      return detail::expm_hermitian_raw(generator, 1.0, -1);
    }
  }
  throw InvalidArgument("unknown integrator scheme");
}

PropagationResult run_stepwise(const RawHamiltonian& h, Eigen::Index dim, double t0, double t1,
                               std::size_t n_steps, Scheme scheme,
                               const std::optional<StateVector>& sample_from) {
  if (n_steps == 0) throw InvalidArgument("evolve: need at least one step");
  if (!std::isfinite(t0) || !std::isfinite(t1)) throw InvalidArgument("evolve: non-finite time");

  Matrix u = Matrix::Identity(dim, dim);
  std::vector<TrajectorySample> samples;
  StateVector state;
  if (sample_from) {
    if (sample_from->size() != dim) throw InvalidArgument("evolve: initial state has wrong size");
    const double norm = sample_from->norm();
    if (std::abs(norm - 1.0) > 1e-10) throw InvalidArgument("evolve: initial state not normalised");
    state = *sample_from;
    samples.reserve(n_steps + 1);
    samples.push_back({t0, state});
  }

  const double dt = (t1 - t0) / static_cast<double>(n_steps);
  for (std::size_t k = 0; k < n_steps; ++k) {
    const double t = t0 + static_cast<double>(k) * dt;
    const Matrix step = step_propagator(h, t, dt, scheme);
    u = step * u;
    if (sample_from) {
      state = step * state;
      samples.push_back({t0 + static_cast<double>(k + 1) * dt, state});
    }
  }

  PropagationResult out{UnitaryMatrix(ComplexMatrix(std::move(u))), std::move(samples), scheme,
                        n_steps};
  for (const auto& s : out.samples) {
    if (std::abs(s.state.norm() - 1.0) > 1e-10) {
      throw AccuracyError("evolve: trajectory norm drifted to " + std::to_string(s.state.norm()));
    }
  }
  return out;
}

Matrix driven_raw(const DriveParams& p, double t) {
  const Complex e = std::polar(p.amplitude, p.omega * t + p.phase);
  Matrix h(2, 2);
  h << 0.5 * p.epsilon, std::conj(e), e, -0.5 * p.epsilon;
  return h;
}

}  // namespace

UnitaryMatrix evolve_const(const HermitianMatrix& h, double t) { return expm_hermitian(h, t, -1); }

PropagationResult evolve_stepwise(const std::function<HermitianMatrix(double)>& hamiltonian,
                                  double t0, double t1, std::size_t n_steps, Scheme scheme,
                                  const std::optional<StateVector>& sample_from) {
  const auto dim = static_cast<Eigen::Index>(hamiltonian(t0).dim());
  const RawHamiltonian raw = [&hamiltonian](double t) { return hamiltonian(t).eigen(); };
  return run_stepwise(raw, dim, t0, t1, n_steps, scheme, sample_from);
}

std::size_t driven_step_count(const DriveParams& p, double t, const IntegratorConfig& cfg) {
  const double periods = t / period(p);
  auto steps = static_cast<std::size_t>(
      std::ceil(periods * static_cast<double>(cfg.steps_per_period) - 1e-9));
  if (steps < 2) steps = 2;
  if (steps % 2 != 0) ++steps;
  return steps;
}

PropagationResult evolve_driven(const DriveParams& p, double t, const IntegratorConfig& cfg,
                                const std::optional<StateVector>& sample_from) {
  validate(p);
  validate(cfg);
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("evolve_driven: t must be >= 0");
  if (t == 0.0) {
    std::vector<TrajectorySample> samples;
    if (sample_from) samples.push_back({0.0, *sample_from});
    return {UnitaryMatrix(ComplexMatrix::identity(2)), std::move(samples), cfg.scheme, 0};
  }
  const RawHamiltonian h = [&p](double time) { return driven_raw(p, time); };
  return run_stepwise(h, 2, 0.0, t, driven_step_count(p, t, cfg), cfg.scheme, sample_from);
}

PropagationResult evolve_driven_refined(const DriveParams& p, double t,
                                        const IntegratorConfig& cfg) {
  PropagationResult coarse = evolve_driven(p, t, cfg);
  IntegratorConfig fine_cfg = cfg;
  fine_cfg.steps_per_period *= 2;
  PropagationResult fine = evolve_driven(p, t, fine_cfg);
  const double diff = (fine.unitary.eigen() - coarse.unitary.eigen()).norm();
  if (diff > cfg.tolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "evolve_driven: refinement changed the propagator by " << diff << " > tolerance "
       << cfg.tolerance << "; coarse (" << coarse.step_count << " steps) = ["
       << coarse.unitary.eigen().format(Eigen::IOFormat(17, Eigen::DontAlignCols, ", ", "; "))
       << "], fine (" << fine.step_count << " steps) = ["
       << fine.unitary.eigen().format(Eigen::IOFormat(17, Eigen::DontAlignCols, ", ", "; "))
       << "]";
    throw AccuracyError(os.str());
  }
  return fine;
}

UnitaryMatrix analytic_driven_propagator(const DriveParams& p, double t) {
  validate(p);
  const HermitianMatrix frame(std::complex<double>(0.5 * p.omega, 0.0) * quasi_pauli("Z"));
  return evolve_const(frame, t) * evolve_const(rotating_frame_hamiltonian(p), t);
}

double period(const DriveParams& p) {
  if (!(p.omega > 0.0)) throw InvalidArgument("period: omega must be > 0");
  return 2.0 * std::numbers::pi / p.omega;
}

}  // namespace qdgate
