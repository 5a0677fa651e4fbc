#include "qlm/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qlm/error.hpp"

namespace qlm {
namespace {

Eigen::Index as_index(std::size_t n) { return static_cast<Eigen::Index>(n); }

// Time comparisons: two instants closer than this are the same snapshot.
double time_slack(double a, double b) {
  return 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

void require_normalized(const StateVector& s) {
  if (!s.normalized()) {
    throw Error(ErrorCode::NotNormalized, "time evolution requires a normalized state");
  }
}

void invalid(const std::string& field, const std::string& message) {
  throw ConfigError(ErrorCode::ValidationError, message, std::nullopt, field);
}

}  // namespace

std::string_view to_string(Integrator integrator) noexcept {
  switch (integrator) {
    case Integrator::split_step: return "split_step";
    case Integrator::expm_midpoint: return "expm_midpoint";
  }
  return "unknown";
}

std::optional<Integrator> parse_integrator(std::string_view name) noexcept {
  if (name == "split_step") return Integrator::split_step;
  if (name == "expm_midpoint") return Integrator::expm_midpoint;
  return std::nullopt;
}

void EvolutionConfig::validate() const {
  if (!std::isfinite(dt) || dt <= 0.0) invalid("dt", "dt must be finite and positive");
  if (!std::isfinite(t_start)) invalid("t_start", "t_start must be finite");
  if (!std::isfinite(t_end)) invalid("t_end", "t_end must be finite");
  if (t_end < t_start) invalid("t_end", "t_end must not precede t_start");
  if (!std::isfinite(snapshot_every) || snapshot_every <= 0.0) {
    invalid("snapshot_every", "snapshot_every must be finite and positive");
  }
  if (dt > snapshot_every) invalid("dt", "dt must not exceed snapshot_every");
  params.validate();
  const double steps = std::ceil((t_end - t_start) / dt - 1e-9);
  if (steps > static_cast<double>(max_steps)) {
    throw Error(ErrorCode::StepBudgetExceeded,
                "evolution needs about " + std::to_string(static_cast<long long>(steps)) +
                    " steps, budget is " + std::to_string(max_steps));
  }
}

std::size_t EvolutionConfig::step_count() const {
  const double steps = std::ceil((t_end - t_start) / dt - 1e-9);
  return steps > 0.0 ? static_cast<std::size_t>(steps) : 0;
}

Propagator::Propagator(std::size_t n_sites, HamiltonianParams params)
    : params_(std::move(params)),
      plan_(n_sites),
      kinetic_(n_sites),
      kinetic_matrix_(kinetic_operator(n_sites, params_).entries()),
      potential_(n_sites),
      scratch_(n_sites),
      hamiltonian_(n_sites, n_sites),
      solver_(as_index(n_sites)) {
  for (std::size_t k = 0; k < n_sites; ++k) {
    const double level = params_.lattice.level(k);
    kinetic_[k] = level * level / (2.0 * params_.mu);
  }
}

void Propagator::advance_split(std::span<Complex> psi, double t, double dt) {
  const std::size_t n = n_sites();
  potential_values(params_.potential, t + 0.5 * dt, params_.lattice, potential_);

  for (std::size_t j = 0; j < n; ++j) psi[j] *= std::polar(1.0, -0.5 * dt * potential_[j]);
  plan_.forward(psi, scratch_);
  for (std::size_t k = 0; k < n; ++k) scratch_[k] *= std::polar(1.0, -dt * kinetic_[k]);
  plan_.inverse(scratch_, psi);
  for (std::size_t j = 0; j < n; ++j) psi[j] *= std::polar(1.0, -0.5 * dt * potential_[j]);
}

void Propagator::advance_expm(std::span<Complex> psi, double t, double dt) {
  const std::size_t n = n_sites();
  potential_values(params_.potential, t + 0.5 * dt, params_.lattice, potential_);

  hamiltonian_ = kinetic_matrix_;
  for (std::size_t j = 0; j < n; ++j) hamiltonian_(as_index(j), as_index(j)) += potential_[j];
  solver_.compute(hamiltonian_, Eigen::ComputeEigenvectors);
  if (solver_.info() != Eigen::Success) {
    throw Error(ErrorCode::EigendecompositionFailure,
                "Hermitian eigensolver did not converge at t = " + std::to_string(t + 0.5 * dt));
  }
  const Eigen::MatrixXcd& vectors = solver_.eigenvectors();
  const Eigen::VectorXd& values = solver_.eigenvalues();

  Eigen::Map<Eigen::VectorXcd> state(psi.data(), as_index(n));
  Eigen::VectorXcd coeffs = vectors.adjoint() * state;
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) coeffs(i) *= std::polar(1.0, -dt * values(i));
  state = vectors * coeffs;
}

StateVector Propagator::step(Integrator integrator, const StateVector& state, double t,
                             double dt) {
  require_normalized(state);
  if (state.n_sites() != n_sites()) {
    throw Error(ErrorCode::DimensionMismatch,
                "propagator for " + std::to_string(n_sites()) + " sites given a state with " +
                    std::to_string(state.n_sites()));
  }
  std::vector<Complex> psi(state.amplitudes().begin(), state.amplitudes().end());
  if (integrator == Integrator::split_step) {
    advance_split(psi, t, dt);
  } else {
    advance_expm(psi, t, dt);
  }
  return StateVector(std::move(psi), true);
}

StateVector step_split(const StateVector& state, double t, double dt,
                       const HamiltonianParams& params) {
  Propagator propagator(state.n_sites(), params);
  return propagator.step(Integrator::split_step, state, t, dt);
}

StateVector step_expm(const StateVector& state, double t, double dt,
                      const HamiltonianParams& params) {
  Propagator propagator(state.n_sites(), params);
  return propagator.step(Integrator::expm_midpoint, state, t, dt);
}

std::vector<double> snapshot_times(const EvolutionConfig& config) {
  std::vector<double> times;
  for (std::size_t j = 0;; ++j) {
    const double t = config.t_start + static_cast<double>(j) * config.snapshot_every;
    if (t >= config.t_end - time_slack(t, config.t_end)) break;
    times.push_back(t);
  }
  times.push_back(config.t_end);
  return times;
}

Trajectory evolve(const StateVector& initial, const EvolutionConfig& config) {
  require_normalized(initial);
  config.validate();

  Propagator propagator(initial.n_sites(), config.params);
  std::vector<Complex> psi(initial.amplitudes().begin(), initial.amplitudes().end());

  Trajectory trajectory;
  const auto record = [&](double time) {
    StateVector snapshot(psi, true);
    const double length = norm(snapshot);
    if (std::abs(length - 1.0) > kNormDriftTolerance) {
      trajectory.warnings.push_back({time, length});
    }
    trajectory.snapshots.push_back({time, std::move(snapshot)});
  };

  const std::vector<double> times = snapshot_times(config);
  record(times.front());
  for (std::size_t s = 1; s < times.size(); ++s) {
    const double begin = times[s - 1];
    const double end = times[s];
    double t = begin;
    for (std::size_t i = 1;; ++i) {
      const double remaining = end - t;
      if (remaining <= time_slack(t, end) * 1e-3) break;
      // Fixed dt; the last step of the segment is shortened to land on `end`.
      const bool last = remaining <= config.dt * (1.0 + 1e-9);
      const double h = last ? remaining : config.dt;
      if (config.integrator == Integrator::split_step) {
        propagator.advance_split(psi, t, h);
      } else {
        propagator.advance_expm(psi, t, h);
      }
      if (last) break;
      t = begin + static_cast<double>(i) * config.dt;
    }
    record(end);
  }
  return trajectory;
}

}  // namespace qlm
