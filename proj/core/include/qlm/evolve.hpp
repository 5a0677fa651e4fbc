// evolve.hpp
// Integration of i dPhi/dt = H(t) Phi on the price lattice.
//
// Two independent integrators:
//   split_step     Strang splitting. Half potential phase at t + dt/2, full
//                  kinetic phase exp(-i dt level(k)^2 / (2 mu)) applied in the
//                  Fourier representation, second half potential phase.
//   expm_midpoint  exp(-i dt H(t + dt/2)) via a Hermitian eigendecomposition.
//
// Both accept negative dt (backward steps).

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qlm/fourier.hpp"
#include "qlm/operators.hpp"
#include "qlm/state.hpp"

namespace qlm {

enum class Integrator { split_step, expm_midpoint };

std::string_view to_string(Integrator integrator) noexcept;
std::optional<Integrator> parse_integrator(std::string_view name) noexcept;

inline constexpr std::size_t kDefaultMaxSteps = 10'000'000;
// Snapshot norms further than this from 1 are reported as drift.
inline constexpr double kNormDriftTolerance = 1e-9;

// Times in minutes.
struct EvolutionConfig {
  Integrator integrator = Integrator::split_step;
  double dt = 0.01;
  double t_start = 0.0;
  double t_end = 0.0;
  double snapshot_every = 1.0;
  HamiltonianParams params;
  std::size_t max_steps = kDefaultMaxSteps;

  // ValidationError on bad fields, StepBudgetExceeded when the run would
  // need more than max_steps steps.
  void validate() const;
  std::size_t step_count() const;
};

struct Snapshot {
  double time = 0.0;
  StateVector state;
};

struct NormDriftWarning {
  double time = 0.0;
  double norm = 0.0;
};

struct Trajectory {
  std::vector<Snapshot> snapshots;  // strictly increasing times; last one at t_end
  std::vector<NormDriftWarning> warnings;

  const StateVector& terminal() const { return snapshots.back().state; }
  double terminal_time() const { return snapshots.back().time; }
};

// Run-local propagation context. Owns the Fourier plan, the kinetic spectrum,
// the cached O^2/(2 mu) matrix and scratch space; not safe to share between
// threads, cheap enough to build one per run.
class Propagator {
 public:
  Propagator(std::size_t n_sites, HamiltonianParams params);

  std::size_t n_sites() const noexcept { return plan_.n_sites(); }
  const HamiltonianParams& params() const noexcept { return params_; }

  // level(k)^2 / (2 mu): the kinetic term in the ownership representation.
  std::span<const double> kinetic_spectrum() const noexcept { return kinetic_; }
  const Eigen::MatrixXcd& kinetic_matrix() const noexcept { return kinetic_matrix_; }

  StateVector step(Integrator integrator, const StateVector& state, double t, double dt);

  // In-place forms used by evolve; `psi.size()` must equal n_sites().
  void advance_split(std::span<Complex> psi, double t, double dt);
  void advance_expm(std::span<Complex> psi, double t, double dt);

 private:
  HamiltonianParams params_;
  FourierPlan plan_;
  std::vector<double> kinetic_;
  Eigen::MatrixXcd kinetic_matrix_;
  std::vector<double> potential_;
  std::vector<Complex> scratch_;
  Eigen::MatrixXcd hamiltonian_;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver_;
};

StateVector step_split(const StateVector& state, double t, double dt,
                       const HamiltonianParams& params);
StateVector step_expm(const StateVector& state, double t, double dt,
                      const HamiltonianParams& params);

// Times at which evolve records snapshots.
std::vector<double> snapshot_times(const EvolutionConfig& config);

Trajectory evolve(const StateVector& initial, const EvolutionConfig& config);

}  // namespace qlm
