// observe.hpp
// Price and ownership observables of states and trajectories.

#pragma once

#include <cstddef>
#include <vector>

#include "qlm/evolve.hpp"
#include "qlm/state.hpp"

namespace qlm {

// Means, variances and modes are in lattice-index units (site n, trader T_k).
struct ObservationRecord {
  double time = 0.0;
  Distribution price_weights;  // |Psi(n)|^2
  Distribution owner_weights;  // |F[Psi](k)|^2
  double mean_price = 0.0;
  double mean_owner = 0.0;
  double var_price = 0.0;
  double var_owner = 0.0;
  std::size_t mode_price = 0;
  std::size_t mode_owner = 0;
};

double mean_index(const Distribution& d) noexcept;
// sum n^2 w - (sum n w)^2, clipped to 0 when roundoff makes it slightly negative.
double index_variance(const Distribution& d) noexcept;
// argmax, lowest index on ties.
std::size_t mode_index(const Distribution& d) noexcept;

ObservationRecord observe_state(const StateVector& s, double time);
std::vector<ObservationRecord> observe_trajectory(const Trajectory& trajectory);

// var_price * var_owner. Reported as data; no bound is asserted.
inline double variance_product(const ObservationRecord& r) noexcept {
  return r.var_price * r.var_owner;
}

}  // namespace qlm
