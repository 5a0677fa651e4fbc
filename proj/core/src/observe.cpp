#include "qlm/observe.hpp"

#include "qlm/fourier.hpp"

namespace qlm {
namespace {

constexpr double kVarianceClip = 1e-12;

}  // namespace

double mean_index(const Distribution& d) noexcept {
  double sum = 0.0;
  for (std::size_t n = 0; n < d.n_sites(); ++n) sum += static_cast<double>(n) * d[n];
  return sum;
}

double index_variance(const Distribution& d) noexcept {
  double second = 0.0;
  for (std::size_t n = 0; n < d.n_sites(); ++n) {
    const double x = static_cast<double>(n);
    second += x * x * d[n];
  }
  const double m = mean_index(d);
  const double var = second - m * m;
  return (var < 0.0 && var > -kVarianceClip) ? 0.0 : var;
}

std::size_t mode_index(const Distribution& d) noexcept {
  std::size_t best = 0;
  for (std::size_t n = 1; n < d.n_sites(); ++n) {
    if (d[n] > d[best]) best = n;
  }
  return best;
}

ObservationRecord observe_state(const StateVector& s, double time) {
  Distribution price = probabilities(s);
  Distribution owner = probabilities(dft(s));
  ObservationRecord r{time, price, owner};
  r.mean_price = mean_index(r.price_weights);
  r.mean_owner = mean_index(r.owner_weights);
  r.var_price = index_variance(r.price_weights);
  r.var_owner = index_variance(r.owner_weights);
  r.mode_price = mode_index(r.price_weights);
  r.mode_owner = mode_index(r.owner_weights);
  return r;
}

std::vector<ObservationRecord> observe_trajectory(const Trajectory& trajectory) {
  std::vector<ObservationRecord> records;
  records.reserve(trajectory.snapshots.size());
  for (const Snapshot& snap : trajectory.snapshots) {
    records.push_back(observe_state(snap.state, snap.time));
  }
  return records;
}

}  // namespace qlm
