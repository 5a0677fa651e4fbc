#include "qlm/state.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "qlm/error.hpp"

namespace qlm {
namespace {

void require_well_formed(std::span<const Complex> amplitudes) {
  if (amplitudes.empty()) {
    throw Error(ErrorCode::InvalidArgument, "state vector needs at least one site");
  }
  for (const Complex& a : amplitudes) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw Error(ErrorCode::NonFinite, "state vector amplitudes must be finite");
    }
  }
}

double squared_norm(std::span<const Complex> amplitudes) noexcept {
  double sum = 0.0;
  for (const Complex& a : amplitudes) sum += std::norm(a);
  return sum;
}

}  // namespace

StateVector::StateVector(std::vector<Complex> amplitudes)
    : amplitudes_(std::move(amplitudes)) {
  require_well_formed(amplitudes_);
  normalized_ = std::abs(squared_norm(amplitudes_) - 1.0) <= kExactTolerance;
}

StateVector::StateVector(std::vector<Complex> amplitudes, bool normalized)
    : amplitudes_(std::move(amplitudes)), normalized_(normalized) {
  require_well_formed(amplitudes_);
}

StateVector StateVector::zeros(std::size_t n_sites) {
  return StateVector(std::vector<Complex>(n_sites), false);
}

StateVector StateVector::basis(std::size_t n_sites, std::size_t index) {
  if (index >= n_sites) {
    throw Error(ErrorCode::IndexOutOfRange,
                "basis index " + std::to_string(index) + " outside lattice of " +
                    std::to_string(n_sites) + " sites");
  }
  std::vector<Complex> amplitudes(n_sites);
  amplitudes[index] = 1.0;
  return StateVector(std::move(amplitudes), true);
}

Distribution Distribution::from_weights(std::vector<double> weights, double tolerance) {
  if (weights.empty()) {
    throw Error(ErrorCode::InvalidArgument, "distribution needs at least one site");
  }
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0 || w > 1.0 + tolerance) {
      throw Error(ErrorCode::InvalidArgument, "distribution weights must lie in [0, 1]");
    }
  }
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (std::abs(total - 1.0) > tolerance) {
    throw Error(ErrorCode::NotNormalized,
                "distribution weights sum to " + std::to_string(total));
  }
  return Distribution(std::move(weights));
}

double Distribution::sum() const noexcept {
  return std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

StateVector make_state(std::size_t n_sites, std::span<const SiteAmplitude> entries) {
  if (n_sites == 0) {
    throw Error(ErrorCode::InvalidArgument, "n_sites must be positive");
  }
  std::vector<Complex> amplitudes(n_sites);
  std::vector<bool> seen(n_sites, false);
  for (const SiteAmplitude& e : entries) {
    if (e.index >= n_sites) {
      throw Error(ErrorCode::IndexOutOfRange,
                  "site " + std::to_string(e.index) + " outside lattice of " +
                      std::to_string(n_sites) + " sites");
    }
    if (seen[e.index]) {
      throw Error(ErrorCode::DuplicateIndex,
                  "site " + std::to_string(e.index) + " listed more than once");
    }
    seen[e.index] = true;
    amplitudes[e.index] = e.amplitude;
  }
  require_well_formed(amplitudes);

  const double length = std::sqrt(squared_norm(amplitudes));
  if (length == 0.0) {
    throw Error(ErrorCode::ZeroVector, "cannot normalize an all-zero state");
  }
  for (Complex& a : amplitudes) a /= length;
  return StateVector(std::move(amplitudes), true);
}

StateVector make_state(std::size_t n_sites, std::initializer_list<SiteAmplitude> entries) {
  return make_state(n_sites, std::span<const SiteAmplitude>(entries.begin(), entries.size()));
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  if (a.n_sites() != b.n_sites()) {
    throw Error(ErrorCode::DimensionMismatch,
                "inner product of states with " + std::to_string(a.n_sites()) +
                    " and " + std::to_string(b.n_sites()) + " sites");
  }
  Complex sum{};
  for (std::size_t n = 0; n < a.n_sites(); ++n) sum += std::conj(a[n]) * b[n];
  return sum;
}

Distribution probabilities(const StateVector& s) {
  if (!s.normalized()) {
    throw Error(ErrorCode::NotNormalized, "probabilities require a normalized state");
  }
  std::vector<double> weights(s.n_sites());
  for (std::size_t n = 0; n < s.n_sites(); ++n) weights[n] = std::norm(s[n]);
  return Distribution(std::move(weights));
}

double norm(const StateVector& s) noexcept {
  return std::sqrt(squared_norm(s.amplitudes()));
}

}  // namespace qlm
