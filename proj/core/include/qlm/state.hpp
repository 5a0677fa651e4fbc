// state.hpp
// States on the price lattice {0..N-1}: amplitudes, probability
// distributions, and the inner-product algebra.

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qlm {

using Complex = std::complex<double>;

// Library-wide exactness tolerance (normalization, Hermiticity, identities).
inline constexpr double kExactTolerance = 1e-12;

// Amplitude for a single lattice site, as used by make_state.
struct SiteAmplitude {
  std::size_t index = 0;
  Complex amplitude{};
};

// N complex amplitudes Psi(0)..Psi(N-1). Immutable once built.
//
// The `normalized` flag records that the vector came out of a normalizing
// or unitary path. The raw constructor only sets it when the squared norm is
// already 1 within kExactTolerance.
class StateVector {
 public:
  explicit StateVector(std::vector<Complex> amplitudes);

  // Caller asserts the normalization status (used by unitary maps, which
  // carry the flag of their input).
  StateVector(std::vector<Complex> amplitudes, bool normalized);

  static StateVector zeros(std::size_t n_sites);
  // Unit amplitude at `index`, zeros elsewhere.
  static StateVector basis(std::size_t n_sites, std::size_t index);

  std::size_t n_sites() const noexcept { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  const Complex& operator[](std::size_t n) const { return amplitudes_[n]; }
  bool normalized() const noexcept { return normalized_; }

 private:
  std::vector<Complex> amplitudes_;
  bool normalized_ = false;
};

// Nonnegative weights summing to 1; |Psi(n)|^2 or |F[Psi](k)|^2.
class Distribution {
 public:
  // Validates every weight in [0, 1] and the sum within `tolerance`.
  static Distribution from_weights(std::vector<double> weights,
                                   double tolerance = kExactTolerance);

  std::size_t n_sites() const noexcept { return weights_.size(); }
  std::span<const double> weights() const noexcept { return weights_; }
  double operator[](std::size_t n) const { return weights_[n]; }
  double sum() const noexcept;

 private:
  explicit Distribution(std::vector<double> weights) : weights_(std::move(weights)) {}
  friend Distribution probabilities(const StateVector& s);

  std::vector<double> weights_;
};

// Listed amplitudes at their sites, zeros elsewhere, rescaled to unit norm.
StateVector make_state(std::size_t n_sites, std::span<const SiteAmplitude> entries);
StateVector make_state(std::size_t n_sites, std::initializer_list<SiteAmplitude> entries);

// <a, b> = sum conj(a[n]) b[n].
Complex inner_product(const StateVector& a, const StateVector& b);

// weights[n] = |s[n]|^2. Requires a normalized state.
Distribution probabilities(const StateVector& s);

double norm(const StateVector& s) noexcept;

}  // namespace qlm
