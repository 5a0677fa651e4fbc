// fourier.hpp
// Unitary finite Fourier transform between the price and the ownership
// representation:
//
//   F[psi](k)    = 1/sqrt(N) sum_n exp(-2 pi i n k / N) psi(n)
//   F^-1[phi](n) = 1/sqrt(N) sum_k exp(+2 pi i n k / N) phi(k)
//
// The sign and the symmetric normalization are fixed; the operator identities
// in operators.hpp depend on them.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qlm/state.hpp"

namespace qlm {

// Twiddle table for a fixed lattice size. Direct O(N^2) summation; the
// exponent index is reduced as (n*k) mod N so each phase comes from an exact
// angle 2*pi*m/N.
class FourierPlan {
 public:
  explicit FourierPlan(std::size_t n_sites);

  std::size_t n_sites() const noexcept { return twiddles_.size(); }

  // exp(-2 pi i m / N) for m in [0, N).
  std::span<const Complex> twiddles() const noexcept { return twiddles_; }

  // `in` and `out` must both have n_sites elements and must not alias.
  void forward(std::span<const Complex> in, std::span<Complex> out) const;
  void inverse(std::span<const Complex> in, std::span<Complex> out) const;

 private:
  std::vector<Complex> twiddles_;
  double scale_;
};

// Both carry the `normalized` flag of their input.
StateVector dft(const StateVector& s);
StateVector idft(const StateVector& s);

}  // namespace qlm
