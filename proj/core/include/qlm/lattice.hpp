#pragma once

#include <cstddef>

namespace qlm {

// Price level attached to lattice site n: unit * (n + origin).
//
// The defaults give level(n) = n, i.e. the price operator diag(0, 1, ..., N-1).
// A different unit or origin rescales/shifts the spectrum of both the price
// and the ownership operator.
struct PriceLattice {
  double unit = 1.0;
  double origin = 0.0;

  double level(std::size_t n) const noexcept {
    return unit * (static_cast<double>(n) + origin);
  }

  // Throws ValidationError unless unit > 0 and both fields are finite.
  void validate() const;

  friend bool operator==(const PriceLattice&, const PriceLattice&) = default;
};

}  // namespace qlm
