// operators.hpp
// Price operator, ownership operator O = F^-1 P F, and the Hamiltonian
//
//   H(t) = O^2 / (2 mu) + diag(V(n, t)).

#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "qlm/lattice.hpp"
#include "qlm/potential.hpp"
#include "qlm/state.hpp"

namespace qlm {

enum class Structure { diagonal, circulant, dense };

// Dense N x N complex matrix with a structure tag. The constructor checks the
// tag: `diagonal` requires exactly zero off-diagonal entries, `circulant`
// requires entries(i, j) to depend only on (i - j) mod N within
// kExactTolerance (relative to the largest entry).
class LatticeOperator {
 public:
  LatticeOperator(Eigen::MatrixXcd entries, Structure structure);

  static LatticeOperator identity(std::size_t n_sites);

  std::size_t n_sites() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  const Eigen::MatrixXcd& entries() const noexcept { return entries_; }
  Complex operator()(std::size_t row, std::size_t col) const {
    return entries_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  }
  Structure structure() const noexcept { return structure_; }

  // max |A(i,j) - conj(A(j,i))| <= tolerance * max |A(i,j)|.
  bool is_hermitian(double tolerance = kExactTolerance) const;

 private:
  Eigen::MatrixXcd entries_;
  Structure structure_;
};

// Matrix product; diagonal*diagonal stays diagonal, circulant*circulant
// (or with a diagonal multiple of the identity) stays circulant.
LatticeOperator operator*(const LatticeOperator& a, const LatticeOperator& b);

struct HamiltonianParams {
  double mu = 1.0;
  PotentialSpec potential;
  PriceLattice lattice;

  // Throws ValidationError for mu <= 0 or an invalid lattice.
  void validate() const;
};

// diag(level(0), ..., level(N-1)); with the default lattice diag(0..N-1).
LatticeOperator price_operator(std::size_t n_sites, const PriceLattice& lattice = {});

// F^-1 P F as an explicit circulant matrix.
LatticeOperator ownership_operator(std::size_t n_sites, const PriceLattice& lattice = {});

// Plain matrix action. The result is not flagged normalized.
StateVector apply(const LatticeOperator& op, const StateVector& s);

// <s, op s> for a normalized state and a Hermitian operator.
double expectation(const LatticeOperator& op, const StateVector& s);

// O^2 / (2 mu).
LatticeOperator kinetic_operator(std::size_t n_sites, const HamiltonianParams& params);

LatticeOperator hamiltonian_at(double t, const HamiltonianParams& params, std::size_t n_sites);

}  // namespace qlm
