// potential.hpp
// Time-dependent diagonal potential V(price, t).

#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "qlm/lattice.hpp"

namespace qlm {

enum class PotentialKind { zero, cosine_drive, table };

struct ZeroPotential {};

// V(n, t) = beta * cos(omega * t) * price(n). omega in radians per minute.
struct CosineDrive {
  double beta = 0.0;
  double omega = 0.0;
};

// Piecewise-constant table: row i applies on [time_i, time_{i+1}); the last
// row applies only at its own time, which closes the valid range.
struct TableRow {
  double time = 0.0;
  std::vector<double> values;
};

class PotentialSpec {
 public:
  PotentialSpec() = default;  // zero potential

  static PotentialSpec zero();
  static PotentialSpec cosine_drive(double beta, double omega);
  // Breakpoints strictly increasing, all rows the same nonzero length.
  static PotentialSpec table(std::vector<TableRow> rows);

  PotentialKind kind() const noexcept;

  const CosineDrive* drive() const noexcept { return std::get_if<CosineDrive>(&data_); }
  std::span<const TableRow> table_rows() const noexcept;

  // Potentials that do not depend on t (zero, single-row table, omega == 0).
  bool is_static() const noexcept;

 private:
  std::variant<ZeroPotential, CosineDrive, std::vector<TableRow>> data_;
};

// Diagonal of V at time t.
std::vector<double> potential_values(const PotentialSpec& potential, double t,
                                     std::size_t n_sites,
                                     const PriceLattice& lattice = {});

// Allocation-free form; `out.size()` is the lattice size.
void potential_values(const PotentialSpec& potential, double t,
                      const PriceLattice& lattice, std::span<double> out);

}  // namespace qlm
