#include "qlm/potential.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qlm/error.hpp"

namespace qlm {

void PriceLattice::validate() const {
  if (!std::isfinite(unit) || unit <= 0.0) {
    throw ConfigError(ErrorCode::ValidationError, "price_unit must be finite and positive",
                      std::nullopt, "price_unit");
  }
  if (!std::isfinite(origin)) {
    throw ConfigError(ErrorCode::ValidationError, "price_origin must be finite",
                      std::nullopt, "price_origin");
  }
}

PotentialSpec PotentialSpec::zero() { return PotentialSpec{}; }

PotentialSpec PotentialSpec::cosine_drive(double beta, double omega) {
  if (!std::isfinite(beta) || !std::isfinite(omega)) {
    throw Error(ErrorCode::NonFinite, "cosine drive parameters must be finite");
  }
  PotentialSpec p;
  p.data_ = CosineDrive{beta, omega};
  return p;
}

PotentialSpec PotentialSpec::table(std::vector<TableRow> rows) {
  if (rows.empty()) {
    throw Error(ErrorCode::InvalidArgument, "potential table needs at least one row");
  }
  const std::size_t width = rows.front().values.size();
  if (width == 0) {
    throw Error(ErrorCode::InvalidArgument, "potential table rows must not be empty");
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const TableRow& row = rows[i];
    if (!std::isfinite(row.time)) {
      throw Error(ErrorCode::NonFinite, "potential table breakpoints must be finite");
    }
    if (i > 0 && !(row.time > rows[i - 1].time)) {
      throw Error(ErrorCode::InvalidArgument,
                  "potential table breakpoints must be strictly increasing");
    }
    if (row.values.size() != width) {
      throw Error(ErrorCode::DimensionMismatch,
                  "potential table rows must all have the same length");
    }
    for (double v : row.values) {
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::NonFinite, "potential table values must be finite");
      }
    }
  }
  PotentialSpec p;
  p.data_ = std::move(rows);
  return p;
}

PotentialKind PotentialSpec::kind() const noexcept {
  switch (data_.index()) {
    case 1: return PotentialKind::cosine_drive;
    case 2: return PotentialKind::table;
    default: return PotentialKind::zero;
  }
}

std::span<const TableRow> PotentialSpec::table_rows() const noexcept {
  if (const auto* rows = std::get_if<std::vector<TableRow>>(&data_)) return *rows;
  return {};
}

bool PotentialSpec::is_static() const noexcept {
  switch (kind()) {
    case PotentialKind::zero: return true;
    case PotentialKind::cosine_drive: return drive()->omega == 0.0;
    case PotentialKind::table: return table_rows().size() == 1;
  }
  return false;
}

void potential_values(const PotentialSpec& potential, double t,
                      const PriceLattice& lattice, std::span<double> out) {
  switch (potential.kind()) {
    case PotentialKind::zero:
      std::fill(out.begin(), out.end(), 0.0);
      return;
    case PotentialKind::cosine_drive: {
      const CosineDrive& d = *potential.drive();
      const double strength = d.beta * std::cos(d.omega * t);
      for (std::size_t n = 0; n < out.size(); ++n) out[n] = strength * lattice.level(n);
      return;
    }
    case PotentialKind::table: {
      const auto rows = potential.table_rows();
      if (!(t >= rows.front().time && t <= rows.back().time)) {
        throw Error(ErrorCode::TimeOutOfTableRange,
                    "time " + std::to_string(t) + " outside potential table range [" +
                        std::to_string(rows.front().time) + ", " +
                        std::to_string(rows.back().time) + "]");
      }
      // Last row whose breakpoint is <= t.
      const auto it = std::upper_bound(
          rows.begin(), rows.end(), t,
          [](double time, const TableRow& row) { return time < row.time; });
      const TableRow& row = *(it - 1);
      if (row.values.size() != out.size()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "potential table has " + std::to_string(row.values.size()) +
                        " values per row, lattice has " + std::to_string(out.size()));
      }
      std::copy(row.values.begin(), row.values.end(), out.begin());
      return;
    }
  }
}

std::vector<double> potential_values(const PotentialSpec& potential, double t,
                                     std::size_t n_sites, const PriceLattice& lattice) {
  std::vector<double> out(n_sites);
  potential_values(potential, t, lattice, out);
  return out;
}

}  // namespace qlm
