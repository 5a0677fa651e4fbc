#include "qlm/operators.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "qlm/error.hpp"
#include "qlm/fourier.hpp"

namespace qlm {
namespace {

Eigen::Index as_index(std::size_t n) { return static_cast<Eigen::Index>(n); }

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": " + std::to_string(a) + " vs " + std::to_string(b) +
                    " sites");
  }
}

bool is_scaled_identity(const LatticeOperator& op) {
  if (op.structure() != Structure::diagonal) return false;
  const auto& d = op.entries().diagonal();
  return (d.array() == d(0)).all();
}

}  // namespace

LatticeOperator::LatticeOperator(Eigen::MatrixXcd entries, Structure structure)
    : entries_(std::move(entries)), structure_(structure) {
  const Eigen::Index n = entries_.rows();
  if (n == 0 || entries_.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch, "lattice operator must be square and nonempty");
  }
  if (!entries_.allFinite()) {
    throw Error(ErrorCode::NonFinite, "lattice operator entries must be finite");
  }
  switch (structure_) {
    case Structure::diagonal:
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
          if (i != j && entries_(i, j) != Complex{}) {
            throw Error(ErrorCode::InvalidArgument,
                        "operator tagged diagonal has a nonzero off-diagonal entry");
          }
      break;
    case Structure::circulant: {
      const double tol = kExactTolerance * std::max(1.0, entries_.cwiseAbs().maxCoeff());
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
          if (std::abs(entries_(i, j) - entries_((i - j + n) % n, 0)) > tol) {
            throw Error(ErrorCode::InvalidArgument,
                        "operator tagged circulant is not constant along wrapped diagonals");
          }
      break;
    }
    case Structure::dense:
      break;
  }
}

LatticeOperator LatticeOperator::identity(std::size_t n_sites) {
  return LatticeOperator(Eigen::MatrixXcd::Identity(as_index(n_sites), as_index(n_sites)),
                         Structure::diagonal);
}

bool LatticeOperator::is_hermitian(double tolerance) const {
  const double scale = entries_.cwiseAbs().maxCoeff();
  const double defect = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  return defect <= tolerance * scale;
}

LatticeOperator operator*(const LatticeOperator& a, const LatticeOperator& b) {
  require_same_size(a.n_sites(), b.n_sites(), "operator product");
  Structure s = Structure::dense;
  if (a.structure() == Structure::diagonal && b.structure() == Structure::diagonal) {
    s = Structure::diagonal;
  } else if ((a.structure() == Structure::circulant || is_scaled_identity(a)) &&
             (b.structure() == Structure::circulant || is_scaled_identity(b))) {
    s = Structure::circulant;
  }
  Eigen::MatrixXcd product = a.entries() * b.entries();
  if (s == Structure::circulant) {
    // Re-impose exact circulant form from the first column.
    const Eigen::Index n = product.rows();
    const Eigen::VectorXcd column = product.col(0);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) product(i, j) = column((i - j + n) % n);
  }
  return LatticeOperator(std::move(product), s);
}

void HamiltonianParams::validate() const {
  if (!std::isfinite(mu) || mu <= 0.0) {
    throw ConfigError(ErrorCode::ValidationError, "mu must be finite and positive",
                      std::nullopt, "mu");
  }
  lattice.validate();
}

LatticeOperator price_operator(std::size_t n_sites, const PriceLattice& lattice) {
  if (n_sites == 0) throw Error(ErrorCode::InvalidArgument, "n_sites must be positive");
  Eigen::MatrixXcd entries = Eigen::MatrixXcd::Zero(as_index(n_sites), as_index(n_sites));
  for (std::size_t n = 0; n < n_sites; ++n) entries(as_index(n), as_index(n)) = lattice.level(n);
  return LatticeOperator(std::move(entries), Structure::diagonal);
}

LatticeOperator ownership_operator(std::size_t n_sites, const PriceLattice& lattice) {
  const FourierPlan plan(n_sites);
  const auto twiddles = plan.twiddles();
  const double inv_n = 1.0 / static_cast<double>(n_sites);

  // O(m, j) = c((m - j) mod N), c(d) = (1/N) sum_k level(k) exp(+2 pi i k d / N).
  std::vector<Complex> column(n_sites);
  for (std::size_t d = 0; d < n_sites; ++d) {
    Complex acc{};
    std::size_t m = 0;
    for (std::size_t k = 0; k < n_sites; ++k) {
      acc += lattice.level(k) * std::conj(twiddles[m]);
      m += d;
      if (m >= n_sites) m -= n_sites;
    }
    column[d] = acc * inv_n;
  }
  // Diagonal is the mean level; force it real.
  column[0] = Complex(column[0].real(), 0.0);

  const Eigen::Index n = as_index(n_sites);
  Eigen::MatrixXcd entries(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) entries(i, j) = column[static_cast<std::size_t>((i - j + n) % n)];
  return LatticeOperator(std::move(entries), Structure::circulant);
}

StateVector apply(const LatticeOperator& op, const StateVector& s) {
  require_same_size(op.n_sites(), s.n_sites(), "operator applied to state");
  const auto amplitudes = s.amplitudes();
  const Eigen::Map<const Eigen::VectorXcd> in(amplitudes.data(), as_index(amplitudes.size()));
  std::vector<Complex> out(s.n_sites());
  Eigen::Map<Eigen::VectorXcd>(out.data(), as_index(out.size())) = op.entries() * in;
  return StateVector(std::move(out), false);
}

double expectation(const LatticeOperator& op, const StateVector& s) {
  require_same_size(op.n_sites(), s.n_sites(), "expectation");
  if (!s.normalized()) {
    throw Error(ErrorCode::NotNormalized, "expectation requires a normalized state");
  }
  if (!op.is_hermitian()) {
    throw Error(ErrorCode::NotHermitian, "expectation requires a Hermitian operator");
  }
  if (op.structure() == Structure::diagonal) {
    double sum = 0.0;
    for (std::size_t n = 0; n < s.n_sites(); ++n) sum += op(n, n).real() * std::norm(s[n]);
    return sum;
  }
  return inner_product(s, apply(op, s)).real();
}

LatticeOperator kinetic_operator(std::size_t n_sites, const HamiltonianParams& params) {
  params.validate();
  const LatticeOperator o = ownership_operator(n_sites, params.lattice);
  const LatticeOperator o2 = o * o;
  return LatticeOperator(o2.entries() / (2.0 * params.mu), Structure::circulant);
}

LatticeOperator hamiltonian_at(double t, const HamiltonianParams& params, std::size_t n_sites) {
  Eigen::MatrixXcd entries = kinetic_operator(n_sites, params).entries();
  const std::vector<double> v = potential_values(params.potential, t, n_sites, params.lattice);
  for (std::size_t n = 0; n < n_sites; ++n) entries(as_index(n), as_index(n)) += v[n];
  return LatticeOperator(std::move(entries), Structure::dense);
}

}  // namespace qlm
