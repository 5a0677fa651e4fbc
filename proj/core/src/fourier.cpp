#include "qlm/fourier.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qlm/error.hpp"

namespace qlm {
namespace {

template <bool Inverse>
void transform(std::span<const Complex> twiddles, double scale,
               std::span<const Complex> in, std::span<Complex> out) {
  const std::size_t n = twiddles.size();
  if (in.size() != n || out.size() != n) {
    throw Error(ErrorCode::DimensionMismatch,
                "Fourier plan of size " + std::to_string(n) + " applied to " +
                    std::to_string(in.size()) + " amplitudes");
  }
  for (std::size_t k = 0; k < n; ++k) {
    Complex acc{};
    std::size_t m = 0;  // (j * k) mod n, advanced incrementally
    for (std::size_t j = 0; j < n; ++j) {
      const Complex& w = twiddles[m];
      acc += (Inverse ? std::conj(w) : w) * in[j];
      m += k;
      if (m >= n) m -= n;
    }
    out[k] = acc * scale;
  }
}

}  // namespace

FourierPlan::FourierPlan(std::size_t n_sites)
    : twiddles_(n_sites), scale_(0.0) {
  if (n_sites == 0) {
    throw Error(ErrorCode::InvalidArgument, "Fourier plan needs at least one site");
  }
  scale_ = 1.0 / std::sqrt(static_cast<double>(n_sites));
  const double step = 2.0 * std::numbers::pi / static_cast<double>(n_sites);
  // Fill the lower half and mirror it so w[N-m] == conj(w[m]) bit for bit.
  for (std::size_t m = 0; 2 * m <= n_sites; ++m) {
    const double angle = step * static_cast<double>(m);
    twiddles_[m] = Complex(std::cos(angle), -std::sin(angle));
    if (m != 0) twiddles_[(n_sites - m) % n_sites] = std::conj(twiddles_[m]);
  }
  if (n_sites % 2 == 0) twiddles_[n_sites / 2] = Complex(-1.0, 0.0);
  if (n_sites % 4 == 0) {
    twiddles_[n_sites / 4] = Complex(0.0, -1.0);
    twiddles_[3 * n_sites / 4] = Complex(0.0, 1.0);
  }
}

void FourierPlan::forward(std::span<const Complex> in, std::span<Complex> out) const {
  transform<false>(twiddles_, scale_, in, out);
}

void FourierPlan::inverse(std::span<const Complex> in, std::span<Complex> out) const {
  transform<true>(twiddles_, scale_, in, out);
}

StateVector dft(const StateVector& s) {
  const FourierPlan plan(s.n_sites());
  std::vector<Complex> out(s.n_sites());
  plan.forward(s.amplitudes(), out);
  return StateVector(std::move(out), s.normalized());
}

StateVector idft(const StateVector& s) {
  const FourierPlan plan(s.n_sites());
  std::vector<Complex> out(s.n_sites());
  plan.inverse(s.amplitudes(), out);
  return StateVector(std::move(out), s.normalized());
}

}  // namespace qlm
