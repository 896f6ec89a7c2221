#include "chsh/random.hpp"

#include <cmath>
#include <numbers>

#include "chsh/errors.hpp"

namespace chsh {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t counter) noexcept
    : seed_(seed), key_(splitmix64(seed + kGolden)), counter_(counter) {}

std::uint64_t RngStream::next_u64() noexcept {
  return splitmix64(key_ + (++counter_) * kGolden);
}

double RngStream::uniform() noexcept {
  // 53 random bits mapped onto (0, 1]
  return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

std::pair<double, double> RngStream::normal_pair() noexcept {
  const double u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

RngStream RngStream::substream(std::uint64_t index) const noexcept {
  return RngStream(splitmix64(key_ ^ splitmix64(index + kGolden)));
}

ComplexMatrix ginibre(std::size_t dim, RngStream& rng) {
  if (dim == 0) throw ValidationError(Invariant::dimension, "Ginibre dimension must be >= 1");
  ComplexMatrix g(dim, dim);
  for (auto& z : g.data()) {
    const auto [re, im] = rng.normal_pair();
    z = {re, im};
  }
  return g;
}

QrFactors householder_qr(const ComplexMatrix& m) {
  if (!m.square()) throw ValidationError(Invariant::shape, "QR expects a square matrix");
  const std::size_t n = m.rows();
  ComplexMatrix r = m;
  ComplexMatrix q = ComplexMatrix::identity(n);
  std::vector<Complex> v(n);
  for (std::size_t k = 0; k < n; ++k) {
    double sigma2 = 0.0;
    for (std::size_t i = k; i < n; ++i) sigma2 += std::norm(r(i, k));
    if (sigma2 == 0.0) continue;
    const double sigma = std::sqrt(sigma2);
    const Complex x0 = r(k, k);
    const double x0_abs = std::abs(x0);
    const Complex alpha = -(x0_abs > 0.0 ? x0 / x0_abs : Complex(1.0)) * sigma;
    double vnorm2 = 0.0;
    for (std::size_t i = k; i < n; ++i) {
      v[i] = r(i, k) - (i == k ? alpha : Complex(0.0));
      vnorm2 += std::norm(v[i]);
    }
    const double inv = 1.0 / std::sqrt(vnorm2);
    for (std::size_t i = k; i < n; ++i) v[i] *= inv;
    // R <- (I - 2 v v^dagger) R on rows k..n-1
    for (std::size_t j = k; j < n; ++j) {
      Complex dot = 0.0;
      for (std::size_t i = k; i < n; ++i) dot += std::conj(v[i]) * r(i, j);
      for (std::size_t i = k; i < n; ++i) r(i, j) -= 2.0 * v[i] * dot;
    }
    // Q <- Q (I - 2 v v^dagger) on columns k..n-1
    for (std::size_t i = 0; i < n; ++i) {
      Complex dot = 0.0;
      for (std::size_t j = k; j < n; ++j) dot += q(i, j) * v[j];
      for (std::size_t j = k; j < n; ++j) q(i, j) -= 2.0 * dot * std::conj(v[j]);
    }
    for (std::size_t i = k + 1; i < n; ++i) r(i, k) = 0.0;
  }
  return {std::move(q), std::move(r)};
}

ComplexMatrix haar_unitary(std::size_t dim, RngStream& rng) {
  auto [q, r] = householder_qr(ginibre(dim, rng));
  for (std::size_t j = 0; j < dim; ++j) {
    const double mag = std::abs(r(j, j));
    const Complex phase = mag > 0.0 ? r(j, j) / mag : Complex(1.0);
    for (std::size_t i = 0; i < dim; ++i) q(i, j) *= phase;
  }
  return q;
}

HermitianMatrix bures_state(std::size_t dim, RngStream& rng) {
  if (dim < 2) throw ValidationError(Invariant::dimension, "Bures state dimension must be >= 2");
  for (;;) {
    const ComplexMatrix g = ginibre(dim, rng);
    ComplexMatrix one_plus_u = haar_unitary(dim, rng);
    for (std::size_t i = 0; i < dim; ++i) one_plus_u(i, i) += 1.0;
    const ComplexMatrix a = one_plus_u * g;
    const double trace = frobenius_norm_sq(a);
    if (!(trace > 0.0)) continue;  // measure-zero draw; counter has advanced
    ComplexMatrix rho = a * a.adjoint();
    rho *= Complex(1.0 / trace);
    return HermitianMatrix::symmetrized(rho);
  }
}

QubitQuditState random_bures_state(std::size_t d, RngStream& rng) {
  return {bures_state(2 * d, rng).matrix(), d};
}

}  // namespace chsh
