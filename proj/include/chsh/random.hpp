#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>

#include "chsh/hermitian.hpp"
#include "chsh/state.hpp"

namespace chsh {

/// Counter-based random stream: draw k is a fixed hash of (seed, k), so the
/// sequence is identical on every platform and any draw can be reproduced
/// from its (seed, counter) pair.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t counter = 0) noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t counter() const noexcept { return counter_; }

  std::uint64_t next_u64() noexcept;
  /// Uniform on (0, 1].
  double uniform() noexcept;
  /// Two independent standard normals (Box-Muller).
  std::pair<double, double> normal_pair() noexcept;
  double normal() noexcept { return normal_pair().first; }

  /// Independent stream number `index` derived from this stream's seed.
  RngStream substream(std::uint64_t index) const noexcept;

 private:
  std::uint64_t seed_;
  std::uint64_t key_;
  std::uint64_t counter_;
};

/// D x D matrix with Re, Im of every entry i.i.d. N(0, 1).
ComplexMatrix ginibre(std::size_t dim, RngStream& rng);

struct QrFactors {
  ComplexMatrix q;
  ComplexMatrix r;
};
/// Householder QR of a square matrix.
QrFactors householder_qr(const ComplexMatrix& m);

/// Haar-distributed unitary: QR of a Ginibre draw with column j of Q scaled by R_jj/|R_jj|.
ComplexMatrix haar_unitary(std::size_t dim, RngStream& rng);

/// (I + U) G G^dagger (I + U^dagger), normalized to unit trace.
HermitianMatrix bures_state(std::size_t dim, RngStream& rng);

/// Bures state of dimension 2d wrapped as a validated qubit-qudit state.
QubitQuditState random_bures_state(std::size_t d, RngStream& rng);

}  // namespace chsh
