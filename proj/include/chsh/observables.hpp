#pragma once

#include <cstddef>

#include "chsh/config.hpp"
#include "chsh/hermitian.hpp"
#include "chsh/rotation.hpp"
#include "chsh/state.hpp"

namespace chsh {

/// Qubit observable A = (r . sigma)/2 with |r| = 2, i.e. eigenvalues exactly +-1.
class Observable2 {
 public:
  explicit Observable2(const Vec3& axis, const Tolerances& tol = kTolerances);
  /// Rescales a nonzero direction to length 2.
  static Observable2 along(const Vec3& direction);

  const Vec3& axis() const noexcept { return axis_; }
  const HermitianMatrix& matrix() const noexcept { return matrix_; }

 private:
  Vec3 axis_;
  HermitianMatrix matrix_;
};

/// Hermitian involution on the qudit (B^2 = I, eigenvalues +-1, any degeneracy).
class ObservableD {
 public:
  explicit ObservableD(HermitianMatrix m, const Tolerances& tol = kTolerances);

  std::size_t dim() const noexcept { return matrix_.dim(); }
  const HermitianMatrix& matrix() const noexcept { return matrix_; }

 private:
  HermitianMatrix matrix_;
};

struct ChshObservables {
  Observable2 a;
  Observable2 a_prime;
  ObservableD b;
  ObservableD b_prime;
};

/// Tr(rho [A (x) (B + B') + A' (x) (B - B')]) evaluated on the full 2d x 2d operator.
double bell_value(const QubitQuditState& state, const Observable2& a, const Observable2& a_prime,
                  const ObservableD& b, const ObservableD& b_prime);
double bell_value(const QubitQuditState& state, const ChshObservables& obs);

/// Same quantity through the beta decomposition:
/// 1/2 sum_i [Tr(sigma_i A) Tr(beta_i (B+B')) + Tr(sigma_i A') Tr(beta_i (B-B'))].
double bell_value(const BetaDecomposition& betas, const ChshObservables& obs);

/// r_B = (Tr(beta_1 B), Tr(beta_2 B), Tr(beta_3 B)).
Vec3 correlation_vector(const BetaDecomposition& betas, const HermitianMatrix& b);

}  // namespace chsh
