#include "chsh/observables.hpp"

#include <cmath>
#include <sstream>

#include "chsh/errors.hpp"

namespace chsh {

namespace {

HermitianMatrix qubit_matrix(const Vec3& r) {
  ComplexMatrix m(2, 2);
  for (int i = 0; i < 3; ++i) m += Complex(0.5 * r[static_cast<std::size_t>(i)]) * pauli(i + 1);
  return HermitianMatrix::symmetrized(m);
}

void require_dims(std::size_t d, const ObservableD& b, const ObservableD& b_prime) {
  if (b.dim() != d || b_prime.dim() != d) {
    std::ostringstream os;
    os << "qudit observables must be " << d << "x" << d << ", got " << b.dim() << " and "
       << b_prime.dim();
    throw ValidationError(Invariant::dimension, os.str());
  }
}

}  // namespace

Observable2::Observable2(const Vec3& axis, const Tolerances& tol) : axis_(axis) {
  const double n = norm(axis);
  if (!(std::abs(n - 2.0) <= tol.axis_norm)) {
    std::ostringstream os;
    os << "qubit observable axis must have norm 2, got " << shortest(n);
    throw ValidationError(Invariant::involution, os.str());
  }
  matrix_ = qubit_matrix(axis_);
}

Observable2 Observable2::along(const Vec3& direction) {
  const double n = norm(direction);
  if (!(n > 0.0)) throw ValidationError(Invariant::domain, "observable direction must be nonzero");
  return Observable2(Vec3{2 * direction[0] / n, 2 * direction[1] / n, 2 * direction[2] / n});
}

ObservableD::ObservableD(HermitianMatrix m, const Tolerances& tol) : matrix_(std::move(m)) {
  const auto square = matrix_.matrix() * matrix_.matrix();
  const double defect = max_abs_diff(square, ComplexMatrix::identity(matrix_.dim()));
  if (!(defect <= tol.involution)) {
    std::ostringstream os;
    os << "qudit observable is not involutory: max |B^2 - I| = " << shortest(defect);
    throw ValidationError(Invariant::involution, os.str());
  }
}

double bell_value(const QubitQuditState& state, const Observable2& a, const Observable2& a_prime,
                  const ObservableD& b, const ObservableD& b_prime) {
  require_dims(state.d(), b, b_prime);
  const ComplexMatrix bell =
      kron(a.matrix(), b.matrix().matrix() + b_prime.matrix().matrix()) +
      kron(a_prime.matrix(), b.matrix().matrix() - b_prime.matrix().matrix());
  const ComplexMatrix& rho = state.rho().matrix();
  // Tr(rho O) = sum_ij rho_ij O_ji
  Complex acc = 0.0;
  for (std::size_t i = 0; i < rho.rows(); ++i)
    for (std::size_t j = 0; j < rho.cols(); ++j) acc += rho(i, j) * bell(j, i);
  return acc.real();
}

double bell_value(const QubitQuditState& state, const ChshObservables& obs) {
  return bell_value(state, obs.a, obs.a_prime, obs.b, obs.b_prime);
}

Vec3 correlation_vector(const BetaDecomposition& betas, const HermitianMatrix& b) {
  Vec3 r{};
  for (int i = 1; i <= 3; ++i) {
    const auto& beta = betas.beta(i).matrix();
    Complex acc = 0.0;
    for (std::size_t j = 0; j < beta.rows(); ++j)
      for (std::size_t k = 0; k < beta.cols(); ++k) acc += beta(j, k) * b(k, j);
    r[static_cast<std::size_t>(i - 1)] = acc.real();
  }
  return r;
}

double bell_value(const BetaDecomposition& betas, const ChshObservables& obs) {
  require_dims(betas.d(), obs.b, obs.b_prime);
  const auto sum = HermitianMatrix::symmetrized(obs.b.matrix().matrix() + obs.b_prime.matrix().matrix());
  const auto diff = HermitianMatrix::symmetrized(obs.b.matrix().matrix() - obs.b_prime.matrix().matrix());
  const Vec3 r_sum = correlation_vector(betas, sum);
  const Vec3 r_diff = correlation_vector(betas, diff);
  double value = 0.0;
  // Tr(sigma_i A) = r_A[i]
  for (std::size_t i = 0; i < 3; ++i)
    value += 0.5 * (obs.a.axis()[i] * r_sum[i] + obs.a_prime.axis()[i] * r_diff[i]);
  return value;
}

}  // namespace chsh
