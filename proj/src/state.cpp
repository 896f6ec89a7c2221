#include "chsh/state.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "chsh/errors.hpp"

namespace chsh {

StateDiagnostics diagnose(const ComplexMatrix& rho, const Tolerances& tol) {
  StateDiagnostics diag;
  diag.hermiticity_defect = hermiticity_defect(rho).value;
  const auto h = HermitianMatrix::symmetrized(rho);
  diag.trace_defect = h.trace() - 1.0;
  diag.min_eigenvalue = eigh(h, tol).values.front();
  diag.purity = frobenius_norm_sq(h.matrix());
  return diag;
}

QubitQuditState::QubitQuditState(const ComplexMatrix& rho, std::size_t d, const Tolerances& tol)
    : d_(d) {
  if (d < 2) throw ValidationError(Invariant::dimension, "qudit dimension must be >= 2");
  if (!rho.square() || rho.rows() != 2 * d) {
    std::ostringstream os;
    os << "density matrix for d = " << d << " must be " << 2 * d << "x" << 2 * d << ", got "
       << rho.rows() << "x" << rho.cols();
    throw ValidationError(Invariant::shape, os.str());
  }
  rho_ = HermitianMatrix(rho, tol.hermiticity);
  diagnostics_ = diagnose(rho_.matrix(), tol);
  std::ostringstream os;
  if (std::abs(diagnostics_.trace_defect) > tol.trace) {
    os << "Tr(rho) = " << shortest(rho_.trace()) << ", expected 1 within " << tol.trace;
    throw ValidationError(Invariant::trace, os.str());
  }
  if (diagnostics_.min_eigenvalue < -tol.psd) {
    os << "rho is not positive semidefinite: min eigenvalue " << shortest(diagnostics_.min_eigenvalue)
       << " < " << -tol.psd;
    throw ValidationError(Invariant::psd, os.str());
  }
}

BetaDecomposition::BetaDecomposition(HermitianMatrix beta0, HermitianMatrix beta1,
                                     HermitianMatrix beta2, HermitianMatrix beta3,
                                     const Tolerances& tol)
    : betas_{std::move(beta0), std::move(beta1), std::move(beta2), std::move(beta3)} {
  const std::size_t d = betas_[0].dim();
  for (const auto& b : betas_)
    if (b.dim() != d || d == 0)
      throw ValidationError(Invariant::dimension, "beta matrices must share one dimension");
  const double tr = betas_[0].trace();
  if (std::abs(tr - 1.0) > tol.trace) {
    std::ostringstream os;
    os << "Tr(beta0) = " << shortest(tr) << ", expected 1";
    throw ValidationError(Invariant::trace, os.str());
  }
}

BetaDecomposition decompose(const QubitQuditState& state) {
  const std::size_t d = state.d();
  const ComplexMatrix& rho = state.rho().matrix();
  const ComplexMatrix identity = ComplexMatrix::identity(d);
  std::array<HermitianMatrix, 4> betas;
  betas[0] = HermitianMatrix::symmetrized(partial_trace_first(rho, d));
  for (int i = 1; i <= 3; ++i)
    betas[static_cast<std::size_t>(i)] = HermitianMatrix::symmetrized(
        partial_trace_first(rho * kron(pauli(i), identity), d));
  return {betas[0], betas[1], betas[2], betas[3]};
}

QubitQuditState reconstruct(const BetaDecomposition& betas, const Tolerances& tol) {
  ComplexMatrix rho(2 * betas.d(), 2 * betas.d());
  for (int i = 0; i <= 3; ++i) rho += kron(pauli(i), betas.beta(i).matrix());
  rho *= 0.5;
  return {rho, betas.d(), tol};
}

double purity(const QubitQuditState& state) { return frobenius_norm_sq(state.rho().matrix()); }

PurityBound purity_violation_bound(const QubitQuditState& state) {
  const auto beta0 = HermitianMatrix::symmetrized(partial_trace_first(state.rho(), state.d()));
  PurityBound out;
  out.purity = purity(state);
  out.threshold = 0.5 * (frobenius_norm_sq(beta0.matrix()) + 1.0 / static_cast<double>(state.d()));
  out.satisfied = out.purity > out.threshold;
  return out;
}

namespace states {

QubitQuditState maximally_mixed(std::size_t d) {
  return {ComplexMatrix::identity(2 * d) * Complex(1.0 / static_cast<double>(2 * d)), d};
}

QubitQuditState bell_phi_plus() {
  const double s = 1.0 / std::sqrt(2.0);
  const std::array<Complex, 4> psi{s, 0.0, 0.0, s};
  return pure(psi, 2);
}

QubitQuditState werner(double eta) {
  ComplexMatrix rho = ComplexMatrix::identity(4);
  for (int i = 1; i <= 3; ++i) rho -= Complex(eta) * kron(pauli(i), pauli(i));
  rho *= 0.25;
  return {rho, 2};
}

QubitQuditState pure(std::span<const Complex> psi, std::size_t d) {
  if (psi.size() != 2 * d) throw ValidationError(Invariant::shape, "state vector must have 2d entries");
  ComplexMatrix rho(2 * d, 2 * d);
  for (std::size_t i = 0; i < psi.size(); ++i)
    for (std::size_t j = 0; j < psi.size(); ++j) rho(i, j) = psi[i] * std::conj(psi[j]);
  return {rho, d};
}

}  // namespace states

}  // namespace chsh
