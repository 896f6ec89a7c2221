#pragma once

#include <array>
#include <cstddef>

#include "chsh/config.hpp"
#include "chsh/hermitian.hpp"

namespace chsh {

struct StateDiagnostics {
  double hermiticity_defect = 0.0;
  double trace_defect = 0.0;  // Tr(rho) - 1
  double min_eigenvalue = 0.0;
  double purity = 0.0;
};

/// Measures a candidate 2d x 2d density matrix without validating it.
StateDiagnostics diagnose(const ComplexMatrix& rho, const Tolerances& tol = kTolerances);

/// Validated density matrix on C^2 (x) C^d. Construction rejects matrices that
/// are not Hermitian, not unit trace, or not PSD within tolerance; nothing is
/// clipped.
class QubitQuditState {
 public:
  QubitQuditState(const ComplexMatrix& rho, std::size_t d, const Tolerances& tol = kTolerances);

  std::size_t d() const noexcept { return d_; }
  const HermitianMatrix& rho() const noexcept { return rho_; }
  const StateDiagnostics& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::size_t d_;
  HermitianMatrix rho_;
  StateDiagnostics diagnostics_;
};

/// rho = 1/2 [ I (x) beta0 + sum_i sigma_i (x) beta_i ].
class BetaDecomposition {
 public:
  BetaDecomposition(HermitianMatrix beta0, HermitianMatrix beta1, HermitianMatrix beta2,
                    HermitianMatrix beta3, const Tolerances& tol = kTolerances);

  std::size_t d() const noexcept { return betas_[0].dim(); }
  const HermitianMatrix& beta(int i) const { return betas_.at(static_cast<std::size_t>(i)); }
  const std::array<HermitianMatrix, 4>& all() const noexcept { return betas_; }

 private:
  std::array<HermitianMatrix, 4> betas_;
};

BetaDecomposition decompose(const QubitQuditState& state);
QubitQuditState reconstruct(const BetaDecomposition& betas, const Tolerances& tol = kTolerances);

double purity(const QubitQuditState& state);

struct PurityBound {
  double purity = 0.0;
  double threshold = 0.0;  // (Tr(beta0^2) + 1/d) / 2
  bool satisfied = false;  // purity > threshold; false certifies no CHSH violation
};
PurityBound purity_violation_bound(const QubitQuditState& state);

/// Common states used throughout tests and tools.
namespace states {
QubitQuditState maximally_mixed(std::size_t d);
/// (|00> + |11>)/sqrt(2) on two qubits.
QubitQuditState bell_phi_plus();
/// (I (x) I - eta sum_i sigma_i (x) sigma_i) / 4.
QubitQuditState werner(double eta);
/// Projector onto a normalized pure state vector of length 2d.
QubitQuditState pure(std::span<const Complex> psi, std::size_t d);
}  // namespace states

}  // namespace chsh
