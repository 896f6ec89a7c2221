#pragma once

// Maximal CHSH value of a qubit-qudit state as a three-angle problem:
//
//   B = 2 max_R sqrt( ||(R beta)_1||_1^2 + ||(R beta)_2||_1^2 ),
//
// where (R beta)_a = sum_b R_ab beta_b and ||.||_1 is the trace norm. The
// maximizing rotation also yields optimal observables in closed form.

#include <cstddef>
#include <vector>

#include "chsh/config.hpp"
#include "chsh/euler_search.hpp"
#include "chsh/hermitian.hpp"
#include "chsh/observables.hpp"
#include "chsh/rotation.hpp"
#include "chsh/state.hpp"

namespace chsh {

struct ChshResult {
  double value = 0.0;       // maximal <O_Bell>
  RotationSO3 rotation;     // maximizer of the three-angle objective
  ChshObservables observables;
  double lower = 0.0;
  double upper = 0.0;
  bool violates = false;    // value > 2 beyond rounding (Tolerances::violation)
  double objective = 0.0;   // (value / 2)^2
  std::size_t evaluations = 0;
};

/// Objective evaluator with its own scratch space; copy one per thread.
class ChshObjective {
 public:
  explicit ChshObjective(const BetaDecomposition& betas);

  double operator()(const RotationSO3& r) { return (*this)(r.to_matrix()); }
  double operator()(const Mat3& r);
  /// Trace norm of sum_b n_b beta_b.
  double trace_norm_along(const Vec3& n);

 private:
  std::size_t d_;
  std::vector<Complex> betas_;  // beta_1..beta_3, row-major, back to back
  std::vector<Complex> work_;
  std::vector<double> values_;
  std::vector<double> offdiag_;
};

double objective(const BetaDecomposition& betas, const RotationSO3& r);

/// The rotated triple ((R beta)_1, (R beta)_2, (R beta)_3).
std::array<HermitianMatrix, 3> rotate_betas(const BetaDecomposition& betas, const Mat3& r);

ChshResult max_chsh(const BetaDecomposition& betas, const OptimizerConfig& cfg = {});
ChshResult max_chsh(const QubitQuditState& state, const OptimizerConfig& cfg = {});

/// 2 sqrt(t1^2 + t2^2) over the two largest trace norms among beta_1..3.
double lower_bound(const BetaDecomposition& betas);
/// 2 sqrt(d sum_a ||beta_a||_2^2).
double upper_bound(const BetaDecomposition& betas);
/// Rotation whose first two rows pick the two beta matrices of largest trace norm.
RotationSO3 lower_bound_rotation(const BetaDecomposition& betas);

/// 2 sqrt(k1 + k2) from the correlation matrix C_ij = Tr(beta_i sigma_j); d = 2 only.
double horodecki_qubit_qubit(const BetaDecomposition& betas);

/// Optimal A, A', B, B' at rotation R, returned in the laboratory frame.
ChshObservables extract_observables(const BetaDecomposition& betas, const RotationSO3& r,
                                    const Tolerances& tol = kTolerances);

struct LemmaCheck {
  double lhs = 0.0;  // (|v + w| + |v - w|)^2
  double rhs = 0.0;  // 4 max_R [ (Rv)_1^2 + (Rw)_2^2 ]
};
LemmaCheck lemma_rotation_identity(const Vec3& v, const Vec3& w, const OptimizerConfig& cfg = {});

}  // namespace chsh
