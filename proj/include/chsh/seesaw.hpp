#pragma once

// Brute-force maximization of <O_Bell> by alternating exact conditional
// maximizations over (B, B') and (A, A'). Independent of the rotation search
// in optimizer.hpp and used to cross-check it.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "chsh/config.hpp"
#include "chsh/observables.hpp"
#include "chsh/state.hpp"

namespace chsh {

struct BsGivenAs {
  ObservableD b;
  ObservableD b_prime;
  double value;
};

/// With O = (A + A') (x) B + (A - A') (x) B', the best B, B' are the sign
/// involutions of Tr_A[rho ((A +- A') (x) I)].
BsGivenAs optimal_bs_given_as(const QubitQuditState& state, const Observable2& a,
                              const Observable2& a_prime);

struct AsGivenBs {
  Observable2 a;
  Observable2 a_prime;
  double value;  // |r_B + r_B'| + |r_B - r_B'|
};

AsGivenBs optimal_as_given_bs(const BetaDecomposition& betas, const ObservableD& b,
                              const ObservableD& b_prime);

struct SeesawConfig {
  std::size_t starts = 16;
  std::uint64_t seed = 0;
  int max_rounds = 200;
  double improvement_tolerance = 1e-10;
  Execution execution = Execution::parallel;
};

struct SeesawTrajectory {
  std::vector<double> values;  // after every half-step
  int rounds = 0;
  bool converged = false;
  ChshObservables observables;
};

/// One ascent from the given qubit settings.
SeesawTrajectory seesaw_from(const QubitQuditState& state, const BetaDecomposition& betas,
                             Observable2 a, Observable2 a_prime, const SeesawConfig& cfg);

struct SeesawReport {
  double value = 0.0;
  int iterations = 0;  // rounds taken by the winning start
  std::size_t starts = 0;
  std::size_t best_start = 0;
  bool converged = false;
  ChshObservables best_observables;
};

/// Multi-start see-saw; start s draws its qubit axes from RngStream(seed + s).
SeesawReport seesaw_max(const QubitQuditState& state, const SeesawConfig& cfg = {});

}  // namespace chsh
