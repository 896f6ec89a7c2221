#pragma once

#include <array>
#include <cstddef>
#include <optional>

#include "chsh/euler_search.hpp"
#include "chsh/hermitian.hpp"
#include "chsh/rotation.hpp"
#include "chsh/seesaw.hpp"
#include "chsh/state.hpp"

namespace chsh {

struct SeesawSummary {
  double value = 0.0;
  int iterations = 0;
  std::size_t starts = 0;
  bool converged = false;

  bool operator==(const SeesawSummary&) const = default;
};

/// Everything reported by `chsh analyze` for one state.
struct AnalysisReport {
  std::size_t d = 0;
  double value = 0.0;
  bool violates = false;
  double lower = 0.0;
  double upper = 0.0;
  double objective = 0.0;
  std::size_t evaluations = 0;
  RotationSO3 rotation;
  Vec3 a_axis{};
  Vec3 a_prime_axis{};
  ComplexMatrix b;
  ComplexMatrix b_prime;
  double certificate = 0.0;  // Tr(rho O_Bell) with the observables above
  double purity = 0.0;
  double purity_threshold = 0.0;
  bool purity_condition = false;
  double log_negativity = 0.0;
  std::optional<SeesawSummary> seesaw;
  std::optional<double> elapsed_seconds;

  bool operator==(const AnalysisReport&) const = default;
};

struct AnalysisOptions {
  OptimizerConfig optimizer;
  bool seesaw_check = false;
  SeesawConfig seesaw;
  bool timing = true;
};

AnalysisReport analyze(const QubitQuditState& state, const AnalysisOptions& options = {});

}  // namespace chsh
