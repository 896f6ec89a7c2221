#pragma once

// Two-parameter qubit-qutrit family
//   rho = x |psi1><psi1| + y |psi2><psi2| + z |psi3><psi3|,  z = 1 - x - y,
// with psi1 = (|00> + |11>)/sqrt2, psi2 = (|01> + |12>)/sqrt2,
// psi3 = (|02> + |10>)/sqrt2, plus entanglement and embedding helpers.

#include <cstddef>
#include <string>
#include <vector>

#include "chsh/config.hpp"
#include "chsh/euler_search.hpp"
#include "chsh/state.hpp"

namespace chsh {

/// Point of the closed simplex x, y >= 0, x + y <= 1.
class FamilyPoint {
 public:
  FamilyPoint(double x, double y);

  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }
  double z() const noexcept { return z_; }

 private:
  double x_, y_, z_;
};

QubitQuditState qutrit_family_state(const FamilyPoint& p);
/// Closed-form beta matrices of the family.
BetaDecomposition qutrit_family_betas(const FamilyPoint& p);

/// log2 || rho^{T_2} ||_1, in bits.
double log_negativity(const QubitQuditState& state);

/// Pads every beta matrix with zeros to d2 x d2 (upper-left block).
BetaDecomposition embed(const BetaDecomposition& betas, std::size_t d2);

struct GridRow {
  double x = 0.0;
  double y = 0.0;
  double E = 0.0;
  double B = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool entangled = false;          // E > 1e-9
  bool violates = false;           // B > 2
  bool excluded_by_upper = false;  // upper <= 2
};

/// x = i/(R-1), y = j/(R-1) for i + j <= R-1, x-major order.
std::vector<GridRow> grid_scan(int resolution, Execution exec = Execution::parallel,
                               OptimizerConfig per_point = {});

inline constexpr const char* kGridCsvHeader = "x,y,E,B,lower,upper,entangled,violates,excluded_by_upper";
std::string grid_to_csv(const std::vector<GridRow>& rows);

}  // namespace chsh
