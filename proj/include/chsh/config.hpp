#pragma once

#include <cstddef>

namespace chsh {

/// Every numerical tolerance used by the library. Defaults are the documented
/// contract values; callers override individual fields when needed.
struct Tolerances {
  double hermiticity = 1e-12;       // per-entry |H_ij - conj(H_ji)|
  double eigen_residual = 1e-10;    // ||HV - VΛ||_F / ||H||_F
  double jacobi_offdiag = 1e-13;    // relative off-diagonal Frobenius mass
  int jacobi_max_sweeps = 100;
  double trace = 1e-10;             // |Tr rho - 1|
  double psd = 1e-10;               // min eigenvalue >= -psd
  double involution = 1e-10;        // ||B^2 - I||_max
  double axis_norm = 1e-10;         // | ||r|| - 2 | for qubit observables
  double degenerate_direction = 1e-12;
  double entanglement = 1e-9;       // log-negativity threshold, bits
  double violation = 1e-12;         // B counts as violating when B > 2 + violation
};

inline constexpr Tolerances kTolerances{};

/// Whether a data-parallel kernel may fan out over OpenMP threads. Both
/// modes produce bit-identical results.
enum class Execution { serial, parallel };

/// Set the OpenMP thread count used by parallel kernels (0 = leave default).
void set_thread_count(int threads);
int thread_count();

}  // namespace chsh
