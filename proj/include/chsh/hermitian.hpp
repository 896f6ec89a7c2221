#pragma once

// Dense complex linear algebra for the small Hermitian matrices that appear
// in qubit-qudit problems. Index convention for bipartite operators is fixed
// globally: |a>|b> maps to row a*d + b.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "chsh/config.hpp"

namespace chsh {

using Complex = std::complex<double>;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  /// Row-major entries; throws ValidationError on size mismatch or non-finite entries.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Complex> data() noexcept { return data_; }
  std::span<const Complex> data() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  Complex trace() const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  bool operator==(const ComplexMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// Largest absolute entry of a - b; dimensions must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double frobenius_norm(const ComplexMatrix& m);

/// Square matrix with H = H^dagger. Construction from an arbitrary matrix
/// validates Hermiticity and stores the exactly symmetrized average.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const ComplexMatrix& m, double tolerance = kTolerances.hermiticity);

  /// (m + m^dagger)/2 without validation; for matrices Hermitian by construction.
  static HermitianMatrix symmetrized(const ComplexMatrix& m);
  static HermitianMatrix zeros(std::size_t n);
  static HermitianMatrix identity(std::size_t n);
  static HermitianMatrix diagonal(std::span<const double> values);

  std::size_t dim() const noexcept { return m_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  operator const ComplexMatrix&() const noexcept { return m_; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  double trace() const { return m_.trace().real(); }

  HermitianMatrix& operator+=(const HermitianMatrix& rhs);
  HermitianMatrix& operator-=(const HermitianMatrix& rhs);
  HermitianMatrix& operator*=(double s);
  friend HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix& b) { return a += b; }
  friend HermitianMatrix operator-(HermitianMatrix a, const HermitianMatrix& b) { return a -= b; }
  friend HermitianMatrix operator*(HermitianMatrix a, double s) { return a *= s; }
  friend HermitianMatrix operator*(double s, HermitianMatrix a) { return a *= s; }

 private:
  ComplexMatrix m_;
};

/// Largest Hermiticity defect |M_ij - conj(M_ji)| and where it occurs.
struct HermiticityDefect {
  double value = 0.0;
  std::size_t row = 0;
  std::size_t col = 0;
};
HermiticityDefect hermiticity_defect(const ComplexMatrix& m);

struct EigenSystem {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // unitary, column k pairs with values[k]
};

/// Cyclic complex Jacobi eigendecomposition.
EigenSystem eigh(const HermitianMatrix& h, const Tolerances& tol = kTolerances);
/// Validates Hermiticity first.
EigenSystem eigh(const ComplexMatrix& m, const Tolerances& tol = kTolerances);

/// Eigenvalues only, ascending (Householder tridiagonalization + implicit QL).
std::vector<double> eigvalsh(const HermitianMatrix& h);

/// In-place eigenvalue kernel on a row-major n x n Hermitian buffer, which is
/// destroyed. `values` and `offdiag` need n entries each; values come back
/// unsorted.
void eigenvalues_in_place(std::span<Complex> a, std::size_t n, std::span<double> values,
                          std::span<double> offdiag);

double trace_norm(const HermitianMatrix& h);
/// Tr(M M^dagger) = sum of squared entry moduli.
double frobenius_norm_sq(const ComplexMatrix& m);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Tr_A over the leading qubit of a 2d x 2d operator.
ComplexMatrix partial_trace_first(const ComplexMatrix& m, std::size_t d);
/// Transpose of the qudit factor: each d x d block is transposed in place.
ComplexMatrix partial_transpose_second(const ComplexMatrix& m, std::size_t d);

/// U diag(sign(lambda)) U^dagger with sign(0) = +1.
HermitianMatrix sign_involution(const HermitianMatrix& h, const Tolerances& tol = kTolerances);

/// sigma_0 = I, sigma_1..3 the Pauli matrices.
const ComplexMatrix& pauli(int i);

}  // namespace chsh
