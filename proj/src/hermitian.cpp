#include "chsh/hermitian.hpp"

#include <algorithm>
#include <array>
#include <cfloat>
#include <cmath>
#include <numeric>
#include <sstream>

#include "chsh/errors.hpp"

namespace chsh {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream os;
    os << op << ": shape " << a.rows() << "x" << a.cols() << " vs " << b.rows() << "x"
       << b.cols();
    throw ValidationError(Invariant::shape, os.str());
  }
}

void require_bipartite(const ComplexMatrix& m, std::size_t d, const char* op) {
  if (d == 0 || !m.square() || m.rows() != 2 * d) {
    std::ostringstream os;
    os << op << ": expected a " << 2 * d << "x" << 2 * d << " matrix for d = " << d << ", got "
       << m.rows() << "x" << m.cols();
    throw ValidationError(Invariant::dimension, os.str());
  }
}

}  // namespace

// ---------------------------------------------------------------- ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
  if (rows == 0 || cols == 0) throw ValidationError(Invariant::shape, "matrix dimensions must be positive");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows == 0 || cols == 0) throw ValidationError(Invariant::shape, "matrix dimensions must be positive");
  if (data_.size() != rows * cols) {
    std::ostringstream os;
    os << "expected " << rows * cols << " entries for a " << rows << "x" << cols
       << " matrix, got " << data_.size();
    throw ValidationError(Invariant::shape, os.str());
  }
  for (std::size_t k = 0; k < data_.size(); ++k) {
    if (!std::isfinite(data_[k].real()) || !std::isfinite(data_[k].imag())) {
      std::ostringstream os;
      os << "entry (" << k / cols << ", " << k % cols << ") is not finite";
      throw ValidationError(Invariant::finiteness, os.str());
    }
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  if (rows_ == 0 || cols_ == 0) throw ValidationError(Invariant::shape, "matrix dimensions must be positive");
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw ValidationError(Invariant::shape, "ragged matrix literal");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  require_same_shape(*this, rhs, "operator+");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  require_same_shape(*this, rhs, "operator-");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& x : data_) x *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    std::ostringstream os;
    os << "operator*: " << a.rows() << "x" << a.cols() << " times " << b.rows() << "x"
       << b.cols();
    throw ValidationError(Invariant::shape, os.str());
  }
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double worst = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k)
    worst = std::max(worst, std::abs(a.data()[k] - b.data()[k]));
  return worst;
}

double frobenius_norm(const ComplexMatrix& m) { return std::sqrt(frobenius_norm_sq(m)); }

double frobenius_norm_sq(const ComplexMatrix& m) {
  double s = 0.0;
  for (const auto& x : m.data()) s += std::norm(x);
  return s;
}

// -------------------------------------------------------------- HermitianMatrix

HermiticityDefect hermiticity_defect(const ComplexMatrix& m) {
  if (!m.square()) {
    std::ostringstream os;
    os << "Hermitian matrix must be square, got " << m.rows() << "x" << m.cols();
    throw ValidationError(Invariant::shape, os.str());
  }
  HermiticityDefect worst;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j) {
      const double defect = std::abs(m(i, j) - std::conj(m(j, i)));
      // on the diagonal this is 2|Im|; report |Im| itself
      const double v = i == j ? defect / 2 : defect;
      if (v > worst.value) worst = {v, i, j};
    }
  return worst;
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m, double tolerance) {
  if (m.rows() == 0) throw ValidationError(Invariant::shape, "empty matrix");
  const auto defect = hermiticity_defect(m);
  if (defect.value > tolerance) {
    std::ostringstream os;
    os << "matrix is not Hermitian: worst entry (" << defect.row << ", " << defect.col
       << ") has defect " << shortest(defect.value) << " > " << tolerance;
    throw ValidationError(Invariant::hermiticity, os.str());
  }
  *this = symmetrized(m);
}

HermitianMatrix HermitianMatrix::symmetrized(const ComplexMatrix& m) {
  HermitianMatrix h;
  h.m_ = ComplexMatrix(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    h.m_(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      const Complex v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      h.m_(i, j) = v;
      h.m_(j, i) = std::conj(v);
    }
  }
  return h;
}

HermitianMatrix HermitianMatrix::zeros(std::size_t n) {
  return symmetrized(ComplexMatrix(n, n));
}

HermitianMatrix HermitianMatrix::identity(std::size_t n) {
  return symmetrized(ComplexMatrix::identity(n));
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return symmetrized(m);
}

HermitianMatrix& HermitianMatrix::operator+=(const HermitianMatrix& rhs) {
  m_ += rhs.m_;
  return *this;
}

HermitianMatrix& HermitianMatrix::operator-=(const HermitianMatrix& rhs) {
  m_ -= rhs.m_;
  return *this;
}

HermitianMatrix& HermitianMatrix::operator*=(double s) {
  m_ *= s;
  return *this;
}

// ------------------------------------------------------------------ eigensolver

EigenSystem eigh(const HermitianMatrix& h, const Tolerances& tol) {
  const std::size_t n = h.dim();
  ComplexMatrix a = h.matrix();
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double scale = frobenius_norm(a);
  const double threshold = tol.jacobi_offdiag * scale;

  auto offdiag_mass = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * std::norm(a(i, j));
    return std::sqrt(s);
  };

  int sweep = 0;
  for (; sweep < tol.jacobi_max_sweeps && offdiag_mass() > threshold; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const Complex phase = apq / mag;  // e^{i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();

        // real Jacobi rotation on [[app, mag], [mag, aqq]]
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::hypot(t, 1.0);
        const double s = t * c;

        // V = [[c, s e^{i phi}], [-s e^{-i phi}, c]] on columns p, q; A <- V^dagger A V
        const Complex s_phase = s * phase;
        const Complex s_phase_conj = std::conj(s_phase);
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp - s_phase_conj * akq;
          a(k, q) = s_phase * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk - s_phase * aqk;
          a(q, k) = s_phase_conj * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = app - t * mag;
        a(q, q) = aqq + t * mag;

        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = c * vkp - s_phase_conj * vkq;
          v(k, q) = s_phase * vkp + c * vkq;
        }
      }
    }
  }
  if (offdiag_mass() > threshold) {
    std::ostringstream os;
    os << "Jacobi eigensolver did not converge in " << tol.jacobi_max_sweeps << " sweeps";
    throw NumericError(os.str());
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  EigenSystem out;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

EigenSystem eigh(const ComplexMatrix& m, const Tolerances& tol) {
  return eigh(HermitianMatrix(m, tol.hermiticity), tol);
}

namespace {

// Implicit QL with Wilkinson-style shifts on a real symmetric tridiagonal
// matrix; d holds the diagonal, e[i] couples i and i+1 (e[n-1] unused).
void tridiagonal_ql(std::span<double> d, std::span<double> e, std::size_t n) {
  if (n == 0) return;
  e[n - 1] = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    int iterations = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= DBL_EPSILON * dd) break;
      }
      if (m != l) {
        if (++iterations > 60) throw NumericError("tridiagonal QL did not converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::sqrt(g * g + 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        bool underflow = false;
        for (std::size_t i = m; i-- > l;) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::sqrt(f * f + g * g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace

void eigenvalues_in_place(std::span<Complex> a, std::size_t n, std::span<double> values,
                          std::span<double> offdiag) {
  auto at = [&](std::size_t i, std::size_t j) -> Complex& { return a[i * n + j]; };
  if (n == 1) {
    values[0] = at(0, 0).real();
    return;
  }
  // Householder reduction to tridiagonal form; only the trailing block is
  // kept up to date. Off-diagonals are recorded by modulus, which is a
  // diagonal unitary similarity away from the complex tridiagonal matrix.
  std::array<Complex, 64> small_v, small_w;
  std::vector<Complex> big_v, big_w;
  Complex* v = small_v.data();
  Complex* w = small_w.data();
  if (n > small_v.size()) {
    big_v.resize(n);
    big_w.resize(n);
    v = big_v.data();
    w = big_w.data();
  }

  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t m = n - k - 1;
    const std::size_t base = k + 1;
    double sigma2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) sigma2 += std::norm(at(base + i, k));
    const double sigma = std::sqrt(sigma2);
    values[k] = at(k, k).real();
    offdiag[k] = sigma;
    const Complex x0 = at(base, k);
    const double x0_abs = std::sqrt(std::norm(x0));
    // Already reduced below the first subdiagonal entry.
    if (sigma == 0.0 || sigma2 - x0_abs * x0_abs <= 0.0) continue;

    const Complex alpha = -(x0_abs > 0.0 ? x0 / x0_abs : Complex(1.0)) * sigma;
    double vnorm2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      v[i] = at(base + i, k);
      if (i == 0) v[i] -= alpha;
      vnorm2 += std::norm(v[i]);
    }
    const double inv = 1.0 / std::sqrt(vnorm2);
    for (std::size_t i = 0; i < m; ++i) v[i] *= inv;

    // p = T v ; kappa = v^dagger p ; w = p - kappa v. Only the lower
    // triangle of the trailing block is read or written.
    for (std::size_t i = 0; i < m; ++i) w[i] = at(base + i, base + i).real() * v[i];
    for (std::size_t i = 1; i < m; ++i) {
      const Complex* row = &at(base + i, base);
      Complex acc = 0.0;
      const Complex vi = v[i];
      for (std::size_t j = 0; j < i; ++j) {
        acc += row[j] * v[j];
        w[j] += std::conj(row[j]) * vi;
      }
      w[i] += acc;
    }
    double kappa = 0.0;
    for (std::size_t i = 0; i < m; ++i) kappa += (std::conj(v[i]) * w[i]).real();
    for (std::size_t i = 0; i < m; ++i) w[i] -= kappa * v[i];
    // T <- T - 2 (v w^dagger + w v^dagger)
    for (std::size_t i = 0; i < m; ++i) {
      Complex* row = &at(base + i, base);
      const Complex vi2 = 2.0 * v[i];
      const Complex wi2 = 2.0 * w[i];
      for (std::size_t j = 0; j <= i; ++j) row[j] -= vi2 * std::conj(w[j]) + wi2 * std::conj(v[j]);
    }
  }
  values[n - 2] = at(n - 2, n - 2).real();
  values[n - 1] = at(n - 1, n - 1).real();
  offdiag[n - 2] = std::sqrt(std::norm(at(n - 1, n - 2)));
  tridiagonal_ql(values, offdiag, n);
}

std::vector<double> eigvalsh(const HermitianMatrix& h) {
  const std::size_t n = h.dim();
  std::vector<Complex> a(h.matrix().data().begin(), h.matrix().data().end());
  std::vector<double> values(n), offdiag(n);
  eigenvalues_in_place(a, n, values, offdiag);
  std::sort(values.begin(), values.end());
  return values;
}

double trace_norm(const HermitianMatrix& h) {
  double s = 0.0;
  for (double x : eigvalsh(h)) s += std::abs(x);
  return s;
}

// ------------------------------------------------------------- tensor algebra

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

ComplexMatrix partial_trace_first(const ComplexMatrix& m, std::size_t d) {
  require_bipartite(m, d, "partial_trace_first");
  ComplexMatrix out(d, d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k) out(j, k) = m(j, k) + m(d + j, d + k);
  return out;
}

ComplexMatrix partial_transpose_second(const ComplexMatrix& m, std::size_t d) {
  require_bipartite(m, d, "partial_transpose_second");
  ComplexMatrix out(2 * d, 2 * d);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) out(a * d + j, b * d + k) = m(a * d + k, b * d + j);
  return out;
}

HermitianMatrix sign_involution(const HermitianMatrix& h, const Tolerances& tol) {
  const auto es = eigh(h, tol);
  const std::size_t n = h.dim();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double sign = es.values[k] >= 0.0 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex uik = sign * es.vectors(i, k);
      for (std::size_t j = 0; j < n; ++j) out(i, j) += uik * std::conj(es.vectors(j, k));
    }
  }
  return HermitianMatrix::symmetrized(out);
}

const ComplexMatrix& pauli(int i) {
  static const std::array<ComplexMatrix, 4> sigma = {
      ComplexMatrix{{1.0, 0.0}, {0.0, 1.0}},
      ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}},
      ComplexMatrix{{0.0, Complex(0, -1)}, {Complex(0, 1), 0.0}},
      ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}},
  };
  if (i < 0 || i > 3) throw ValidationError(Invariant::domain, "Pauli index must be 0..3");
  return sigma[static_cast<std::size_t>(i)];
}

std::string_view to_string(Invariant kind) {
  switch (kind) {
    case Invariant::parse: return "parse";
    case Invariant::shape: return "shape";
    case Invariant::dimension: return "dimension";
    case Invariant::domain: return "domain";
    case Invariant::hermiticity: return "hermiticity";
    case Invariant::trace: return "trace";
    case Invariant::psd: return "psd";
    case Invariant::involution: return "involution";
    case Invariant::finiteness: return "finiteness";
  }
  return "unknown";
}

}  // namespace chsh
