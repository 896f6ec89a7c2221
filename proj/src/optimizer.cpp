#include "chsh/optimizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>

#include "chsh/errors.hpp"

namespace chsh {

ChshObjective::ChshObjective(const BetaDecomposition& betas)
    : d_(betas.d()), betas_(3 * d_ * d_), work_(d_ * d_), values_(d_), offdiag_(d_) {
  for (int b = 1; b <= 3; ++b) {
    const auto src = betas.beta(b).matrix().data();
    std::copy(src.begin(), src.end(), betas_.begin() + static_cast<std::ptrdiff_t>((b - 1) * d_ * d_));
  }
}

double ChshObjective::trace_norm_along(const Vec3& n) {
  const std::size_t size = d_ * d_;
  const Complex* b1 = betas_.data();
  const Complex* b2 = b1 + size;
  const Complex* b3 = b2 + size;
  if (d_ == 2) {
    // eigenvalues m +- r of a 2x2 Hermitian matrix: sum |lambda| = 2 max(|m|, r)
    const double a = n[0] * b1[0].real() + n[1] * b2[0].real() + n[2] * b3[0].real();
    const double c = n[0] * b1[3].real() + n[1] * b2[3].real() + n[2] * b3[3].real();
    const Complex off = n[0] * b1[1] + n[1] * b2[1] + n[2] * b3[1];
    const double m = 0.5 * (a + c);
    const double r = std::hypot(0.5 * (a - c), std::abs(off));
    return 2.0 * std::max(std::abs(m), r);
  }
  for (std::size_t k = 0; k < size; ++k) work_[k] = n[0] * b1[k] + n[1] * b2[k] + n[2] * b3[k];
  eigenvalues_in_place(work_, d_, values_, offdiag_);
  double s = 0.0;
  for (double x : values_) s += std::abs(x);
  return s;
}

double ChshObjective::operator()(const Mat3& r) {
  const double t1 = trace_norm_along(r[0]);
  const double t2 = trace_norm_along(r[1]);
  return t1 * t1 + t2 * t2;
}

double objective(const BetaDecomposition& betas, const RotationSO3& r) {
  ChshObjective f(betas);
  return f(r);
}

std::array<HermitianMatrix, 3> rotate_betas(const BetaDecomposition& betas, const Mat3& r) {
  std::array<HermitianMatrix, 3> out;
  for (std::size_t a = 0; a < 3; ++a) {
    HermitianMatrix m = HermitianMatrix::zeros(betas.d());
    for (std::size_t b = 0; b < 3; ++b) m += r[a][b] * betas.beta(static_cast<int>(b) + 1);
    out[a] = m;
  }
  return out;
}

namespace {

std::array<double, 3> beta_trace_norms(const BetaDecomposition& betas) {
  return {trace_norm(betas.beta(1)), trace_norm(betas.beta(2)), trace_norm(betas.beta(3))};
}

// indices of the two largest entries, larger first; ties keep the lower index
std::array<std::size_t, 2> top_two(const std::array<double, 3>& t) {
  std::array<std::size_t, 3> idx{0, 1, 2};
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return t[a] > t[b]; });
  return {idx[0], idx[1]};
}

}  // namespace

double lower_bound(const BetaDecomposition& betas) {
  const auto t = beta_trace_norms(betas);
  const auto [i, j] = top_two(t);
  return 2.0 * std::sqrt(t[i] * t[i] + t[j] * t[j]);
}

RotationSO3 lower_bound_rotation(const BetaDecomposition& betas) {
  const auto [i, j] = top_two(beta_trace_norms(betas));
  Mat3 r{};
  r[0][i] = 1.0;
  r[1][j] = 1.0;
  r[2] = cross(r[0], r[1]);
  return RotationSO3::from_matrix(r);
}

double upper_bound(const BetaDecomposition& betas) {
  double s = 0.0;
  for (int a = 1; a <= 3; ++a) s += frobenius_norm_sq(betas.beta(a).matrix());
  return 2.0 * std::sqrt(static_cast<double>(betas.d()) * s);
}

double horodecki_qubit_qubit(const BetaDecomposition& betas) {
  if (betas.d() != 2) {
    std::ostringstream os;
    os << "Horodecki formula needs a two-qubit state, got d = " << betas.d();
    throw ValidationError(Invariant::dimension, os.str());
  }
  std::array<std::array<double, 3>, 3> c{};
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j)
      c[i - 1][j - 1] = (betas.beta(i).matrix() * pauli(j)).trace().real();
  ComplexMatrix ctc(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) ctc(i, j) += c[k][i] * c[k][j];
  const auto kappa = eigh(HermitianMatrix::symmetrized(ctc)).values;
  return 2.0 * std::sqrt(std::max(0.0, kappa[2] + kappa[1]));
}

ChshObservables extract_observables(const BetaDecomposition& betas, const RotationSO3& rotation,
                                    const Tolerances& tol) {
  const Mat3 r = rotation.to_matrix();
  const auto rotated = rotate_betas(betas, r);
  const HermitianMatrix b = sign_involution(rotated[0], tol);
  const HermitianMatrix b_prime = sign_involution(rotated[1], tol);

  Vec3 r_b{}, r_b_prime{};
  for (std::size_t i = 0; i < 3; ++i) {
    r_b[i] = (rotated[i].matrix() * b.matrix()).trace().real();
    r_b_prime[i] = (rotated[i].matrix() * b_prime.matrix()).trace().real();
  }
  Vec3 plus{}, minus{};
  for (std::size_t i = 0; i < 3; ++i) {
    plus[i] = r_b[i] + r_b_prime[i];
    minus[i] = r_b[i] - r_b_prime[i];
  }
  const bool plus_ok = norm(plus) >= tol.degenerate_direction;
  const bool minus_ok = norm(minus) >= tol.degenerate_direction;
  // A vanishing branch contributes nothing; align both qubit settings with
  // whichever direction survives.
  Vec3 dir_a = plus, dir_a_prime = minus;
  if (!plus_ok && !minus_ok) {
    dir_a = dir_a_prime = Vec3{0.0, 0.0, 1.0};
  } else if (!plus_ok) {
    dir_a = minus;
  } else if (!minus_ok) {
    dir_a_prime = plus;
  }
  // rotated-frame Pauli vector sigma'_a = sum_i R_ai sigma_i, so lab axis = R^T r
  return {Observable2::along(apply_transpose(r, dir_a)),
          Observable2::along(apply_transpose(r, dir_a_prime)), ObservableD(b, tol),
          ObservableD(b_prime, tol)};
}

ChshResult max_chsh(const BetaDecomposition& betas, const OptimizerConfig& cfg) {
  const ChshObjective prototype(betas);
  const std::array<RotationSO3, 1> extra{lower_bound_rotation(betas)};
  // rows 1 and 2 of R flip sign under alpha -> alpha + pi; trace norms do not care
  const auto search = maximize_over_rotations(prototype, cfg, extra, true);

  const double lower = lower_bound(betas);
  const double value = 2.0 * std::sqrt(std::max(0.0, search.value));
  if (value < lower - 1e-9 * std::max(1.0, lower)) {
    std::ostringstream os;
    os << "optimizer ended below the lower bound: " << shortest(value) << " < " << shortest(lower);
    throw NumericError(os.str());
  }
  ChshResult out{
      .value = value,
      .rotation = search.rotation,
      .observables = extract_observables(betas, search.rotation),
      .lower = lower,
      .upper = upper_bound(betas),
      .violates = value > 2.0 + kTolerances.violation,
      .objective = search.value,
      .evaluations = search.evaluations,
  };
  return out;
}

ChshResult max_chsh(const QubitQuditState& state, const OptimizerConfig& cfg) {
  return max_chsh(decompose(state), cfg);
}

namespace {

struct LemmaObjective {
  Vec3 v, w;
  double operator()(const RotationSO3& rotation) const {
    const Mat3 r = rotation.to_matrix();
    const double rv1 = r[0][0] * v[0] + r[0][1] * v[1] + r[0][2] * v[2];
    const double rw2 = r[1][0] * w[0] + r[1][1] * w[1] + r[1][2] * w[2];
    return rv1 * rv1 + rw2 * rw2;
  }
};

}  // namespace

LemmaCheck lemma_rotation_identity(const Vec3& v, const Vec3& w, const OptimizerConfig& cfg) {
  Vec3 plus{}, minus{};
  for (std::size_t i = 0; i < 3; ++i) {
    plus[i] = v[i] + w[i];
    minus[i] = v[i] - w[i];
  }
  LemmaCheck out;
  const double s = norm(plus) + norm(minus);
  out.lhs = s * s;
  out.rhs = 4.0 * maximize_over_rotations(LemmaObjective{v, w}, cfg, {}, true).value;
  return out;
}

}  // namespace chsh
