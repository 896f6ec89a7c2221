#include "chsh/seesaw.hpp"

#include <optional>

#include "chsh/errors.hpp"
#include "chsh/random.hpp"

namespace chsh {

namespace {

// Tr_A[rho (X (x) I_d)] for a 2x2 matrix X.
HermitianMatrix qubit_contraction(const QubitQuditState& state, const ComplexMatrix& x) {
  const std::size_t d = state.d();
  const ComplexMatrix& rho = state.rho().matrix();
  ComplexMatrix out(d, d);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) {
      const Complex xba = x(b, a);
      if (xba == Complex{}) continue;
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) out(j, k) += rho(a * d + j, b * d + k) * xba;
    }
  return HermitianMatrix::symmetrized(out);
}

Vec3 random_axis(RngStream& rng) {
  for (;;) {
    const auto [x, y] = rng.normal_pair();
    const double z = rng.normal();
    const Vec3 v{x, y, z};
    if (norm(v) > 1e-12) return v;
  }
}

}  // namespace

BsGivenAs optimal_bs_given_as(const QubitQuditState& state, const Observable2& a,
                              const Observable2& a_prime) {
  const ComplexMatrix& ma = a.matrix().matrix();
  const ComplexMatrix& map = a_prime.matrix().matrix();
  const HermitianMatrix m_b = qubit_contraction(state, ma + map);
  const HermitianMatrix m_b_prime = qubit_contraction(state, ma - map);
  return {ObservableD(sign_involution(m_b)), ObservableD(sign_involution(m_b_prime)),
          trace_norm(m_b) + trace_norm(m_b_prime)};
}

AsGivenBs optimal_as_given_bs(const BetaDecomposition& betas, const ObservableD& b,
                              const ObservableD& b_prime) {
  const Vec3 r_b = correlation_vector(betas, b.matrix());
  const Vec3 r_b_prime = correlation_vector(betas, b_prime.matrix());
  Vec3 plus{}, minus{};
  for (std::size_t i = 0; i < 3; ++i) {
    plus[i] = r_b[i] + r_b_prime[i];
    minus[i] = r_b[i] - r_b_prime[i];
  }
  const double np = norm(plus);
  const double nm = norm(minus);
  const double tol = kTolerances.degenerate_direction;
  return {np >= tol ? Observable2::along(plus) : Observable2(Vec3{0.0, 0.0, 2.0}),
          nm >= tol ? Observable2::along(minus) : Observable2(Vec3{2.0, 0.0, 0.0}),
          (np >= tol ? np : 0.0) + (nm >= tol ? nm : 0.0)};
}

SeesawTrajectory seesaw_from(const QubitQuditState& state, const BetaDecomposition& betas,
                             Observable2 a, Observable2 a_prime, const SeesawConfig& cfg) {
  std::optional<BsGivenAs> bs;
  SeesawTrajectory t{.values = {},
                     .rounds = 0,
                     .converged = false,
                     .observables = {a, a_prime, ObservableD(HermitianMatrix::identity(state.d())),
                                     ObservableD(HermitianMatrix::identity(state.d()))}};
  double previous = -1.0;
  for (; t.rounds < cfg.max_rounds;) {
    bs.emplace(optimal_bs_given_as(state, a, a_prime));
    t.values.push_back(bs->value);
    const AsGivenBs as = optimal_as_given_bs(betas, bs->b, bs->b_prime);
    t.values.push_back(as.value);
    a = as.a;
    a_prime = as.a_prime;
    ++t.rounds;
    t.observables = {a, a_prime, bs->b, bs->b_prime};
    if (as.value - previous < cfg.improvement_tolerance) {
      t.converged = true;
      break;
    }
    previous = as.value;
  }
  return t;
}

SeesawReport seesaw_max(const QubitQuditState& state, const SeesawConfig& cfg) {
  if (cfg.starts == 0) throw ValidationError(Invariant::domain, "see-saw needs at least one start");
  const BetaDecomposition betas = decompose(state);
  std::vector<std::optional<SeesawTrajectory>> runs(cfg.starts);
  const bool parallel = cfg.execution == Execution::parallel;
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (std::ptrdiff_t s = 0; s < static_cast<std::ptrdiff_t>(cfg.starts); ++s) {
    RngStream rng(cfg.seed + static_cast<std::uint64_t>(s));
    const Observable2 a = Observable2::along(random_axis(rng));
    const Observable2 a_prime = Observable2::along(random_axis(rng));
    runs[static_cast<std::size_t>(s)] = seesaw_from(state, betas, a, a_prime, cfg);
  }
  std::size_t best = 0;
  for (std::size_t s = 1; s < runs.size(); ++s)
    if (runs[s]->values.back() > runs[best]->values.back()) best = s;
  const auto& win = *runs[best];
  return {.value = win.values.back(),
          .iterations = win.rounds,
          .starts = cfg.starts,
          .best_start = best,
          .converged = win.converged,
          .best_observables = win.observables};
}

}  // namespace chsh
