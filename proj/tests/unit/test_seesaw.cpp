#include "doctest.h"

#include <cmath>
#include <numbers>

#include "chsh/optimizer.hpp"
#include "chsh/random.hpp"
#include "chsh/seesaw.hpp"
#include "oracles.hpp"

using namespace chsh;

namespace {
const double kSqrt2 = std::numbers::sqrt2;
}

TEST_CASE("best B given A on the Bell state") {
  const auto bell = states::bell_phi_plus();
  const auto r = optimal_bs_given_as(bell, Observable2(Vec3{0, 0, 2}), Observable2(Vec3{2, 0, 0}));
  CHECK(r.value == doctest::Approx(2 * kSqrt2).epsilon(1e-14));
  // M_B = (sigma3 + sigma1)/2, so B is its sign
  const auto expected_b = (oracle::pauli(3) + oracle::pauli(1)) * Complex(1 / kSqrt2);
  CHECK(oracle::max_diff(r.b.matrix(), expected_b) < 1e-12);
  CHECK(bell_value(bell, Observable2(Vec3{0, 0, 2}), Observable2(Vec3{2, 0, 0}), r.b, r.b_prime) ==
        doctest::Approx(r.value).epsilon(1e-12));
}

TEST_CASE("best B given A: maximally mixed and optimality") {
  oracle::Rng rng(51);
  const auto a = Observable2::along(oracle::random_unit_vector(rng));
  const auto ap = Observable2::along(oracle::random_unit_vector(rng));
  CHECK(optimal_bs_given_as(states::maximally_mixed(3), a, ap).value == doctest::Approx(0.0));

  RngStream stream(51);
  for (std::size_t d : {2u, 3u, 4u}) {
    const auto s = random_bures_state(d, stream);
    const auto r = optimal_bs_given_as(s, a, ap);
    CHECK(std::abs(bell_value(s, a, ap, r.b, r.b_prime) - r.value) < 1e-10);
    for (int k = 0; k < 50; ++k) {
      const ObservableD b(HermitianMatrix::symmetrized(oracle::random_involution(d, rng)));
      const ObservableD bp(HermitianMatrix::symmetrized(oracle::random_involution(d, rng)));
      CHECK(bell_value(s, a, ap, b, bp) <= r.value + 1e-10);
    }
  }
}

TEST_CASE("best A given B on the Bell state") {
  const auto betas = decompose(states::bell_phi_plus());
  const ObservableD s3(HermitianMatrix(oracle::pauli(3)));
  CHECK(optimal_as_given_bs(betas, s3, s3).value == doctest::Approx(2.0));
  const ObservableD b(HermitianMatrix((oracle::pauli(3) + oracle::pauli(1)) * Complex(1 / kSqrt2)));
  const ObservableD bp(HermitianMatrix((oracle::pauli(3) - oracle::pauli(1)) * Complex(1 / kSqrt2)));
  const auto r = optimal_as_given_bs(betas, b, bp);
  CHECK(r.value == doctest::Approx(2 * kSqrt2));
  CHECK(bell_value(betas, ChshObservables{r.a, r.a_prime, b, bp}) == doctest::Approx(r.value));
}

TEST_CASE("best A given B falls back to sigma3, sigma1 when both vectors vanish") {
  const auto betas = decompose(states::maximally_mixed(2));
  const ObservableD id(HermitianMatrix::identity(2));
  const auto r = optimal_as_given_bs(betas, id, id);
  CHECK(r.value == 0.0);
  CHECK(oracle::max_diff(r.a.matrix(), oracle::pauli(3)) < 1e-15);
  CHECK(oracle::max_diff(r.a_prime.matrix(), oracle::pauli(1)) < 1e-15);
}

TEST_CASE("see-saw reaches known optima") {
  SeesawConfig cfg;
  cfg.starts = 8;
  const auto bell = seesaw_max(states::bell_phi_plus(), cfg);
  CHECK(std::abs(bell.value - 2 * kSqrt2) < 1e-8);
  CHECK(bell.converged);
  CHECK(bell.starts == 8);
  const auto w = seesaw_max(states::werner(0.9), cfg);
  CHECK(std::abs(w.value - 2 * kSqrt2 * 0.9) < 1e-7);
  CHECK(std::abs(bell_value(states::werner(0.9), w.best_observables) - w.value) < 1e-10);
}

TEST_CASE("see-saw ascent is monotone and stops at a fixed point") {
  RngStream stream(52);
  oracle::Rng rng(52);
  SeesawConfig cfg;
  for (int t = 0; t < 20; ++t) {
    const auto s = random_bures_state(3 + static_cast<std::size_t>(t % 2), stream);
    const auto betas = decompose(s);
    const auto traj = seesaw_from(s, betas, Observable2::along(oracle::random_unit_vector(rng)),
                                  Observable2::along(oracle::random_unit_vector(rng)), cfg);
    for (std::size_t k = 1; k < traj.values.size(); ++k) CHECK(traj.values[k] >= traj.values[k - 1] - 1e-12);
    CHECK(traj.values.back() <= 2 * kSqrt2 + 1e-8);
    if (traj.converged) {
      const auto more = seesaw_from(s, betas, traj.observables.a, traj.observables.a_prime, cfg);
      CHECK(std::abs(more.values.front() - traj.values.back()) < 1e-10);
    }
  }
}

TEST_CASE("see-saw never beats the rotation search and matches it on random states") {
  RngStream stream(53);
  for (int t = 0; t < 30; ++t) {
    const auto s = random_bures_state(3, stream);
    const double best = max_chsh(s).value;
    SeesawConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(t);
    const double ss = seesaw_max(s, cfg).value;
    CHECK(ss <= best + 1e-6);
    CHECK(std::abs(ss - best) < 1e-4);
  }
}

TEST_CASE("see-saw is deterministic and needs a start") {
  RngStream stream(54);
  const auto s = random_bures_state(3, stream);
  SeesawConfig cfg;
  cfg.seed = 99;
  const auto a = seesaw_max(s, cfg);
  const auto b = seesaw_max(s, cfg);
  CHECK(a.value == b.value);
  CHECK(a.best_start == b.best_start);
  cfg.starts = 0;
  CHECK_THROWS(seesaw_max(s, cfg));
}
