#include "doctest.h"

#include <cmath>
#include <numbers>

#include "chsh/case_study.hpp"
#include "chsh/errors.hpp"
#include "chsh/optimizer.hpp"
#include "chsh/random.hpp"
#include "oracles.hpp"

using namespace chsh;

namespace {

// x|psi1><psi1| + y|psi2><psi2| + z|psi3><psi3| built from the state vectors.
ComplexMatrix family_from_vectors(double x, double y) {
  const double z = 1.0 - x - y;
  const double h = 1.0 / std::numbers::sqrt2;
  auto ket = [&](std::size_t i, std::size_t j) {
    std::vector<Complex> v(6);
    v[i] = h;
    v[j] = h;
    return v;
  };
  // |a b> -> 3a + b
  const std::vector<std::vector<Complex>> psi{ket(0, 4), ket(1, 5), ket(2, 3)};
  const double w[3] = {x, y, z};
  ComplexMatrix rho(6, 6);
  for (int k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j) rho(i, j) += w[k] * psi[k][i] * std::conj(psi[k][j]);
  return rho;
}

}  // namespace

TEST_CASE("family points must lie in the simplex") {
  CHECK_NOTHROW(FamilyPoint(0.0, 0.0));
  CHECK_NOTHROW(FamilyPoint(0.3, 0.7));
  CHECK_THROWS_AS(FamilyPoint(-0.1, 0.5), ValidationError);
  CHECK_THROWS_AS(FamilyPoint(0.6, 0.6), ValidationError);
  CHECK_THROWS_AS(FamilyPoint(std::nan(""), 0.1), ValidationError);
  CHECK(FamilyPoint(0.3, 0.7).z() == 0.0);
}

TEST_CASE("family state matches its definition") {
  for (auto [x, y] : {std::pair{1.0, 0.0}, std::pair{0.2, 0.3}, std::pair{1.0 / 3, 1.0 / 3}, std::pair{0.0, 1.0}}) {
    const auto s = qutrit_family_state(FamilyPoint(x, y));
    CHECK(oracle::max_diff(s.rho(), family_from_vectors(x, y)) < 1e-12);
    CHECK(std::abs(s.rho().trace() - 1.0) < 1e-12);
  }
  const auto third = qutrit_family_state(FamilyPoint(1.0 / 3, 1.0 / 3));
  CHECK(purity(third) == doctest::Approx(1.0 / 3));
  int rank = 0;
  for (double v : eigh(third.rho()).values) rank += v > 1e-12;
  CHECK(rank == 3);
}

TEST_CASE("closed-form betas") {
  const auto b = qutrit_family_betas(FamilyPoint(1.0, 0.0));
  CHECK(oracle::max_diff(b.beta(3), ComplexMatrix{{0.5, 0, 0}, {0, -0.5, 0}, {0, 0, 0}}) < 1e-15);
  const auto c = qutrit_family_betas(FamilyPoint(1.0 / 3, 1.0 / 3));
  CHECK(oracle::max_diff(c.beta(3), ComplexMatrix(3, 3)) < 1e-15);
  const int res = 41;
  for (int i = 0; i < res; ++i)
    for (int j = 0; i + j < res; ++j) {
      const FamilyPoint p(static_cast<double>(i) / (res - 1), static_cast<double>(j) / (res - 1));
      const auto closed = qutrit_family_betas(p);
      const auto direct = qutrit_family_state(p);
      for (int k = 0; k <= 3; ++k) CHECK(oracle::max_diff(closed.beta(k), oracle::beta(direct.rho(), 3, k)) < 1e-12);
    }
}

TEST_CASE("logarithmic negativity") {
  CHECK(log_negativity(states::bell_phi_plus()) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(log_negativity(qutrit_family_state(FamilyPoint(1.0 / 3, 1.0 / 3))) < 1e-12);
  CHECK(log_negativity(states::maximally_mixed(4)) < 1e-12);
  oracle::Rng rng(61);
  for (int t = 0; t < 20; ++t) {
    const auto prod = oracle::naive_kron(oracle::random_density(2, rng), oracle::random_density(3, rng));
    CHECK(log_negativity(QubitQuditState(prod, 3)) < 1e-12);
  }
  CHECK(log_negativity(states::werner(0.3)) < 1e-12);
  CHECK(log_negativity(states::werner(0.5)) > 0.1);
}

TEST_CASE("negativity is positive on the simplex except at the centre") {
  const int res = 101;
  for (int i = 0; i < res; ++i)
    for (int j = 0; i + j < res; ++j) {
      const FamilyPoint p(static_cast<double>(i) / (res - 1), static_cast<double>(j) / (res - 1));
      CHECK(log_negativity(qutrit_family_state(p)) > 1e-9);
    }
}

TEST_CASE("embedding preserves trace norms and the CHSH value") {
  const auto bell = decompose(states::bell_phi_plus());
  const auto e = embed(bell, 3);
  CHECK(e.d() == 3);
  for (int k = 1; k <= 3; ++k) CHECK(trace_norm(e.beta(k)) == trace_norm(bell.beta(k)));
  CHECK(std::abs(max_chsh(e).value - 2 * std::numbers::sqrt2) < 1e-6);
  CHECK_NOTHROW(reconstruct(e));
  CHECK_THROWS_AS(embed(bell, 2), ValidationError);

  RngStream stream(62);
  for (int t = 0; t < 10; ++t) {
    const auto b = decompose(random_bures_state(2, stream));
    CHECK(std::abs(max_chsh(embed(b, 4)).value - max_chsh(b).value) < 1e-6);
  }
}

TEST_CASE("grid scan rows") {
  const auto rows = grid_scan(11);
  CHECK(rows.size() == 66);
  CHECK(rows.front().x == 0.0);
  CHECK(rows.front().y == 0.0);
  CHECK(rows[1].y == doctest::Approx(0.1));
  bool entangled_not_violating = false;
  for (const auto& r : rows) {
    CHECK(r.entangled == (r.E > 1e-9));
    CHECK(r.violates == (r.B > 2.0 + 1e-12));
    CHECK(r.excluded_by_upper == (r.upper <= 2.0));
    if (r.excluded_by_upper) CHECK_FALSE(r.violates);
    CHECK(r.lower <= r.B + 1e-8);
    entangled_not_violating |= r.entangled && !r.violates;
    const FamilyPoint p(r.x, r.y);
    CHECK(std::abs(max_chsh(qutrit_family_state(p)).value - r.B) < 1e-6);
  }
  CHECK(entangled_not_violating);
  CHECK_THROWS_AS(grid_scan(1), ValidationError);
}

TEST_CASE("grid on a resolution containing the centre") {
  const auto rows = grid_scan(4);
  int separable = 0;
  for (const auto& r : rows) {
    if (!r.entangled) {
      ++separable;
      CHECK(r.x == doctest::Approx(1.0 / 3));
      CHECK(r.y == doctest::Approx(1.0 / 3));
    }
  }
  CHECK(separable == 1);
}

TEST_CASE("grid CSV format") {
  const auto csv = grid_to_csv(grid_scan(2));
  CHECK(csv.rfind("x,y,E,B,lower,upper,entangled,violates,excluded_by_upper\n", 0) == 0);
  CHECK(csv.find("\n0,0,1,2.82842712475,") != std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}
