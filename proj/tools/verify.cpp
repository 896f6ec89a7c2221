#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>

#include "chsh/case_study.hpp"
#include "chsh/observables.hpp"
#include "chsh/optimizer.hpp"
#include "chsh/random.hpp"
#include "chsh/seesaw.hpp"

namespace chsh::cli {

namespace {

struct Battery {
  explicit Battery(std::string n) : name(std::move(n)) {}

  std::string name;
  std::size_t checked = 0;
  std::size_t failures = 0;
  double worst = 0.0;
  std::string note;

  void record(double err, double tol) {
    ++checked;
    worst = std::max(worst, err);
    if (!(err < tol)) ++failures;
  }
};

void print(std::ostream& out, const Battery& b) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s %-10s checked=%zu failures=%zu worst=%.3e", b.failures == 0 ? "PASS" : "FAIL",
                b.name.c_str(), b.checked, b.failures, b.worst);
  out << buf;
  if (!b.note.empty()) out << ' ' << b.note;
  out << '\n';
}

Vec3 normal_vec(RngStream& rng) {
  const auto [x, y] = rng.normal_pair();
  return {x, y, rng.normal()};
}

// Stream index ranges keep the batteries independent of each other.
RngStream stream(std::uint64_t seed, std::uint64_t battery, std::size_t trial) {
  return RngStream(seed).substream((battery << 32) + trial);
}

}  // namespace

bool run_verify(std::size_t trials, std::uint64_t seed, std::ostream& out) {
  bool ok = true;
  Battery certificate("certificate");

  // d = 2: the rotation search must agree with the closed form whenever a
  // violation is possible, and never fall below it.
  Battery horodecki("horodecki");
  std::size_t below_two = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    RngStream rng = stream(seed, 1, t);
    const auto state = random_bures_state(2, rng);
    const auto betas = decompose(state);
    const ChshResult r = max_chsh(betas);
    const double h = horodecki_qubit_qubit(betas);
    certificate.record(std::abs(bell_value(state, r.observables) - r.value), 1e-8);
    if (r.value > 2.0 || h > 2.0) {
      horodecki.record(std::abs(r.value - h), 1e-6);
    } else {
      ++below_two;
      horodecki.record(std::max(0.0, h - r.value), 1e-6);
    }
  }
  horodecki.note = "non_violating=" + std::to_string(below_two);
  print(out, horodecki);
  ok &= horodecki.failures == 0;

  Battery seesaw("seesaw");
  for (std::size_t t = 0; t < trials; ++t) {
    RngStream rng = stream(seed, 2, t);
    const std::size_t d = 2 + t % 3;
    const auto state = random_bures_state(d, rng);
    const ChshResult r = max_chsh(state);
    SeesawConfig cfg;
    cfg.seed = seed + t;
    const SeesawReport s = seesaw_max(state, cfg);
    seesaw.record(std::abs(s.value - r.value), 1e-4);
    certificate.record(std::abs(bell_value(state, r.observables) - r.value), 1e-8);
  }
  print(out, seesaw);
  ok &= seesaw.failures == 0;

  Battery bounds("bounds");
  for (std::size_t t = 0; t < trials; ++t) {
    RngStream rng = stream(seed, 3, t);
    const std::size_t d = 2 + t % 5;
    const auto state = random_bures_state(d, rng);
    const ChshResult r = max_chsh(state);
    bounds.record(std::max({0.0, r.lower - r.value, r.value - r.upper}), 1e-8);
  }
  print(out, bounds);
  ok &= bounds.failures == 0;

  Battery embedding("embedding");
  for (std::size_t t = 0; t < trials; ++t) {
    RngStream rng = stream(seed, 4, t);
    const auto betas = decompose(random_bures_state(2, rng));
    const double base = max_chsh(betas).value;
    for (std::size_t d2 : {3u, 4u}) embedding.record(std::abs(max_chsh(embed(betas, d2)).value - base), 1e-6);
  }
  print(out, embedding);
  ok &= embedding.failures == 0;

  Battery lemma("lemma");
  for (std::size_t t = 0; t < trials; ++t) {
    RngStream rng = stream(seed, 5, t);
    const Vec3 v = normal_vec(rng);
    const Vec3 w = normal_vec(rng);
    const LemmaCheck c = lemma_rotation_identity(v, w);
    lemma.record(std::abs(c.lhs - c.rhs), 1e-6);
  }
  print(out, lemma);
  ok &= lemma.failures == 0;

  print(out, certificate);
  ok &= certificate.failures == 0;
  return ok;
}

}  // namespace chsh::cli
