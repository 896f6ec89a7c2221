#pragma once

// Global maximization of a function of a rotation: a uniform Euler-angle grid
// followed by Nelder-Mead refinement of the best grid points. Grid evaluation
// and refinements run under OpenMP in Execution::parallel mode; every value is
// computed independently and reduced serially, so both modes agree bit for bit.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <numeric>
#include <span>
#include <vector>

#include "chsh/config.hpp"
#include "chsh/rotation.hpp"

namespace chsh {

struct OptimizerConfig {
  int grid_alpha = 30;
  int grid_beta = 30;
  int grid_gamma = 30;
  int refine_starts = 10;
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
  double simplex_tolerance = 1e-9;  // simplex diameter, radians
  int max_iterations = 500;
  Execution execution = Execution::parallel;
};

struct SimplexResult {
  Vec3 point{};
  double value = 0.0;
  int iterations = 0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Derivative-free maximization of f(Vec3) from x0 with an axis-aligned
/// initial simplex of the given step sizes.
template <class F>
SimplexResult nelder_mead_maximize(F& f, const Vec3& x0, const Vec3& step,
                                   const OptimizerConfig& cfg) {
  struct Vertex {
    Vec3 x;
    double v;
  };
  SimplexResult out;
  auto eval = [&](const Vec3& x) {
    ++out.evaluations;
    return f(x);
  };
  std::array<Vertex, 4> s;
  s[0] = {x0, eval(x0)};
  for (int i = 0; i < 3; ++i) {
    Vec3 x = x0;
    x[i] += step[i];
    s[i + 1] = {x, eval(x)};
  }
  auto diameter = [&] {
    double worst = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        double d2 = 0.0;
        for (int k = 0; k < 3; ++k) d2 += (s[i].x[k] - s[j].x[k]) * (s[i].x[k] - s[j].x[k]);
        worst = std::max(worst, d2);
      }
    return std::sqrt(worst);
  };
  auto along = [](const Vec3& from, const Vec3& to, double t) {
    Vec3 r;
    for (int k = 0; k < 3; ++k) r[k] = from[k] + t * (to[k] - from[k]);
    return r;
  };

  for (; out.iterations < cfg.max_iterations; ++out.iterations) {
    // best first; stable so ties keep insertion order
    std::stable_sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.v > b.v; });
    if (diameter() < cfg.simplex_tolerance) {
      out.converged = true;
      break;
    }
    Vec3 centroid{};
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k) centroid[k] += s[i].x[k] / 3.0;

    const Vec3 xr = along(centroid, s[3].x, -cfg.reflection);
    const double vr = eval(xr);
    if (vr > s[0].v) {
      const Vec3 xe = along(centroid, xr, cfg.expansion);
      const double ve = eval(xe);
      s[3] = ve > vr ? Vertex{xe, ve} : Vertex{xr, vr};
      continue;
    }
    if (vr > s[2].v) {
      s[3] = {xr, vr};
      continue;
    }
    if (vr > s[3].v) {
      const Vec3 xc = along(centroid, xr, cfg.contraction);
      const double vc = eval(xc);
      if (vc >= vr) {
        s[3] = {xc, vc};
        continue;
      }
    } else {
      const Vec3 xc = along(centroid, s[3].x, cfg.contraction);
      const double vc = eval(xc);
      if (vc > s[3].v) {
        s[3] = {xc, vc};
        continue;
      }
    }
    for (int i = 1; i < 4; ++i) {
      s[i].x = along(s[0].x, s[i].x, cfg.shrink);
      s[i].v = eval(s[i].x);
    }
  }
  std::stable_sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.v > b.v; });
  out.point = s[0].x;
  out.value = s[0].v;
  return out;
}

struct EulerSearchResult {
  RotationSO3 rotation;
  double value = 0.0;
  double best_grid_value = 0.0;
  std::size_t evaluations = 0;
};

/// Euler angles of grid point `index` (alpha outermost, gamma innermost).
inline RotationSO3 euler_grid_point(const OptimizerConfig& cfg, std::size_t index) {
  const auto nb = static_cast<std::size_t>(cfg.grid_beta);
  const auto nc = static_cast<std::size_t>(cfg.grid_gamma);
  const std::size_t i = index / (nb * nc);
  const std::size_t j = (index / nc) % nb;
  const std::size_t k = index % nc;
  constexpr double pi = std::numbers::pi;
  return {2.0 * pi * static_cast<double>(i) / cfg.grid_alpha,
          nb > 1 ? pi * static_cast<double>(j) / static_cast<double>(nb - 1) : 0.0,
          2.0 * pi * static_cast<double>(k) / cfg.grid_gamma};
}

/// Maximizes `prototype(RotationSO3)` over SO(3). The objective is copied once
/// per thread, so it may carry mutable scratch space. When
/// `half_turn_symmetric` is set, the objective must satisfy
/// f(alpha + pi, beta, gamma) = f(alpha, beta, gamma) and the second half of
/// the alpha grid is filled by symmetry. `extra_starts` are refined in
/// addition to the best grid points.
template <class Objective>
EulerSearchResult maximize_over_rotations(const Objective& prototype, const OptimizerConfig& cfg,
                                          std::span<const RotationSO3> extra_starts = {},
                                          bool half_turn_symmetric = false) {
  const auto na = static_cast<std::size_t>(std::max(cfg.grid_alpha, 1));
  const auto nb = static_cast<std::size_t>(std::max(cfg.grid_beta, 1));
  const auto nc = static_cast<std::size_t>(std::max(cfg.grid_gamma, 1));
  const std::size_t plane = nb * nc;
  const std::size_t total = na * plane;
  const bool mirror = half_turn_symmetric && na % 2 == 0;
  const std::size_t computed = mirror ? total / 2 : total;
  const bool parallel = cfg.execution == Execution::parallel;

  std::vector<double> values(total);
#pragma omp parallel if (parallel)
  {
    Objective f = prototype;
#pragma omp for schedule(static)
    for (std::ptrdiff_t idx = 0; idx < static_cast<std::ptrdiff_t>(computed); ++idx)
      values[static_cast<std::size_t>(idx)] = f(euler_grid_point(cfg, static_cast<std::size_t>(idx)));
  }
  if (mirror) std::copy_n(values.begin(), computed, values.begin() + static_cast<std::ptrdiff_t>(computed));

  std::vector<std::size_t> order(total);
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::size_t keep = std::min(total, static_cast<std::size_t>(std::max(cfg.refine_starts, 0)));
  auto better = [&](std::size_t a, std::size_t b) {
    return values[a] > values[b] || (values[a] == values[b] && a < b);
  };
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(std::max<std::size_t>(keep, 1)),
                    order.end(), better);

  std::vector<RotationSO3> starts;
  starts.reserve(keep + extra_starts.size());
  for (std::size_t s = 0; s < keep; ++s) starts.push_back(euler_grid_point(cfg, order[s]));
  starts.insert(starts.end(), extra_starts.begin(), extra_starts.end());

  constexpr double pi = std::numbers::pi;
  const Vec3 step{pi / static_cast<double>(na), nb > 1 ? 0.5 * pi / static_cast<double>(nb - 1) : 0.1,
                  pi / static_cast<double>(nc)};

  std::vector<SimplexResult> refined(starts.size());
#pragma omp parallel if (parallel)
  {
    Objective f = prototype;
    auto as_vec = [&f](const Vec3& x) { return f(RotationSO3{x[0], x[1], x[2]}); };
#pragma omp for schedule(dynamic, 1)
    for (std::ptrdiff_t s = 0; s < static_cast<std::ptrdiff_t>(starts.size()); ++s) {
      const auto& r = starts[static_cast<std::size_t>(s)];
      refined[static_cast<std::size_t>(s)] = nelder_mead_maximize(as_vec, Vec3{r.alpha, r.beta, r.gamma}, step, cfg);
    }
  }

  EulerSearchResult out;
  out.evaluations = computed;
  out.best_grid_value = values[order[0]];
  out.rotation = euler_grid_point(cfg, order[0]);
  out.value = out.best_grid_value;
  for (const auto& r : refined) {
    out.evaluations += r.evaluations;
    if (r.value > out.value) {
      out.value = r.value;
      out.rotation = {r.point[0], r.point[1], r.point[2]};
    }
  }
  return out;
}

}  // namespace chsh
