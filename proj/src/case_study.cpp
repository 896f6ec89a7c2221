#include "chsh/case_study.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "chsh/errors.hpp"
#include "chsh/optimizer.hpp"

namespace chsh {

namespace {

constexpr double kSimplexSlack = 1e-12;

}  // namespace

FamilyPoint::FamilyPoint(double x, double y) : x_(x), y_(y), z_(0.0) {
  if (!std::isfinite(x) || !std::isfinite(y) || x < 0.0 || y < 0.0 || x + y > 1.0 + kSimplexSlack) {
    std::ostringstream os;
    os << "point (" << shortest(x) << ", " << shortest(y) << ") is outside the simplex x, y >= 0, x + y <= 1";
    throw ValidationError(Invariant::domain, os.str());
  }
  z_ = std::max(0.0, 1.0 - x - y);
}

QubitQuditState qutrit_family_state(const FamilyPoint& p) {
  const double x = 0.5 * p.x(), y = 0.5 * p.y(), z = 0.5 * p.z();
  const ComplexMatrix rho{
      {x, 0, 0, 0, x, 0},
      {0, y, 0, 0, 0, y},
      {0, 0, z, z, 0, 0},
      {0, 0, z, z, 0, 0},
      {x, 0, 0, 0, x, 0},
      {0, y, 0, 0, 0, y},
  };
  return QubitQuditState(rho, 3);
}

BetaDecomposition qutrit_family_betas(const FamilyPoint& p) {
  const double x = p.x(), y = p.y(), z = p.z();
  const Complex i{0.0, 1.0};
  const HermitianMatrix b0 = 0.5 * HermitianMatrix(ComplexMatrix{
                                       {1 - y, 0, 0},
                                       {0, x + y, 0},
                                       {0, 0, 1 - x},
                                   });
  const HermitianMatrix b1 = 0.5 * HermitianMatrix(ComplexMatrix{
                                       {0, x, z},
                                       {x, 0, y},
                                       {z, y, 0},
                                   });
  const HermitianMatrix b2 = 0.5 * HermitianMatrix(ComplexMatrix{
                                       {0, i * x, -i * z},
                                       {-i * x, 0, i * y},
                                       {i * z, -i * y, 0},
                                   });
  const HermitianMatrix b3 = 0.5 * HermitianMatrix(ComplexMatrix{
                                       {x - z, 0, 0},
                                       {0, y - x, 0},
                                       {0, 0, z - y},
                                   });
  return BetaDecomposition(b0, b1, b2, b3);
}

double log_negativity(const QubitQuditState& state) {
  const auto pt = HermitianMatrix::symmetrized(partial_transpose_second(state.rho().matrix(), state.d()));
  return std::max(0.0, std::log2(trace_norm(pt)));
}

BetaDecomposition embed(const BetaDecomposition& betas, std::size_t d2) {
  const std::size_t d = betas.d();
  if (d2 <= d) {
    std::ostringstream os;
    os << "embedding dimension " << d2 << " must exceed d = " << d;
    throw ValidationError(Invariant::domain, os.str());
  }
  std::array<HermitianMatrix, 4> padded;
  for (int a = 0; a < 4; ++a) {
    ComplexMatrix m(d2, d2);
    const auto& src = betas.beta(a).matrix();
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) m(j, k) = src(j, k);
    padded[static_cast<std::size_t>(a)] = HermitianMatrix(m);
  }
  return BetaDecomposition(padded[0], padded[1], padded[2], padded[3]);
}

std::vector<GridRow> grid_scan(int resolution, Execution exec, OptimizerConfig per_point) {
  if (resolution < 2) throw ValidationError(Invariant::domain, "grid resolution must be at least 2");
  per_point.execution = Execution::serial;
  const int last = resolution - 1;
  std::vector<std::pair<int, int>> points;
  for (int i = 0; i <= last; ++i)
    for (int j = 0; i + j <= last; ++j) points.emplace_back(i, j);

  std::vector<GridRow> rows(points.size());
  const bool parallel = exec == Execution::parallel;
#pragma omp parallel for schedule(dynamic, 8) if (parallel)
  for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(points.size()); ++k) {
    const auto [i, j] = points[static_cast<std::size_t>(k)];
    const FamilyPoint p(static_cast<double>(i) / last, static_cast<double>(j) / last);
    const ChshResult r = max_chsh(qutrit_family_betas(p), per_point);
    GridRow& row = rows[static_cast<std::size_t>(k)];
    row.x = p.x();
    row.y = p.y();
    row.E = log_negativity(qutrit_family_state(p));
    row.B = r.value;
    row.lower = r.lower;
    row.upper = r.upper;
    row.entangled = row.E > kTolerances.entanglement;
    row.violates = r.violates;
    row.excluded_by_upper = r.upper <= 2.0;
  }
  return rows;
}

std::string grid_to_csv(const std::vector<GridRow>& rows) {
  std::string out = kGridCsvHeader;
  out += '\n';
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%d,%d,%d\n", r.x, r.y, r.E, r.B,
                  r.lower, r.upper, r.entangled ? 1 : 0, r.violates ? 1 : 0, r.excluded_by_upper ? 1 : 0);
    out += buf;
  }
  return out;
}

}  // namespace chsh
