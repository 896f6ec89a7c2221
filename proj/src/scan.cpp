#include "chsh/scan.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "chsh/errors.hpp"
#include "chsh/observables.hpp"
#include "chsh/optimizer.hpp"
#include "chsh/random.hpp"

namespace chsh {

Histogram make_histogram(std::span<const double> values, double low, double high, std::size_t bins) {
  if (bins == 0 || !(high > low)) throw ValidationError(Invariant::domain, "histogram needs bins > 0 and high > low");
  Histogram h{low, high, std::vector<std::size_t>(bins, 0)};
  const double width = h.bin_width();
  for (double v : values) {
    auto k = static_cast<std::ptrdiff_t>(std::floor((v - low) / width));
    k = std::clamp<std::ptrdiff_t>(k, 0, static_cast<std::ptrdiff_t>(bins) - 1);
    ++h.counts[static_cast<std::size_t>(k)];
  }
  return h;
}

namespace {

SampleRecord analyze_sample(std::size_t d, RngStream rng, const OptimizerConfig& cfg) {
  const QubitQuditState state = random_bures_state(d, rng);
  const BetaDecomposition betas = decompose(state);
  const ChshResult r = max_chsh(betas, cfg);
  const PurityBound pb = purity_violation_bound(state);
  return {.value = r.value,
          .lower = r.lower,
          .upper = r.upper,
          .purity = pb.purity,
          .purity_threshold = pb.threshold,
          .certificate_error = std::abs(bell_value(state, r.observables) - r.value),
          .violates = r.violates};
}

}  // namespace

std::vector<SampleRecord> scan_samples(std::size_t d, std::size_t n, std::uint64_t seed,
                                       Execution outer, OptimizerConfig per_state) {
  if (d < 2) throw ValidationError(Invariant::dimension, "scan needs d >= 2");
  per_state.execution = Execution::serial;
  const RngStream root(seed);
  std::vector<SampleRecord> out(n);
  const bool parallel = outer == Execution::parallel;
#pragma omp parallel for schedule(dynamic, 4) if (parallel)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
    out[static_cast<std::size_t>(i)] = analyze_sample(d, root.substream(static_cast<std::uint64_t>(i)), per_state);
  return out;
}

ScanStatistics summarize(std::size_t d, std::uint64_t seed, std::span<const SampleRecord> samples) {
  ScanStatistics s;
  s.d = d;
  s.seed = seed;
  s.n_samples = samples.size();
  std::vector<double> values;
  values.reserve(samples.size());
  double sum = 0.0, rel_sum = 0.0;
  for (const auto& r : samples) {
    values.push_back(r.value);
    sum += r.value;
    if (r.violates) {
      ++s.violations;
      if (!(r.purity > r.purity_threshold)) ++s.purity_condition_failures;
    }
    const double rel = r.value > 0.0 ? (r.value - r.lower) / r.value : 0.0;
    rel_sum += rel;
    s.lower_rel_error_max = std::max(s.lower_rel_error_max, rel);
    s.max_certificate_error = std::max(s.max_certificate_error, r.certificate_error);
  }
  const double n = static_cast<double>(samples.size());
  if (!samples.empty()) {
    s.p_violation = static_cast<double>(s.violations) / n;
    s.mean = sum / n;
    s.lower_rel_error_mean = rel_sum / n;
    double sq = 0.0;
    for (double v : values) sq += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(sq / n);
  }
  s.histogram = make_histogram(values, 0.0, 2.0 * std::numbers::sqrt2, kHistogramBins);
  return s;
}

ScanStatistics nonlocality_scan(std::size_t d, std::size_t n, std::uint64_t seed, Execution outer) {
  if (n == 0) throw ValidationError(Invariant::domain, "scan needs at least one sample");
  const auto samples = scan_samples(d, n, seed, outer);
  return summarize(d, seed, samples);
}

}  // namespace chsh
