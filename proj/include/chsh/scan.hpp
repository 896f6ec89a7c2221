#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "chsh/config.hpp"
#include "chsh/euler_search.hpp"

namespace chsh {

struct SampleRecord {
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double purity = 0.0;
  double purity_threshold = 0.0;
  double certificate_error = 0.0;  // |bell_value(extracted observables) - value|
  bool violates = false;
};

struct Histogram {
  double low = 0.0;
  double high = 0.0;
  std::vector<std::size_t> counts;

  double bin_width() const { return (high - low) / static_cast<double>(counts.size()); }
};

/// Uniform bins over [low, high]; the right edge belongs to the last bin.
Histogram make_histogram(std::span<const double> values, double low, double high, std::size_t bins);

struct ScanStatistics {
  std::size_t d = 0;
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
  std::size_t violations = 0;
  double p_violation = 0.0;
  double mean = 0.0;
  double stddev = 0.0;  // population standard deviation
  Histogram histogram;
  double lower_rel_error_mean = 0.0;  // (B - lower) / B
  double lower_rel_error_max = 0.0;
  double max_certificate_error = 0.0;
  /// Violating samples whose purity does not exceed the purity threshold.
  std::size_t purity_condition_failures = 0;
};

inline constexpr std::size_t kHistogramBins = 60;

/// Sample i is a Bures state of dimension 2d drawn from RngStream(seed).substream(i).
/// Each state is optimized serially; `outer` controls parallelism over samples.
std::vector<SampleRecord> scan_samples(std::size_t d, std::size_t n, std::uint64_t seed,
                                       Execution outer = Execution::parallel,
                                       OptimizerConfig per_state = {});

ScanStatistics summarize(std::size_t d, std::uint64_t seed, std::span<const SampleRecord> samples);

ScanStatistics nonlocality_scan(std::size_t d, std::size_t n, std::uint64_t seed,
                                Execution outer = Execution::parallel);

}  // namespace chsh
