#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>

namespace homophyly {

/// value -> number of observations
using Histogram = std::map<std::uint64_t, std::uint64_t>;

struct PowerLawFit {
  double exponent = 0.0;
  std::uint64_t x_min = 1;
  double ks_distance = 1.0;  ///< goodness: KS distance between tail and fitted law
  std::uint64_t tail_size = 0;
};

struct PowerLawOptions {
  /// An x_min candidate needs at least this many distinct values at or above it.
  std::size_t min_distinct_tail = 10;
  /// Candidates whose exponent standard error (alpha - 1) / sqrt(tail) exceeds
  /// this are skipped, so a handful of extreme values cannot win the KS
  /// search. Non-positive disables the guard.
  double max_standard_error = 0.1;
  double min_exponent = 1.0001;
  double max_exponent = 10.0;
};

/// Discrete power-law fit p(x) = x^-alpha / zeta(alpha, x_min) for x >= x_min.
/// For every admissible x_min the exponent is the maximum-likelihood estimate;
/// the x_min whose fitted law has the smallest KS distance to the empirical
/// tail wins (lowest x_min on ties). Zero values are ignored. Throws
/// MetricError when no x_min candidate has enough distinct values.
PowerLawFit fit_power_law(const Histogram& hist, const PowerLawOptions& options = {});

Histogram to_histogram(std::span<const std::uint64_t> samples);

/// Maximum-likelihood exponent for a fixed x_min.
double power_law_mle(const Histogram& hist, std::uint64_t x_min, const PowerLawOptions& options = {});

/// KS distance between the empirical tail (x >= x_min) and the discrete law.
double power_law_ks(const Histogram& hist, std::uint64_t x_min, double exponent);

}  // namespace homophyly
