#include "homophyly/powerlaw.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_zeta.h>

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "homophyly/error.hpp"

namespace homophyly {

namespace {

double hurwitz_zeta(double s, double q) {
  static const bool handler_off = [] {
    gsl_set_error_handler_off();
    return true;
  }();
  (void)handler_off;
  gsl_sf_result result;
  if (gsl_sf_hzeta_e(s, q, &result) != GSL_SUCCESS) {
    throw MetricError("Hurwitz zeta failed at s=" + std::to_string(s) + ", q=" + std::to_string(q));
  }
  return result.val;
}

struct Tail {
  std::uint64_t count = 0;
  double log_sum = 0.0;
};

Tail tail_of(const Histogram& hist, std::uint64_t x_min) {
  Tail t;
  for (auto it = hist.lower_bound(x_min); it != hist.end(); ++it) {
    t.count += it->second;
    t.log_sum += static_cast<double>(it->second) * std::log(static_cast<double>(it->first));
  }
  return t;
}

}  // namespace

Histogram to_histogram(std::span<const std::uint64_t> samples) {
  Histogram h;
  for (auto x : samples) ++h[x];
  return h;
}

double power_law_mle(const Histogram& hist, std::uint64_t x_min, const PowerLawOptions& options) {
  if (x_min < 1) throw MetricError("x_min must be at least 1");
  const Tail t = tail_of(hist, x_min);
  if (t.count == 0) throw MetricError("empty tail above x_min");
  const double n = static_cast<double>(t.count);
  const double q = static_cast<double>(x_min);
  // Negative log-likelihood per observation.
  auto nll = [&](double alpha) { return std::log(hurwitz_zeta(alpha, q)) + alpha * t.log_sum / n; };
  const auto [alpha, value] = boost::math::tools::brent_find_minima(
      nll, options.min_exponent, options.max_exponent, std::numeric_limits<double>::digits / 2);
  (void)value;
  return alpha;
}

double power_law_ks(const Histogram& hist, std::uint64_t x_min, double exponent) {
  const Tail t = tail_of(hist, x_min);
  if (t.count == 0) throw MetricError("empty tail above x_min");
  const double n = static_cast<double>(t.count);
  const double norm = hurwitz_zeta(exponent, static_cast<double>(x_min));
  auto model_cdf = [&](std::uint64_t x) {
    return 1.0 - hurwitz_zeta(exponent, static_cast<double>(x + 1)) / norm;
  };

  // Both CDFs are step functions on the integers. Between consecutive
  // observed values the empirical CDF is flat while the model CDF rises, so
  // the gap peaks at an observed value or just before the next one.
  double ks = 0.0;
  std::uint64_t seen = 0;
  auto it = hist.lower_bound(x_min);
  if (it != hist.end() && it->first > x_min) ks = std::max(ks, model_cdf(it->first - 1));
  for (; it != hist.end(); ++it) {
    seen += it->second;
    const double emp = static_cast<double>(seen) / n;
    ks = std::max(ks, std::abs(emp - model_cdf(it->first)));
    const auto next = std::next(it);
    if (next != hist.end() && next->first > it->first + 1) {
      ks = std::max(ks, std::abs(emp - model_cdf(next->first - 1)));
    }
  }
  return ks;
}

PowerLawFit fit_power_law(const Histogram& hist, const PowerLawOptions& options) {
  std::vector<std::uint64_t> values;
  for (const auto& [x, c] : hist) {
    if (x >= 1 && c > 0) values.push_back(x);
  }
  if (values.size() < options.min_distinct_tail) {
    throw MetricError("power-law fit needs at least " + std::to_string(options.min_distinct_tail) +
                      " distinct positive values, got " + std::to_string(values.size()));
  }
  Histogram positive;
  for (const auto& [x, c] : hist) {
    if (x >= 1 && c > 0) positive.emplace(x, c);
  }

  PowerLawFit best;
  bool have = false;
  const std::size_t last = values.size() - options.min_distinct_tail;
  for (std::size_t k = 0; k <= last; ++k) {
    const std::uint64_t x_min = values[k];
    const double alpha = power_law_mle(positive, x_min, options);
    const auto tail = tail_of(positive, x_min).count;
    if (options.max_standard_error > 0.0 && k > 0 &&
        (alpha - 1.0) / std::sqrt(static_cast<double>(tail)) > options.max_standard_error) {
      continue;
    }
    const double ks = power_law_ks(positive, x_min, alpha);
    if (!have || ks < best.ks_distance) {
      best = {alpha, x_min, ks, tail};
      have = true;
    }
  }
  return best;
}

}  // namespace homophyly
