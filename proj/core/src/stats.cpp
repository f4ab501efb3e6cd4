#include "marketnet/stats.hpp"

#include <cmath>

#include "marketnet/error.hpp"

namespace marketnet {

DistStats dist_stats(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) {
    throw Error(errc::too_few_samples, "need at least 2 values, got " + std::to_string(n));
  }
  DistStats stats;
  stats.n = n;
  double sum = 0.0;
  for (double v : values) sum += v;
  stats.mean = sum / static_cast<double>(n);

  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : values) {
    double d = v - stats.mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  stats.std_dev = std::sqrt(m2 / static_cast<double>(n - 1));
  double pop_var = m2 / static_cast<double>(n);
  if (pop_var > 0.0) {
    double pop_std = std::sqrt(pop_var);
    stats.skewness = (m3 / static_cast<double>(n)) / (pop_std * pop_std * pop_std);
    stats.kurtosis = (m4 / static_cast<double>(n)) / (pop_var * pop_var);
  }
  return stats;
}

VolatilityReport mean_volatility(const ReturnPanel& returns) {
  const std::size_t n = returns.cols();
  if (n < 2) {
    throw Error(errc::too_few_samples, "cross-sectional volatility needs at least 2 tickers");
  }
  VolatilityReport report;
  report.per_day.reserve(returns.rows());
  double total = 0.0;
  for (std::size_t t = 0; t < returns.rows(); ++t) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += returns.raw_at(t, i);
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double d = returns.raw_at(t, i) - mean;
      ss += d * d;
    }
    double vol = std::sqrt(ss / static_cast<double>(n - 1));
    report.per_day.push_back(vol);
    total += vol;
  }
  report.mean_volatility = total / static_cast<double>(returns.rows());
  return report;
}

}  // namespace marketnet
