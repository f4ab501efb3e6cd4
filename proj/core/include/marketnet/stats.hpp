#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "marketnet/panel.hpp"

namespace marketnet {

// Moment summary of a sample. std_dev uses the sample (n-1) denominator.
// Skewness and kurtosis are standardized central moments computed with the
// population std; kurtosis is raw (non-excess), so a Gaussian gives 3.
// For a constant sample both are reported as 0.
struct DistStats {
  double mean = 0.0;
  double std_dev = 0.0;
  double skewness = 0.0;
  double kurtosis = 0.0;
  std::size_t n = 0;
};

DistStats dist_stats(std::span<const double> values);

// Per-day cross-sectional sample std of raw returns, and its time average.
struct VolatilityReport {
  std::vector<double> per_day;
  double mean_volatility = 0.0;
};

VolatilityReport mean_volatility(const ReturnPanel& returns);

}  // namespace marketnet
