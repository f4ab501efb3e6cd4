#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>

#include "marketnet/degree.hpp"
#include "marketnet/threshold.hpp"

namespace marketnet {

// Log-log ordinary least squares fit of y ~ x^(-exponent).
struct PowerLawFit {
  double exponent = 0.0;   // positive for decaying laws
  double std_error = 0.0;  // standard error of the log-log slope
  double r_squared = 0.0;
  int n_points = 0;
  double min_x = 0.0;
  double max_x = 0.0;
};

struct FitRange {
  double lo = 0.0;
  double hi = 0.0;
};

// Requires >= 3 strictly positive points after range filtering. A constant y
// is a perfect zero-slope fit: exponent 0, std_error 0, r_squared 1.
PowerLawFit fit_power_law(std::span<const std::pair<double, double>> points,
                          std::optional<FitRange> range = std::nullopt);

// Fit of (k, pmf(k)) excluding k = 0 and zero-probability degrees.
PowerLawFit fit_degree_exponent(const DegreeDistribution& dd,
                                std::optional<FitRange> range = std::nullopt);

// Geometric binning of a degree pmf for robustness checks. Bin edges grow by
// `ratio` starting at 1; every nonempty bin yields one point (geometric mean
// of the edges, probability mass averaged over the bin's integer degrees).
std::vector<std::pair<double, double>> log_binned_pmf(const DegreeDistribution& dd,
                                                      double ratio = 2.0);

// Fit of (theta, avg_clustering) over the sweep rows inside theta_range.
PowerLawFit fit_clustering_scaling(std::span<const SweepRow> sweep, FitRange theta_range);

// Renders "value(err)" with the uncertainty in units of the last digit,
// e.g. (1.98, 0.36) -> "1.98(36)" and (2.2, 0.9) -> "2.2(9)".
std::string format_exponent(const PowerLawFit& fit);

}  // namespace marketnet
