#include "marketnet/powerlaw.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "marketnet/error.hpp"

namespace marketnet {

PowerLawFit fit_power_law(std::span<const std::pair<double, double>> points,
                          std::optional<FitRange> range) {
  std::vector<std::pair<double, double>> used;
  for (const auto& [x, y] : points) {
    if (range && (x < range->lo || x > range->hi)) continue;
    if (x <= 0.0 || y <= 0.0) {
      throw Error(errc::non_positive_value, "power-law fit needs strictly positive points");
    }
    used.emplace_back(x, y);
  }
  if (used.size() < 3) {
    throw Error(errc::too_few_points,
                "power-law fit needs at least 3 points, got " + std::to_string(used.size()));
  }

  const std::size_t n = used.size();
  double mean_lx = 0.0, mean_ly = 0.0;
  std::vector<double> lx(n), ly(n);
  for (std::size_t k = 0; k < n; ++k) {
    lx[k] = std::log(used[k].first);
    ly[k] = std::log(used[k].second);
    mean_lx += lx[k];
    mean_ly += ly[k];
  }
  mean_lx /= static_cast<double>(n);
  mean_ly /= static_cast<double>(n);

  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double dx = lx[k] - mean_lx;
    double dy = ly[k] - mean_ly;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) {
    throw Error(errc::degenerate_variance, "all fit points share the same x");
  }

  double slope = sxy / sxx;
  double ss_res = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double residual = (ly[k] - mean_ly) - slope * (lx[k] - mean_lx);
    ss_res += residual * residual;
  }

  PowerLawFit fit;
  fit.exponent = -slope;
  fit.std_error = std::sqrt(ss_res / (static_cast<double>(n - 2) * sxx));
  // A constant y is a perfect zero-slope law; report r^2 = 1 rather than 0/0.
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  fit.n_points = static_cast<int>(n);
  fit.min_x = used.front().first;
  fit.max_x = used.front().first;
  for (const auto& [x, y] : used) {
    fit.min_x = std::min(fit.min_x, x);
    fit.max_x = std::max(fit.max_x, x);
  }
  return fit;
}

PowerLawFit fit_degree_exponent(const DegreeDistribution& dd, std::optional<FitRange> range) {
  std::vector<std::pair<double, double>> points;
  for (const auto& [k, p] : dd.pmf) {
    if (k <= 0 || p <= 0.0) continue;
    points.emplace_back(static_cast<double>(k), p);
  }
  return fit_power_law(points, range);
}

std::vector<std::pair<double, double>> log_binned_pmf(const DegreeDistribution& dd, double ratio) {
  if (!(ratio > 1.0)) {
    throw Error(errc::invalid_spec, "log-binning ratio must exceed 1");
  }
  struct Bin {
    double mass = 0.0;
    int integers = 0;
  };
  std::vector<Bin> bins;
  std::vector<std::pair<double, double>> edges;  // [lo, hi) per bin
  double lo = 1.0;
  int max_degree = dd.pmf.empty() ? 0 : dd.pmf.rbegin()->first;
  while (lo <= static_cast<double>(max_degree)) {
    double hi = lo * ratio;
    int first = static_cast<int>(std::ceil(lo - 1e-9));
    int last = static_cast<int>(std::ceil(hi - 1e-9)) - 1;
    Bin bin;
    bin.integers = last - first + 1;
    bins.push_back(bin);
    edges.emplace_back(lo, hi);
    lo = hi;
  }
  for (const auto& [k, p] : dd.pmf) {
    if (k <= 0 || p <= 0.0) continue;
    auto index = static_cast<std::size_t>(std::floor(std::log(static_cast<double>(k)) /
                                                     std::log(ratio) + 1e-12));
    if (index >= bins.size()) index = bins.size() - 1;
    bins[index].mass += p;
  }
  std::vector<std::pair<double, double>> points;
  for (std::size_t b = 0; b < bins.size(); ++b) {
    if (bins[b].mass <= 0.0 || bins[b].integers <= 0) continue;
    double x = std::sqrt(edges[b].first * edges[b].second);
    points.emplace_back(x, bins[b].mass / static_cast<double>(bins[b].integers));
  }
  return points;
}

PowerLawFit fit_clustering_scaling(std::span<const SweepRow> sweep, FitRange theta_range) {
  std::vector<std::pair<double, double>> points;
  for (const auto& row : sweep) {
    if (row.theta < theta_range.lo || row.theta > theta_range.hi) continue;
    points.emplace_back(row.theta, row.avg_clustering);
  }
  return fit_power_law(points, std::nullopt);
}

std::string format_exponent(const PowerLawFit& fit) {
  // Error expressed in units of the value's last rendered digit. Two
  // decimals by default; when the error's hundredths digit is zero both the
  // value and the error drop one digit, matching the usual value(err) style:
  // (1.98, 0.36) -> "1.98(36)", (2.2, 0.9) -> "2.2(9)", (1.0, 0.0) -> "1.00(0)".
  long long err = std::llround(fit.std_error * 100.0);
  char buffer[64];
  if (err > 0 && err % 10 == 0) {
    std::snprintf(buffer, sizeof(buffer), "%.1f(%lld)", fit.exponent, err / 10);
  } else {
    std::snprintf(buffer, sizeof(buffer), "%.2f(%lld)", fit.exponent, err);
  }
  return buffer;
}

}  // namespace marketnet
