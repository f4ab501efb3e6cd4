#include "marketnet/correlation.hpp"

#include <algorithm>
#include <cmath>

#include "marketnet/error.hpp"

namespace marketnet {

CorrMatrix cross_correlation(const ReturnPanel& returns) {
  const std::size_t n = returns.cols();
  const std::size_t t_len = returns.rows();
  if (t_len < 2) {
    throw Error(errc::too_few_samples, "need at least 2 return rows");
  }

  std::vector<double> means(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t t = 0; t < t_len; ++t) sum += returns.raw_at(t, i);
    means[i] = sum / static_cast<double>(t_len);
  }
  std::vector<double> ss(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t t = 0; t < t_len; ++t) {
      double d = returns.raw_at(t, i) - means[i];
      acc += d * d;
    }
    if (acc == 0.0) {
      throw Error(errc::zero_variance, "ticker " + returns.tickers[i] + " has constant returns");
    }
    ss[i] = acc;
  }

  CorrMatrix corr;
  corr.tickers = returns.tickers;
  corr.values.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) corr.values[i * n + i] = 1.0;

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double cross = 0.0;
      for (std::size_t t = 0; t < t_len; ++t) {
        cross += (returns.raw_at(t, i) - means[i]) * (returns.raw_at(t, j) - means[j]);
      }
      // sqrt of the product (not product of sqrts) so bitwise-identical
      // columns give exactly +-1 before clamping.
      double c = cross / std::sqrt(ss[i] * ss[j]);
      c = std::clamp(c, -1.0, 1.0);
      corr.set(i, j, c);
    }
  }
  return corr;
}

std::vector<double> upper_triangle(const CorrMatrix& corr) {
  const std::size_t n = corr.size();
  std::vector<double> values;
  values.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) values.push_back(corr.at(i, j));
  }
  return values;
}

CoefficientDistribution coefficient_distribution(const CorrMatrix& corr, double bin_width) {
  if (corr.size() < 2) {
    throw Error(errc::too_few_samples, "need at least 2 tickers");
  }
  if (!(bin_width > 0.0) || bin_width > 2.0) {
    throw Error(errc::invalid_spec, "histogram bin width must be in (0, 2]");
  }
  auto values = upper_triangle(corr);

  CoefficientDistribution out;
  if (values.size() == 1) {
    // A single coefficient is still reportable even though dist_stats
    // requires two samples.
    out.stats.mean = values[0];
    out.stats.n = 1;
  } else {
    out.stats = dist_stats(values);
  }

  // Bins partition [-1, 1]; the emitted range runs from the first to the
  // last occupied bin so interior zeros stay visible to plotting tools.
  const int n_bins = static_cast<int>(std::ceil(2.0 / bin_width));
  std::vector<int> counts(n_bins, 0);
  for (double v : values) {
    int idx = static_cast<int>(std::floor((v + 1.0) / bin_width));
    idx = std::clamp(idx, 0, n_bins - 1);
    ++counts[idx];
  }
  int first = 0;
  while (first < n_bins && counts[first] == 0) ++first;
  int last = n_bins - 1;
  while (last >= 0 && counts[last] == 0) --last;

  Histogram& hist = out.histogram;
  hist.bin_width = bin_width;
  hist.n_samples = values.size();
  for (int b = first; b <= last; ++b) {
    hist.centers.push_back(-1.0 + (b + 0.5) * bin_width);
    hist.counts.push_back(counts[b]);
    hist.densities.push_back(counts[b] / (static_cast<double>(values.size()) * bin_width));
  }
  return out;
}

DistMatrix distance_matrix(const CorrMatrix& corr) {
  const std::size_t n = corr.size();
  DistMatrix dist;
  dist.tickers = corr.tickers;
  dist.values.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double arg = 2.0 * (1.0 - corr.at(i, j));
      dist.set(i, j, std::sqrt(std::max(arg, 0.0)));
    }
  }
  return dist;
}

}  // namespace marketnet
