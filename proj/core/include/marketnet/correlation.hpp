#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "marketnet/panel.hpp"
#include "marketnet/stats.hpp"

namespace marketnet {

// Symmetric cross-correlation matrix; entries clamped to [-1, 1], diagonal 1.
struct CorrMatrix {
  std::vector<std::string> tickers;
  std::vector<double> values;  // n x n row-major

  std::size_t size() const noexcept { return tickers.size(); }
  double at(std::size_t i, std::size_t j) const { return values[i * size() + j]; }
  void set(std::size_t i, std::size_t j, double v) {
    values[i * size() + j] = v;
    values[j * size() + i] = v;
  }
};

// Symmetric distance matrix d_ij = sqrt(2 (1 - c_ij)), entries in [0, 2].
struct DistMatrix {
  std::vector<std::string> tickers;
  std::vector<double> values;

  std::size_t size() const noexcept { return tickers.size(); }
  double at(std::size_t i, std::size_t j) const { return values[i * size() + j]; }
  void set(std::size_t i, std::size_t j, double v) {
    values[i * size() + j] = v;
    values[j * size() + i] = v;
  }
};

// Off-diagonal entries are Pearson correlations of the raw return columns
// (equal to the covariance-of-normalized-returns definition when the
// normalization uses the population std). Summation runs in fixed
// left-to-right time order so results are bit-reproducible.
CorrMatrix cross_correlation(const ReturnPanel& returns);

struct Histogram {
  double bin_width = 0.0;
  std::vector<double> centers;
  std::vector<int> counts;
  std::vector<double> densities;  // count / (n * bin_width)
  std::size_t n_samples = 0;
};

struct CoefficientDistribution {
  DistStats stats;  // over the n(n-1)/2 upper-triangle coefficients
  Histogram histogram;
};

CoefficientDistribution coefficient_distribution(const CorrMatrix& corr, double bin_width = 0.02);

DistMatrix distance_matrix(const CorrMatrix& corr);

// Upper-triangle coefficients in (i, j) i<j order; shared by stats/thresholds.
std::vector<double> upper_triangle(const CorrMatrix& corr);

}  // namespace marketnet
