#include <doctest.h>

#include <cmath>

#include "marketnet/correlation.hpp"
#include "marketnet/panel.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace marketnet;
using test_util::code_of;

namespace {

ReturnPanel returns_from_columns(const std::vector<std::vector<double>>& columns) {
  ReturnPanel returns;
  const std::size_t t_len = columns.front().size();
  for (std::size_t i = 0; i < columns.size(); ++i) {
    returns.tickers.push_back("T" + std::to_string(i));
  }
  Date date{2020, 1, 2};
  for (std::size_t t = 0; t < t_len; ++t) {
    returns.dates.push_back(date);
    date = date.next_day();
    for (const auto& column : columns) returns.raw.push_back(column[t]);
  }
  returns.normalized = returns.raw;
  returns.sigma.assign(columns.size(), 1.0);
  return returns;
}

}  // namespace

TEST_CASE("identical columns correlate to exactly one") {
  auto returns = returns_from_columns({{0.01, -0.02, 0.005, 0.03}, {0.01, -0.02, 0.005, 0.03}});
  auto corr = cross_correlation(returns);
  CHECK(corr.at(0, 1) == 1.0);
  CHECK(corr.at(0, 0) == 1.0);
  CHECK(corr.at(1, 1) == 1.0);
}

TEST_CASE("negated columns correlate to exactly minus one") {
  std::vector<double> x{0.02, -0.01, 0.04, -0.03, 0.005};
  std::vector<double> y;
  for (double v : x) y.push_back(-v);
  auto corr = cross_correlation(returns_from_columns({x, y}));
  CHECK(corr.at(0, 1) == -1.0);
}

TEST_CASE("small panel matches the naive double-loop oracle") {
  oracles::TestRng rng(23);
  auto panel = oracles::random_panel(4, 3, rng);
  auto returns = log_returns(panel);
  auto corr = cross_correlation(returns);
  auto naive = oracles::naive_correlation(returns);
  for (std::size_t i = 0; i < corr.size(); ++i) {
    for (std::size_t j = 0; j < corr.size(); ++j) {
      CHECK(corr.at(i, j) == doctest::Approx(naive[i * corr.size() + j]).epsilon(1e-12));
    }
  }
}

TEST_CASE("random panels match the oracle and stay symmetric in range") {
  oracles::TestRng rng(29);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 2 + trial % 7;  // up to 8
    std::size_t t_rows = 4 + trial % 17;  // up to 20
    auto panel = oracles::random_panel(t_rows, n, rng);
    auto returns = log_returns(panel);
    auto corr = cross_correlation(returns);
    auto naive = oracles::naive_correlation(returns);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(corr.at(i, i) == 1.0);
      for (std::size_t j = 0; j < n; ++j) {
        CHECK(corr.at(i, j) == corr.at(j, i));
        CHECK(std::abs(corr.at(i, j)) <= 1.0);
        CHECK(corr.at(i, j) == doctest::Approx(naive[i * n + j]).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("correlation is invariant under positive price rescaling") {
  oracles::TestRng rng(31);
  auto panel = oracles::random_panel(15, 4, rng);
  auto base = cross_correlation(log_returns(panel));

  auto scaled = panel;
  for (std::size_t t = 0; t < scaled.rows(); ++t) scaled.prices[t * scaled.cols() + 2] *= 1234.5;
  auto rescaled = cross_correlation(log_returns(scaled));
  for (std::size_t i = 0; i < base.size(); ++i) {
    for (std::size_t j = 0; j < base.size(); ++j) {
      CHECK(rescaled.at(i, j) == doctest::Approx(base.at(i, j)).epsilon(1e-12));
    }
  }
}

TEST_CASE("zero-variance columns are rejected") {
  auto returns = returns_from_columns({{0.01, 0.01, 0.01}, {0.01, 0.02, 0.03}});
  CHECK(code_of([&] { cross_correlation(returns); }) == errc::zero_variance);
}

TEST_CASE("coefficient distribution of a single pair") {
  CorrMatrix corr;
  corr.tickers = {"A", "B"};
  corr.values = {1.0, 0.5, 0.5, 1.0};
  auto dist = coefficient_distribution(corr);
  CHECK(dist.stats.mean == 0.5);
  CHECK(dist.stats.n == 1);
  CHECK(dist.histogram.n_samples == 1);
}

TEST_CASE("all-identical columns give coefficient one with zero spread") {
  auto returns = returns_from_columns(
      {{0.01, -0.02, 0.03}, {0.01, -0.02, 0.03}, {0.01, -0.02, 0.03}});
  auto corr = cross_correlation(returns);
  auto dist = coefficient_distribution(corr);
  CHECK(dist.stats.mean == 1.0);
  CHECK(dist.stats.std_dev == 0.0);
  CHECK(dist.stats.n == 3);
}

TEST_CASE("histogram densities integrate to one") {
  oracles::TestRng rng(37);
  auto corr = oracles::random_corr_matrix(12, rng);
  auto dist = coefficient_distribution(corr, 0.02);
  double mass = 0.0;
  int total = 0;
  for (std::size_t k = 0; k < dist.histogram.densities.size(); ++k) {
    mass += dist.histogram.densities[k] * dist.histogram.bin_width;
    total += dist.histogram.counts[k];
  }
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(total == 66);  // 12 * 11 / 2
  for (std::size_t k = 1; k < dist.histogram.centers.size(); ++k) {
    CHECK(dist.histogram.centers[k] - dist.histogram.centers[k - 1] ==
          doctest::Approx(0.02).epsilon(1e-9));
  }
}

TEST_CASE("distance transform endpoints and monotonicity") {
  CorrMatrix corr;
  corr.tickers = {"A", "B", "C", "D"};
  const std::size_t n = 4;
  corr.values.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) corr.values[i * n + i] = 1.0;
  corr.set(0, 1, 1.0);
  corr.set(0, 2, -1.0);
  corr.set(0, 3, 0.35);
  corr.set(1, 2, 0.0);
  corr.set(1, 3, 0.8);
  corr.set(2, 3, -0.5);

  auto dist = distance_matrix(corr);
  CHECK(dist.at(0, 1) == 0.0);
  CHECK(dist.at(0, 2) == 2.0);
  CHECK(dist.at(0, 3) == doctest::Approx(1.14018).epsilon(1e-5));
  CHECK(dist.at(1, 2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  for (std::size_t i = 0; i < n; ++i) CHECK(dist.at(i, i) == 0.0);

  // monotone decreasing in c, and zero distance only at c = 1
  oracles::TestRng rng(41);
  double prev_c = -1.0, prev_d = 2.0;
  for (int k = 0; k < 50; ++k) {
    double c = rng.uniform(-1.0, 1.0);
    CorrMatrix two;
    two.tickers = {"A", "B"};
    two.values = {1.0, c, c, 1.0};
    double d = distance_matrix(two).at(0, 1);
    CHECK((d == 0.0) == (c == 1.0));
    if (c > prev_c) {
      CHECK(d <= prev_d + 1e-15);
    }
    prev_c = c;
    prev_d = d;
  }
}
