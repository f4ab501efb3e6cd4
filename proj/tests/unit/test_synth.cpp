#include <doctest.h>

#include <cmath>

#include "marketnet/correlation.hpp"
#include "marketnet/io.hpp"
#include "marketnet/mst.hpp"
#include "marketnet/synth.hpp"
#include "test_util.hpp"

using namespace marketnet;
using test_util::code_of;

namespace {

SynthSpec one_regime(double beta, double sector_loading, int n_sectors, int days, int assets,
                     std::uint64_t seed) {
  SynthSpec spec;
  spec.n_assets = assets;
  spec.n_days = days;
  spec.seed = seed;
  spec.regimes.push_back({"only", days, beta,
                          normalized_idiosyncratic(beta, sector_loading), n_sectors,
                          sector_loading});
  return spec;
}

double mean_offdiagonal_correlation(const PricePanel& panel) {
  auto corr = cross_correlation(log_returns(panel));
  auto values = upper_triangle(corr);
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

}  // namespace

TEST_CASE("generation is deterministic in the seed") {
  auto spec = one_regime(0.4, 0.2, 4, 60, 12, 777);
  auto a = generate(spec);
  auto b = generate(spec);
  CHECK(a.prices == b.prices);  // bitwise
  CHECK(a.dates == b.dates);
  CHECK(write_wide_csv(a) == write_wide_csv(b));

  spec.seed = 778;
  auto c = generate(spec);
  CHECK(a.prices != c.prices);
}

TEST_CASE("panel shape: one initial row plus one row per day") {
  auto panel = generate(one_regime(0.3, 0.0, 1, 25, 5, 1));
  CHECK(panel.rows() == 26);
  CHECK(panel.cols() == 5);
  CHECK(panel.tickers.front() == "A0");
  CHECK(panel.price(0, 0) == 100.0);
  CHECK(panel.dates.front().to_string() == "2006-01-02");
}

TEST_CASE("independent assets have near-zero mean correlation") {
  auto panel = generate(one_regime(0.0, 0.0, 1, 400, 20, 5));
  double mean = mean_offdiagonal_correlation(panel);
  CHECK(std::abs(mean) < 3.0 / std::sqrt(400.0));
}

TEST_CASE("one-factor market plants correlation beta squared") {
  auto panel = generate(one_regime(0.6, 0.0, 1, 400, 50, 9));
  CHECK(mean_offdiagonal_correlation(panel) == doctest::Approx(0.36).epsilon(0.05 / 0.36));
}

TEST_CASE("planted correlation converges with the sector correction") {
  const int assets = 30;
  const double beta = 0.5, s = 0.3;
  auto panel = generate(one_regime(beta, s, 5, 4000, assets, 13));
  // 5 sectors x 6 assets: 5 * 15 same-sector pairs of 435 total
  double n_pairs = assets * (assets - 1) / 2.0;
  double n_same = 5 * (6 * 5 / 2.0);
  double expected = (n_same * (beta * beta + s * s) + (n_pairs - n_same) * beta * beta) / n_pairs;
  CHECK(mean_offdiagonal_correlation(panel) == doctest::Approx(expected).epsilon(0.02 / expected));
}

TEST_CASE("raising beta raises planted correlation and shrinks distances") {
  auto low = generate(one_regime(0.3, 0.0, 1, 1500, 20, 21));
  auto high = generate(one_regime(0.7, 0.0, 1, 1500, 20, 21));
  CHECK(mean_offdiagonal_correlation(high) > mean_offdiagonal_correlation(low));

  auto low_tree = kruskal_mst(distance_matrix(cross_correlation(log_returns(low))));
  auto high_tree = kruskal_mst(distance_matrix(cross_correlation(log_returns(high))));
  CHECK(average_tree_length(high_tree) < average_tree_length(low_tree));
}

TEST_CASE("crisis scenario slices into three regime windows of 400 returns") {
  auto spec = crisis_scenario();
  auto panel = generate(spec);
  auto windows = regime_windows(spec);
  REQUIRE(windows.size() == 3);
  CHECK(windows[0].name == "calm");
  CHECK(windows[1].name == "crisis");
  CHECK(windows[2].name == "recovery");
  for (const auto& window : windows) {
    auto slice = slice_window(panel, window);
    CHECK(log_returns(slice).rows() == 400);
  }
  // consecutive windows share the boundary price row
  CHECK(windows[0].end == windows[1].start);
  CHECK(windows[1].end == windows[2].start);
}

TEST_CASE("crisis regime has the highest planted correlation") {
  auto spec = crisis_scenario();
  auto panel = generate(spec);
  auto windows = regime_windows(spec);
  double calm = mean_offdiagonal_correlation(slice_window(panel, windows[0]));
  double crisis = mean_offdiagonal_correlation(slice_window(panel, windows[1]));
  double recovery = mean_offdiagonal_correlation(slice_window(panel, windows[2]));
  CHECK(crisis > calm);
  CHECK(crisis > recovery);
}

TEST_CASE("crisis regime grows a shorter tree than calm across seeds") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    auto spec = crisis_scenario();
    spec.seed = seed;
    auto panel = generate(spec);
    auto windows = regime_windows(spec);
    auto tree_length = [&](const WindowSpec& window) {
      auto slice = slice_window(panel, window);
      return average_tree_length(kruskal_mst(distance_matrix(cross_correlation(log_returns(slice)))));
    };
    CHECK(tree_length(windows[1]) < tree_length(windows[0]));
  }
}

TEST_CASE("invalid specs are rejected before any generation") {
  auto spec = one_regime(0.4, 0.2, 4, 60, 12, 1);
  spec.n_days = 61;
  CHECK(code_of([&] { generate(spec); }) == errc::invalid_spec);

  auto heavy = one_regime(0.9, 0.0, 1, 10, 4, 1);
  heavy.regimes[0].sector_loading = 0.7;  // 0.81 + 0.49 > 1
  CHECK(code_of([&] { generate(heavy); }) == errc::invalid_spec);

  auto flat = one_regime(0.4, 0.0, 1, 10, 4, 1);
  flat.regimes[0].idiosyncratic_sigma = 0.0;
  CHECK(code_of([&] { generate(flat); }) == errc::invalid_spec);

  CHECK_THROWS_AS(normalized_idiosyncratic(0.9, 0.7), Error);
}

TEST_CASE("spec files parse with defaults") {
  auto spec = parse_synth_spec(R"({
    "n_assets": 10,
    "seed": 3,
    "regimes": [
      {"name": "a", "days": 30, "common_loading": 0.5},
      {"name": "b", "days": 20, "common_loading": 0.2, "n_sectors": 2, "sector_loading": 0.1}
    ]
  })");
  CHECK(spec.n_days == 50);
  CHECK(spec.regimes[0].idiosyncratic_sigma ==
        doctest::Approx(normalized_idiosyncratic(0.5, 0.0)).epsilon(1e-12));
  CHECK(spec.regimes[1].n_sectors == 2);
  auto panel = generate(spec);
  CHECK(panel.rows() == 51);

  CHECK(code_of([] { parse_synth_spec("{oops"); }) == errc::invalid_spec);
  CHECK(code_of([] { parse_synth_spec(R"({"n_assets": 5, "regimes": []})"); }) ==
        errc::invalid_spec);
}

TEST_CASE("sector labels cover every ticker") {
  auto panel = generate(one_regime(0.4, 0.2, 5, 30, 50, 2));
  CHECK(panel.sectors.size() == 50);
  CHECK(panel.sectors.at("A00") == "S0");
  CHECK(panel.sectors.at("A49") == "S4");
}
