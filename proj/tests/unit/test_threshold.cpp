#include <doctest.h>

#include <numeric>

#include "marketnet/threshold.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace marketnet;
using test_util::code_of;

namespace {

CorrMatrix matrix_from_upper(std::size_t n, const std::vector<double>& upper) {
  CorrMatrix corr;
  for (std::size_t i = 0; i < n; ++i) corr.tickers.push_back("T" + std::to_string(i));
  corr.values.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) corr.values[i * n + i] = 1.0;
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) corr.set(i, j, upper[k++]);
  }
  return corr;
}

ThresholdGraph graph_from_edges(std::size_t n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<double> upper(n * (n - 1) / 2, -1.0);
  auto corr = matrix_from_upper(n, upper);
  for (auto [i, j] : edges) corr.set(i, j, 1.0);
  return build_threshold_network(corr, 0.5);
}

}  // namespace

TEST_CASE("threshold edges follow the >= rule") {
  auto corr = matrix_from_upper(4, {0.9, 0.5, 0.1, 0.1, 0.1, 0.1});
  auto graph = build_threshold_network(corr, 0.4);
  CHECK(graph.edges == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}});
  CHECK(graph.adjacency[0] == std::vector<int>{1, 2});

  auto complete = build_threshold_network(corr, -1.0);
  CHECK(complete.edges.size() == 6);  // 4*3/2

  auto empty = build_threshold_network(corr, 0.95);
  CHECK(empty.edges.empty());

  auto boundary = build_threshold_network(corr, 0.5);
  CHECK(boundary.edges == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}});  // 0.5 >= 0.5

  CHECK(code_of([&] { build_threshold_network(corr, 1.5); }) == errc::theta_out_of_range);
}

TEST_CASE("sigma thresholds use mean plus k sample std of the upper triangle") {
  auto constant = matrix_from_upper(4, {0.3, 0.3, 0.3, 0.3, 0.3, 0.3});
  int one[] = {1};
  CHECK(sigma_thresholds(constant, one).front() == doctest::Approx(0.3).epsilon(1e-12));

  // upper triangle {0.15, 0.2, 0.25}: mean 0.2, sample std 0.05
  auto spread = matrix_from_upper(3, {0.15, 0.2, 0.25});
  int three[] = {3};
  CHECK(sigma_thresholds(spread, three).front() == doctest::Approx(0.35).epsilon(1e-12));

  int multiples[] = {1, 2, 3};
  auto thetas = sigma_thresholds(spread, multiples);
  CHECK(thetas.size() == 3);
  CHECK(thetas[1] == doctest::Approx(0.3).epsilon(1e-12));

  CHECK_THROWS_AS(sigma_thresholds(spread, std::span<const int>{}), Error);
}

TEST_CASE("connected components on canonical shapes") {
  auto corr = matrix_from_upper(4, {0.9, 0.9, 0.9, 0.9, 0.9, 0.9});
  auto complete = connected_components(build_threshold_network(corr, 0.5));
  CHECK(complete.components.size() == 1);
  CHECK(complete.largest_fraction == 1.0);

  auto empty = connected_components(build_threshold_network(corr, 0.95));
  CHECK(empty.components.size() == 4);
  CHECK(empty.largest_fraction == doctest::Approx(0.25));

  // two disjoint triangles on 6 vertices
  auto graph = graph_from_edges(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}});
  auto report = connected_components(graph);
  REQUIRE(report.components.size() == 2);
  CHECK(report.components[0] == std::vector<int>{0, 1, 2});
  CHECK(report.components[1] == std::vector<int>{3, 4, 5});
  CHECK(report.largest_fraction == doctest::Approx(0.5));
}

TEST_CASE("components match the BFS oracle on random matrices") {
  oracles::TestRng rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 3 + trial % 8;  // up to 10
    auto corr = oracles::random_corr_matrix(n, rng);
    double theta = rng.uniform(-0.5, 0.9);
    auto graph = build_threshold_network(corr, theta);
    CHECK(connected_components(graph).components == oracles::bfs_components(corr, theta));
  }
}

TEST_CASE("mean degree on canonical shapes") {
  auto k5 = matrix_from_upper(5, std::vector<double>(10, 0.9));
  CHECK(mean_degree(build_threshold_network(k5, 0.5)) == doctest::Approx(4.0));
  CHECK(mean_degree(build_threshold_network(k5, 0.95)) == 0.0);

  auto path = graph_from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(mean_degree(path) == doctest::Approx(1.5));
}

TEST_CASE("degree distributions per scope") {
  auto star = graph_from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  auto whole = degree_distribution(star, DegreeScope::whole);
  CHECK(whole.counts == std::map<int, int>{{1, 4}, {4, 1}});
  CHECK(whole.pmf.at(1) == doctest::Approx(0.8));

  auto k4 = graph_from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  CHECK(degree_distribution(k4, DegreeScope::whole).counts == std::map<int, int>{{3, 4}});
  CHECK(degree_distribution(k4, DegreeScope::largest_component).counts ==
        std::map<int, int>{{3, 4}});

  // two triangles plus an isolated vertex; the largest component wins ties by
  // smallest member id
  auto graph = graph_from_edges(7, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}});
  auto largest = degree_distribution(graph, DegreeScope::largest_component);
  CHECK(largest.counts == std::map<int, int>{{2, 3}});
  CHECK(largest.n_vertices == 3);

  double pmf_sum = 0.0;
  for (const auto& [k, p] : degree_distribution(graph, DegreeScope::whole).pmf) pmf_sum += p;
  CHECK(pmf_sum == doctest::Approx(1.0).epsilon(1e-12));

  auto edgeless = graph_from_edges(3, {});
  CHECK(code_of([&] { degree_distribution(edgeless, DegreeScope::largest_component); }) ==
        errc::empty_scope);
}

TEST_CASE("clustering coefficients on canonical shapes") {
  auto triangle = graph_from_edges(3, {{0, 1}, {0, 2}, {1, 2}});
  auto tri = clustering_coefficients(triangle);
  CHECK(tri.per_vertex == std::vector<double>{1.0, 1.0, 1.0});
  CHECK(tri.average == doctest::Approx(1.0));

  auto star = graph_from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  auto star_report = clustering_coefficients(star);
  CHECK(star_report.average == 0.0);

  // K4 minus one edge: the two vertices that keep degree 3 have 2 of their 3
  // neighbor pairs linked
  auto near_k4 = graph_from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}});
  auto report = clustering_coefficients(near_k4);
  CHECK(report.per_vertex[0] == doctest::Approx(2.0 / 3.0));
  CHECK(report.per_vertex[1] == doctest::Approx(2.0 / 3.0));
  CHECK(report.per_vertex[2] == doctest::Approx(1.0));
  CHECK(report.per_vertex[3] == doctest::Approx(1.0));
  CHECK(report.average == doctest::Approx(5.0 / 6.0));
}

TEST_CASE("clustering matches the brute-force oracle") {
  oracles::TestRng rng(47);
  for (int trial = 0; trial < 25; ++trial) {
    std::size_t n = 3 + trial % 8;
    auto corr = oracles::random_corr_matrix(n, rng);
    double theta = rng.uniform(-0.5, 0.8);
    auto report = clustering_coefficients(build_threshold_network(corr, theta));
    auto brute = oracles::brute_clustering(corr, theta);
    for (std::size_t v = 0; v < n; ++v) {
      CHECK(report.per_vertex[v] == doctest::Approx(brute[v]).epsilon(1e-12));
    }
  }
}

TEST_CASE("sweep rows are monotone and validated") {
  oracles::TestRng rng(53);
  auto corr = oracles::random_corr_matrix(10, rng);
  std::vector<double> thetas;
  for (int k = 0; k <= 20; ++k) thetas.push_back(-1.0 + 0.1 * k);
  auto rows = threshold_sweep(corr, thetas);
  REQUIRE(rows.size() == thetas.size());
  CHECK(rows.front().edge_count == 45);  // theta = -1 keeps every pair
  for (std::size_t k = 1; k < rows.size(); ++k) {
    CHECK(rows[k].edge_count <= rows[k - 1].edge_count);
    CHECK(rows[k].mean_degree <= rows[k - 1].mean_degree + 1e-12);
    CHECK(rows[k].largest_fraction <= rows[k - 1].largest_fraction + 1e-12);
  }

  std::vector<double> unsorted{0.5, 0.2};
  CHECK(code_of([&] { threshold_sweep(corr, unsorted); }) == errc::unsorted_input);
}

TEST_CASE("handshake and edge-subset properties on random grids") {
  oracles::TestRng rng(59);
  for (int trial = 0; trial < 20; ++trial) {
    auto corr = oracles::random_corr_matrix(4 + trial % 7, rng);
    double t1 = rng.uniform(-1.0, 0.5);
    double t2 = t1 + rng.uniform(0.0, 0.5);
    auto g1 = build_threshold_network(corr, t1);
    auto g2 = build_threshold_network(corr, t2);
    for (auto edge : g2.edges) {
      CHECK(std::find(g1.edges.begin(), g1.edges.end(), edge) != g1.edges.end());
    }
    for (const auto* g : {&g1, &g2}) {
      std::size_t degree_sum = 0;
      for (std::size_t v = 0; v < g->size(); ++v) degree_sum += g->degree(v);
      CHECK(degree_sum == 2 * g->edges.size());
    }
  }
}
