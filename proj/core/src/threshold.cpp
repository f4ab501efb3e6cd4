#include "marketnet/threshold.hpp"

#include <algorithm>
#include <cmath>

#include "marketnet/error.hpp"
#include "marketnet/stats.hpp"
#include "marketnet/union_find.hpp"

namespace marketnet {

DegreeDistribution degree_distribution_of(std::span<const int> degrees) {
  DegreeDistribution dd;
  dd.n_vertices = degrees.size();
  for (int k : degrees) ++dd.counts[k];
  for (const auto& [k, count] : dd.counts) {
    dd.pmf[k] = static_cast<double>(count) / static_cast<double>(dd.n_vertices);
  }
  return dd;
}

ThresholdGraph build_threshold_network(const CorrMatrix& corr, double theta) {
  if (!(theta >= -1.0 && theta <= 1.0)) {
    throw Error(errc::theta_out_of_range, "theta must lie in [-1, 1]");
  }
  const std::size_t n = corr.size();
  ThresholdGraph graph;
  graph.theta = theta;
  graph.tickers = corr.tickers;
  graph.adjacency.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (corr.at(i, j) >= theta) {
        graph.edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
        graph.adjacency[i].push_back(static_cast<int>(j));
        graph.adjacency[j].push_back(static_cast<int>(i));
      }
    }
  }
  for (auto& neighbors : graph.adjacency) std::sort(neighbors.begin(), neighbors.end());
  return graph;
}

std::vector<double> sigma_thresholds(const CorrMatrix& corr, std::span<const int> multiples) {
  if (multiples.empty()) {
    throw Error(errc::invalid_spec, "no sigma multiples given");
  }
  auto values = upper_triangle(corr);
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double std_dev = 0.0;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) {
      double d = v - mean;
      ss += d * d;
    }
    std_dev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  std::vector<double> thetas;
  thetas.reserve(multiples.size());
  for (int k : multiples) thetas.push_back(mean + static_cast<double>(k) * std_dev);
  return thetas;
}

ComponentReport connected_components(const ThresholdGraph& graph) {
  const std::size_t n = graph.size();
  UnionFind uf(n);
  for (const auto& [a, b] : graph.edges) uf.unite(a, b);

  std::vector<std::vector<int>> groups(n);
  for (std::size_t v = 0; v < n; ++v) groups[uf.find(static_cast<int>(v))].push_back(static_cast<int>(v));

  ComponentReport report;
  for (auto& group : groups) {
    if (!group.empty()) report.components.push_back(std::move(group));
  }
  std::sort(report.components.begin(), report.components.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              if (a.size() != b.size()) return a.size() > b.size();
              return a.front() < b.front();
            });
  report.largest_fraction =
      static_cast<double>(report.components.front().size()) / static_cast<double>(n);
  return report;
}

double mean_degree(const ThresholdGraph& graph) {
  return 2.0 * static_cast<double>(graph.edges.size()) / static_cast<double>(graph.size());
}

DegreeDistribution degree_distribution(const ThresholdGraph& graph, DegreeScope scope) {
  std::vector<int> degrees;
  if (scope == DegreeScope::whole) {
    degrees.reserve(graph.size());
    for (std::size_t v = 0; v < graph.size(); ++v) degrees.push_back(graph.degree(v));
  } else {
    if (graph.edges.empty()) {
      throw Error(errc::empty_scope, "graph has no edges, largest component is a single vertex");
    }
    auto report = connected_components(graph);
    for (int v : report.components.front()) degrees.push_back(graph.degree(v));
  }
  return degree_distribution_of(degrees);
}

ClusteringReport clustering_coefficients(const ThresholdGraph& graph) {
  const std::size_t n = graph.size();
  ClusteringReport report;
  report.per_vertex.resize(n, 0.0);
  double total = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    const auto& neighbors = graph.adjacency[v];
    const std::size_t deg = neighbors.size();
    if (deg < 2) continue;
    std::size_t linked = 0;
    for (std::size_t a = 0; a < deg; ++a) {
      for (std::size_t b = a + 1; b < deg; ++b) {
        const auto& adj = graph.adjacency[neighbors[a]];
        if (std::binary_search(adj.begin(), adj.end(), neighbors[b])) ++linked;
      }
    }
    report.per_vertex[v] =
        2.0 * static_cast<double>(linked) / (static_cast<double>(deg) * static_cast<double>(deg - 1));
    total += report.per_vertex[v];
  }
  report.average = total / static_cast<double>(n);
  return report;
}

std::vector<SweepRow> threshold_sweep(const CorrMatrix& corr, std::span<const double> thetas) {
  for (std::size_t k = 1; k < thetas.size(); ++k) {
    if (thetas[k] < thetas[k - 1]) {
      throw Error(errc::unsorted_input, "sweep thetas must be sorted ascending");
    }
  }
  std::vector<SweepRow> rows;
  rows.reserve(thetas.size());
  for (double theta : thetas) {
    auto graph = build_threshold_network(corr, theta);
    SweepRow row;
    row.theta = theta;
    row.mean_degree = mean_degree(graph);
    row.avg_clustering = clustering_coefficients(graph).average;
    row.largest_fraction = connected_components(graph).largest_fraction;
    row.edge_count = graph.edges.size();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace marketnet
