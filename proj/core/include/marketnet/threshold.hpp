#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "marketnet/correlation.hpp"
#include "marketnet/degree.hpp"

namespace marketnet {

// Undirected simple graph over tickers with an edge wherever c_ij >= theta.
struct ThresholdGraph {
  double theta = 0.0;
  std::vector<std::string> tickers;
  std::vector<std::pair<int, int>> edges;    // i < j, lexicographically sorted
  std::vector<std::vector<int>> adjacency;   // sorted neighbor ids

  std::size_t size() const noexcept { return tickers.size(); }
  int degree(std::size_t i) const { return static_cast<int>(adjacency[i].size()); }
};

ThresholdGraph build_threshold_network(const CorrMatrix& corr, double theta);

// theta_k = mean + k * std of the upper-triangle coefficients (sample std).
std::vector<double> sigma_thresholds(const CorrMatrix& corr, std::span<const int> multiples);

// Connected components sorted by size descending, then by smallest member id;
// members sorted ascending.
struct ComponentReport {
  std::vector<std::vector<int>> components;
  double largest_fraction = 0.0;
};

ComponentReport connected_components(const ThresholdGraph& graph);

double mean_degree(const ThresholdGraph& graph);

enum class DegreeScope { whole, largest_component };

DegreeDistribution degree_distribution(const ThresholdGraph& graph, DegreeScope scope);

// c_i = 2 m_i / (n_i (n_i - 1)), zero when a vertex has fewer than two
// neighbors; the average runs over all vertices including isolated ones.
struct ClusteringReport {
  std::vector<double> per_vertex;
  double average = 0.0;
};

ClusteringReport clustering_coefficients(const ThresholdGraph& graph);

struct SweepRow {
  double theta = 0.0;
  double mean_degree = 0.0;
  double avg_clustering = 0.0;
  double largest_fraction = 0.0;
  std::size_t edge_count = 0;
};

// One row per theta; thetas must be sorted ascending.
std::vector<SweepRow> threshold_sweep(const CorrMatrix& corr, std::span<const double> thetas);

}  // namespace marketnet
