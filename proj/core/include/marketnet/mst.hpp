#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "marketnet/correlation.hpp"
#include "marketnet/degree.hpp"

namespace marketnet {

struct TreeEdge {
  int a = 0;
  int b = 0;
  double weight = 0.0;
};

// Minimum spanning tree of the complete distance graph: n-1 edges, connected,
// acyclic. Edge endpoints satisfy a < b.
struct SpanningTree {
  std::vector<std::string> tickers;
  std::vector<TreeEdge> edges;
  std::vector<std::vector<std::pair<int, double>>> adjacency;

  std::size_t size() const noexcept { return tickers.size(); }
  int degree(std::size_t i) const { return static_cast<int>(adjacency[i].size()); }
};

// Kruskal with union-find; candidate edges are sorted by (weight, i, j) so
// degenerate inputs still produce one reproducible tree.
SpanningTree kruskal_mst(const DistMatrix& dist);

// Sum of the n-1 tree edge weights divided by n.
double average_tree_length(const SpanningTree& tree);

// Mean weighted path length over all n(n-1)/2 vertex pairs of the tree;
// emitted alongside average_tree_length so either size reading is available.
double mean_pairwise_path_length(const SpanningTree& tree);

DegreeDistribution mst_degree_distribution(const SpanningTree& tree);

struct HubEntry {
  int id = 0;
  std::string ticker;
  int degree = 0;
};

// Top vertices by (degree desc, id asc). Requires 1 <= top <= n.
std::vector<HubEntry> hub_ranking(const SpanningTree& tree, int top);

}  // namespace marketnet
