#include "marketnet/mst.hpp"

#include <algorithm>
#include <tuple>

#include "marketnet/error.hpp"
#include "marketnet/union_find.hpp"

namespace marketnet {

SpanningTree kruskal_mst(const DistMatrix& dist) {
  const std::size_t n = dist.size();
  if (n < 2) {
    throw Error(errc::too_few_samples, "spanning tree needs at least 2 vertices");
  }
  std::vector<TreeEdge> candidates;
  candidates.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      candidates.push_back({static_cast<int>(i), static_cast<int>(j), dist.at(i, j)});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const TreeEdge& x, const TreeEdge& y) {
    return std::tie(x.weight, x.a, x.b) < std::tie(y.weight, y.a, y.b);
  });

  SpanningTree tree;
  tree.tickers = dist.tickers;
  tree.adjacency.resize(n);
  UnionFind uf(n);
  for (const auto& edge : candidates) {
    if (!uf.unite(edge.a, edge.b)) continue;
    tree.edges.push_back(edge);
    tree.adjacency[edge.a].emplace_back(edge.b, edge.weight);
    tree.adjacency[edge.b].emplace_back(edge.a, edge.weight);
    if (tree.edges.size() == n - 1) break;
  }
  for (auto& neighbors : tree.adjacency) {
    std::sort(neighbors.begin(), neighbors.end());
  }
  return tree;
}

double average_tree_length(const SpanningTree& tree) {
  double total = 0.0;
  for (const auto& edge : tree.edges) total += edge.weight;
  return total / static_cast<double>(tree.size());
}

double mean_pairwise_path_length(const SpanningTree& tree) {
  const std::size_t n = tree.size();
  double total = 0.0;
  std::vector<std::pair<int, double>> stack;
  std::vector<bool> seen(n);
  for (std::size_t s = 0; s < n; ++s) {
    std::fill(seen.begin(), seen.end(), false);
    stack.push_back({static_cast<int>(s), 0.0});
    seen[s] = true;
    while (!stack.empty()) {
      auto [v, d] = stack.back();
      stack.pop_back();
      if (static_cast<std::size_t>(v) > s) total += d;
      for (const auto& [w, weight] : tree.adjacency[v]) {
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back({w, d + weight});
        }
      }
    }
  }
  return total / (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
}

DegreeDistribution mst_degree_distribution(const SpanningTree& tree) {
  std::vector<int> degrees;
  degrees.reserve(tree.size());
  for (std::size_t v = 0; v < tree.size(); ++v) degrees.push_back(tree.degree(v));
  return degree_distribution_of(degrees);
}

std::vector<HubEntry> hub_ranking(const SpanningTree& tree, int top) {
  if (top < 1 || static_cast<std::size_t>(top) > tree.size()) {
    throw Error(errc::top_out_of_range, "top must lie in [1, " + std::to_string(tree.size()) + "]");
  }
  std::vector<HubEntry> ranking;
  ranking.reserve(tree.size());
  for (std::size_t v = 0; v < tree.size(); ++v) {
    ranking.push_back({static_cast<int>(v), tree.tickers[v], tree.degree(v)});
  }
  std::sort(ranking.begin(), ranking.end(), [](const HubEntry& x, const HubEntry& y) {
    if (x.degree != y.degree) return x.degree > y.degree;
    return x.id < y.id;
  });
  ranking.resize(top);
  return ranking;
}

}  // namespace marketnet
