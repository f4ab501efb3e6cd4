#include "marketnet/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "marketnet/error.hpp"

namespace marketnet {

MergeTree upgma(const DistMatrix& dist) {
  const std::size_t n = dist.size();
  if (n < 2) {
    throw Error(errc::too_few_samples, "clustering needs at least 2 leaves");
  }

  // Slot state: slot b dies into slot a on every merge.
  std::vector<double> d(dist.values);
  std::vector<bool> alive(n, true);
  std::vector<int> node(n), min_leaf(n), cluster_size(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    node[i] = static_cast<int>(i);
    min_leaf[i] = static_cast<int>(i);
  }

  MergeTree tree;
  tree.leaves = dist.tickers;
  tree.merges.reserve(n - 1);
  double last_height = -std::numeric_limits<double>::infinity();

  for (std::size_t step = 0; step + 1 < n; ++step) {
    std::size_t best_a = 0, best_b = 0;
    double best_d = std::numeric_limits<double>::infinity();
    int best_lo = 0, best_hi = 0;
    bool found = false;
    for (std::size_t a = 0; a < n; ++a) {
      if (!alive[a]) continue;
      for (std::size_t b = a + 1; b < n; ++b) {
        if (!alive[b]) continue;
        double dd = d[a * n + b];
        int lo = std::min(min_leaf[a], min_leaf[b]);
        int hi = std::max(min_leaf[a], min_leaf[b]);
        if (!found || dd < best_d || (dd == best_d && (lo < best_lo || (lo == best_lo && hi < best_hi)))) {
          found = true;
          best_d = dd;
          best_a = a;
          best_b = b;
          best_lo = lo;
          best_hi = hi;
        }
      }
    }

    // Average linkage is monotone; the max guards against rounding in the
    // size-weighted update dipping a merge below its predecessor by an ulp.
    double height = std::max(best_d, last_height);
    last_height = height;

    std::size_t a = best_a, b = best_b;
    bool a_left = min_leaf[a] < min_leaf[b];
    Merge merge;
    merge.left = a_left ? node[a] : node[b];
    merge.right = a_left ? node[b] : node[a];
    merge.height = height;
    merge.size = cluster_size[a] + cluster_size[b];
    tree.merges.push_back(merge);

    // Lance-Williams update for average linkage. Equal inputs short-circuit
    // so merging identical distances stays exact (ultrametrics reproduce
    // bit-for-bit).
    for (std::size_t c = 0; c < n; ++c) {
      if (!alive[c] || c == a || c == b) continue;
      double dac = d[a * n + c];
      double dbc = d[b * n + c];
      double merged = dac == dbc
                          ? dac
                          : (static_cast<double>(cluster_size[a]) * dac +
                             static_cast<double>(cluster_size[b]) * dbc) /
                                static_cast<double>(cluster_size[a] + cluster_size[b]);
      d[a * n + c] = merged;
      d[c * n + a] = merged;
    }
    cluster_size[a] += cluster_size[b];
    min_leaf[a] = std::min(min_leaf[a], min_leaf[b]);
    node[a] = static_cast<int>(n + step);
    alive[b] = false;
  }
  return tree;
}

namespace {

// Leaf members of every node id, in ascending order.
std::vector<std::vector<int>> node_members(const MergeTree& tree) {
  const std::size_t n = tree.leaves.size();
  std::vector<std::vector<int>> members(n + tree.merges.size());
  for (std::size_t i = 0; i < n; ++i) members[i] = {static_cast<int>(i)};
  for (std::size_t k = 0; k < tree.merges.size(); ++k) {
    const auto& merge = tree.merges[k];
    auto& out = members[n + k];
    out.resize(members[merge.left].size() + members[merge.right].size());
    std::merge(members[merge.left].begin(), members[merge.left].end(),
               members[merge.right].begin(), members[merge.right].end(), out.begin());
  }
  return members;
}

}  // namespace

CopheneticMatrix cophenetic_matrix(const MergeTree& tree) {
  const std::size_t n = tree.leaves.size();
  CopheneticMatrix coph;
  coph.n = n;
  coph.values.assign(n * n, 0.0);
  auto members = node_members(tree);
  for (std::size_t k = 0; k < tree.merges.size(); ++k) {
    const auto& merge = tree.merges[k];
    for (int i : members[merge.left]) {
      for (int j : members[merge.right]) coph.set(i, j, merge.height);
    }
  }
  return coph;
}

double cophenetic_correlation(const DistMatrix& dist, const CopheneticMatrix& coph) {
  const std::size_t n = dist.size();
  if (n < 3) {
    throw Error(errc::too_few_samples, "cophenetic correlation needs at least 3 leaves");
  }
  if (coph.n != n) {
    throw Error(errc::invalid_spec, "cophenetic matrix size does not match distance matrix");
  }
  double mean_d = 0.0, mean_c = 0.0;
  double min_d = dist.at(0, 1), max_d = min_d, min_c = coph.at(0, 1), max_c = min_c;
  const double pairs = static_cast<double>(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      mean_d += dist.at(i, j);
      mean_c += coph.at(i, j);
      min_d = std::min(min_d, dist.at(i, j));
      max_d = std::max(max_d, dist.at(i, j));
      min_c = std::min(min_c, coph.at(i, j));
      max_c = std::max(max_c, coph.at(i, j));
    }
  }
  if (min_d == max_d || min_c == max_c) {
    throw Error(errc::degenerate_variance, "constant pair distances, correlation undefined");
  }
  mean_d /= pairs;
  mean_c /= pairs;
  double sdd = 0.0, scc = 0.0, sdc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double dd = dist.at(i, j) - mean_d;
      double dc = coph.at(i, j) - mean_c;
      sdd += dd * dd;
      scc += dc * dc;
      sdc += dd * dc;
    }
  }
  if (sdd == 0.0 || scc == 0.0) {
    throw Error(errc::degenerate_variance, "constant pair distances, correlation undefined");
  }
  return std::clamp(sdc / std::sqrt(sdd * scc), -1.0, 1.0);
}

std::vector<std::size_t> pair_height_bands(const MergeTree& tree, std::span<const double> cutoffs,
                                           BandConvention convention) {
  for (std::size_t k = 1; k < cutoffs.size(); ++k) {
    if (cutoffs[k] < cutoffs[k - 1]) {
      throw Error(errc::unsorted_input, "band cutoffs must be sorted ascending");
    }
  }
  std::vector<double> heights;
  switch (convention) {
    case BandConvention::merge_heights:
      for (const auto& merge : tree.merges) heights.push_back(merge.height);
      break;
    case BandConvention::leaf_first_merge: {
      const std::size_t n = tree.leaves.size();
      auto members = node_members(tree);
      std::vector<bool> merged(n, false);
      heights.assign(n, 0.0);
      for (std::size_t k = 0; k < tree.merges.size(); ++k) {
        const auto& merge = tree.merges[k];
        for (int side : {merge.left, merge.right}) {
          for (int leaf : members[side]) {
            if (!merged[leaf]) {
              merged[leaf] = true;
              heights[leaf] = merge.height;
            }
          }
        }
      }
      break;
    }
    case BandConvention::all_pairs: {
      auto coph = cophenetic_matrix(tree);
      for (std::size_t i = 0; i < coph.n; ++i) {
        for (std::size_t j = i + 1; j < coph.n; ++j) heights.push_back(coph.at(i, j));
      }
      break;
    }
  }

  std::vector<std::size_t> counts(cutoffs.size() + 1, 0);
  for (double h : heights) {
    std::size_t band = cutoffs.size();
    for (std::size_t k = 0; k < cutoffs.size(); ++k) {
      if (h <= cutoffs[k]) {
        band = k;
        break;
      }
    }
    ++counts[band];
  }
  return counts;
}

}  // namespace marketnet
