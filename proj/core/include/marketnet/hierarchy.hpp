#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "marketnet/correlation.hpp"

namespace marketnet {

// One agglomerative merge. Node ids follow the flat convention used by the
// usual statistics toolchains: leaves are 0..n-1, the k-th merge creates node
// n+k. `left` always holds the child whose smallest leaf id is smaller.
struct Merge {
  int left = 0;
  int right = 0;
  double height = 0.0;
  int size = 0;  // leaves in the merged cluster
};

struct MergeTree {
  std::vector<std::string> leaves;
  std::vector<Merge> merges;  // n-1 records, heights non-decreasing
};

// Average-linkage (UPGMA) clustering of the distance matrix. At every step
// the pair of clusters with minimal average inter-cluster distance merges;
// ties prefer the pair with the lexicographically smallest (min leaf id of
// one side, min leaf id of the other).
MergeTree upgma(const DistMatrix& dist);

// c_ij = height of the merge where leaves i and j first share a cluster.
struct CopheneticMatrix {
  std::size_t n = 0;
  std::vector<double> values;  // n x n, diagonal 0

  double at(std::size_t i, std::size_t j) const { return values[i * n + j]; }
  void set(std::size_t i, std::size_t j, double v) {
    values[i * n + j] = v;
    values[j * n + i] = v;
  }
};

CopheneticMatrix cophenetic_matrix(const MergeTree& tree);

// Pearson correlation between {d_ij} and {c_ij} over i < j.
double cophenetic_correlation(const DistMatrix& dist, const CopheneticMatrix& coph);

// What gets binned by pair_height_bands. merge_heights bins the n-1 merge
// heights; leaf_first_merge bins, for every leaf, the height at which that
// leaf first joins a cluster; all_pairs bins the n(n-1)/2 cophenetic entries.
enum class BandConvention { merge_heights, leaf_first_merge, all_pairs };

// Counts per band for ascending cutoffs [c0, c1, ...]: v <= c0, c0 < v <= c1,
// ..., v > c_last. Returns cutoffs.size() + 1 counts.
std::vector<std::size_t> pair_height_bands(const MergeTree& tree, std::span<const double> cutoffs,
                                           BandConvention convention = BandConvention::merge_heights);

}  // namespace marketnet
