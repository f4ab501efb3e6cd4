#pragma once

// Definition-level reference implementations used to cross-check the library.
// Everything here recomputes results straight from first principles and must
// stay independent of the production code paths it verifies.

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "marketnet/correlation.hpp"
#include "marketnet/degree.hpp"
#include "marketnet/hierarchy.hpp"
#include "marketnet/panel.hpp"

namespace oracles {

// Deterministic uniform source; does not rely on std distributions, whose
// algorithms are implementation-defined.
class TestRng {
 public:
  explicit TestRng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::mt19937_64 engine_;
};

marketnet::DistMatrix random_dist_matrix(std::size_t n, TestRng& rng, double lo = 0.1,
                                         double hi = 1.9);
marketnet::CorrMatrix random_corr_matrix(std::size_t n, TestRng& rng);
marketnet::PricePanel random_panel(std::size_t t_rows, std::size_t n, TestRng& rng);

// Pearson correlation matrix computed pair by pair with separate passes for
// each sum, straight from the definition.
std::vector<double> naive_correlation(const marketnet::ReturnPanel& returns);

double pearson(const std::vector<double>& x, const std::vector<double>& y);

// Minimum total spanning-tree weight by enumerating all n^(n-2) labelled
// trees through Prufer sequences.
double exhaustive_mst_weight(const marketnet::DistMatrix& dist);

// Average-linkage clustering that rescans all inter-cluster averages from the
// original matrix at every step (no recurrence), same tie-break rule.
marketnet::MergeTree naive_upgma(const marketnet::DistMatrix& dist);

// Components via BFS over a dense adjacency matrix built from (corr, theta),
// reported with the same ordering convention as the library.
std::vector<std::vector<int>> bfs_components(const marketnet::CorrMatrix& corr, double theta);

// Per-vertex clustering coefficients via triple loops over the dense matrix.
std::vector<double> brute_clustering(const marketnet::CorrMatrix& corr, double theta);

// Log-log regression through raw normal equations (sum arrangement).
struct LogLogFit {
  double slope = 0.0;
  double stderr_slope = 0.0;
  double r_squared = 0.0;
};
LogLogFit normal_equations_loglog(const std::vector<std::pair<double, double>>& points);

// n draws from the discrete law p(k) proportional to k^(-gamma), k in
// [1, k_max], via inverse CDF on deterministic uniforms.
std::vector<int> sample_discrete_power_law(double gamma, int k_max, int n, std::uint64_t seed);

// Random ultrametric built from a random merge sequence with increasing
// heights; UPGMA must reproduce it exactly.
marketnet::DistMatrix random_ultrametric(std::size_t n, TestRng& rng);

}  // namespace oracles
