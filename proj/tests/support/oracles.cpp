#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <string>

namespace oracles {

namespace {

std::vector<std::string> make_tickers(std::size_t n) {
  std::vector<std::string> tickers;
  tickers.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::string name = "T";
    name += static_cast<char>('A' + i / 26);
    name += static_cast<char>('A' + i % 26);
    tickers.push_back(std::move(name));
  }
  return tickers;
}

}  // namespace

marketnet::DistMatrix random_dist_matrix(std::size_t n, TestRng& rng, double lo, double hi) {
  marketnet::DistMatrix dist;
  dist.tickers = make_tickers(n);
  dist.values.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) dist.set(i, j, rng.uniform(lo, hi));
  }
  return dist;
}

marketnet::CorrMatrix random_corr_matrix(std::size_t n, TestRng& rng) {
  marketnet::CorrMatrix corr;
  corr.tickers = make_tickers(n);
  corr.values.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) corr.values[i * n + i] = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) corr.set(i, j, rng.uniform(-1.0, 1.0));
  }
  return corr;
}

marketnet::PricePanel random_panel(std::size_t t_rows, std::size_t n, TestRng& rng) {
  marketnet::PricePanel panel;
  panel.tickers = make_tickers(n);
  marketnet::Date date{2010, 1, 1};
  std::vector<double> log_price(n);
  for (std::size_t i = 0; i < n; ++i) log_price[i] = std::log(rng.uniform(10.0, 200.0));
  for (std::size_t t = 0; t < t_rows; ++t) {
    panel.dates.push_back(date);
    date = date.next_day();
    for (std::size_t i = 0; i < n; ++i) {
      panel.prices.push_back(std::exp(log_price[i]));
      log_price[i] += rng.uniform(-0.05, 0.05);
    }
  }
  return panel;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  double sxy = 0.0;
  for (std::size_t k = 0; k < n; ++k) sxy += (x[k] - mx) * (y[k] - my);
  double sxx = 0.0;
  for (std::size_t k = 0; k < n; ++k) sxx += (x[k] - mx) * (x[k] - mx);
  double syy = 0.0;
  for (std::size_t k = 0; k < n; ++k) syy += (y[k] - my) * (y[k] - my);
  return sxy / (std::sqrt(sxx) * std::sqrt(syy));
}

std::vector<double> naive_correlation(const marketnet::ReturnPanel& returns) {
  const std::size_t n = returns.cols();
  std::vector<double> matrix(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) matrix[i * n + i] = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      std::vector<double> x, y;
      for (std::size_t t = 0; t < returns.rows(); ++t) {
        x.push_back(returns.raw_at(t, i));
        y.push_back(returns.raw_at(t, j));
      }
      matrix[i * n + j] = std::clamp(pearson(x, y), -1.0, 1.0);
    }
  }
  return matrix;
}

double exhaustive_mst_weight(const marketnet::DistMatrix& dist) {
  const int n = static_cast<int>(dist.size());
  if (n == 2) return dist.at(0, 1);

  // Iterate every Prufer sequence of length n-2, decode it to a tree, sum.
  std::vector<int> sequence(n - 2, 0);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    // standard decode: repeatedly attach the smallest leaf to the next entry
    std::vector<int> deg(n, 1);
    for (int v : sequence) ++deg[v];
    double total = 0.0;
    std::vector<bool> used(n, false);
    for (int v : sequence) {
      int leaf = -1;
      for (int u = 0; u < n; ++u) {
        if (!used[u] && deg[u] == 1) {
          leaf = u;
          break;
        }
      }
      total += dist.at(leaf, v);
      used[leaf] = true;
      --deg[leaf];
      --deg[v];
    }
    int a = -1, b = -1;
    for (int u = 0; u < n; ++u) {
      if (!used[u] && deg[u] == 1) {
        if (a < 0) a = u;
        else b = u;
      }
    }
    total += dist.at(a, b);
    best = std::min(best, total);

    int pos = n - 3;
    while (pos >= 0 && sequence[pos] == n - 1) {
      sequence[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++sequence[pos];
  }
  return best;
}

marketnet::MergeTree naive_upgma(const marketnet::DistMatrix& dist) {
  const std::size_t n = dist.size();
  struct Cluster {
    int node;
    std::vector<int> members;  // ascending leaf ids
  };
  std::vector<Cluster> clusters;
  for (std::size_t i = 0; i < n; ++i) clusters.push_back({static_cast<int>(i), {static_cast<int>(i)}});

  marketnet::MergeTree tree;
  tree.leaves = dist.tickers;
  int next_node = static_cast<int>(n);
  while (clusters.size() > 1) {
    double best_d = std::numeric_limits<double>::infinity();
    std::size_t best_a = 0, best_b = 0;
    int best_lo = 0, best_hi = 0;
    bool found = false;
    for (std::size_t a = 0; a < clusters.size(); ++a) {
      for (std::size_t b = a + 1; b < clusters.size(); ++b) {
        double sum = 0.0;
        for (int i : clusters[a].members) {
          for (int j : clusters[b].members) sum += dist.at(i, j);
        }
        double avg = sum / (static_cast<double>(clusters[a].members.size()) *
                            static_cast<double>(clusters[b].members.size()));
        int lo = std::min(clusters[a].members.front(), clusters[b].members.front());
        int hi = std::max(clusters[a].members.front(), clusters[b].members.front());
        if (!found || avg < best_d ||
            (avg == best_d && (lo < best_lo || (lo == best_lo && hi < best_hi)))) {
          found = true;
          best_d = avg;
          best_a = a;
          best_b = b;
          best_lo = lo;
          best_hi = hi;
        }
      }
    }
    auto& ca = clusters[best_a];
    auto& cb = clusters[best_b];
    bool a_left = ca.members.front() < cb.members.front();
    marketnet::Merge merge;
    merge.left = a_left ? ca.node : cb.node;
    merge.right = a_left ? cb.node : ca.node;
    merge.height = best_d;
    merge.size = static_cast<int>(ca.members.size() + cb.members.size());
    tree.merges.push_back(merge);

    std::vector<int> merged(ca.members.size() + cb.members.size());
    std::merge(ca.members.begin(), ca.members.end(), cb.members.begin(), cb.members.end(),
               merged.begin());
    ca.members = std::move(merged);
    ca.node = next_node++;
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(best_b));
  }
  return tree;
}

std::vector<std::vector<int>> bfs_components(const marketnet::CorrMatrix& corr, double theta) {
  const std::size_t n = corr.size();
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && corr.at(i, j) >= theta) adj[i][j] = true;
    }
  }
  std::vector<bool> seen(n, false);
  std::vector<std::vector<int>> components;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<int> component;
    std::deque<int> queue{static_cast<int>(s)};
    seen[s] = true;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      component.push_back(v);
      for (std::size_t u = 0; u < n; ++u) {
        if (adj[v][u] && !seen[u]) {
          seen[u] = true;
          queue.push_back(static_cast<int>(u));
        }
      }
    }
    std::sort(component.begin(), component.end());
    components.push_back(std::move(component));
  }
  std::sort(components.begin(), components.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              if (a.size() != b.size()) return a.size() > b.size();
              return a.front() < b.front();
            });
  return components;
}

std::vector<double> brute_clustering(const marketnet::CorrMatrix& corr, double theta) {
  const std::size_t n = corr.size();
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && corr.at(i, j) >= theta) adj[i][j] = true;
    }
  }
  std::vector<double> coefficients(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    int neighbors = 0;
    for (std::size_t u = 0; u < n; ++u) neighbors += adj[v][u] ? 1 : 0;
    if (neighbors < 2) continue;
    int linked = 0;
    for (std::size_t a = 0; a < n; ++a) {
      if (!adj[v][a]) continue;
      for (std::size_t b = a + 1; b < n; ++b) {
        if (adj[v][b] && adj[a][b]) ++linked;
      }
    }
    coefficients[v] = 2.0 * linked / (static_cast<double>(neighbors) * (neighbors - 1));
  }
  return coefficients;
}

LogLogFit normal_equations_loglog(const std::vector<std::pair<double, double>>& points) {
  const double n = static_cast<double>(points.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [x, y] : points) {
    double lx = std::log(x);
    double ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    syy += ly * ly;
  }
  LogLogFit fit;
  double denom = n * sxx - sx * sx;
  fit.slope = (n * sxy - sx * sy) / denom;
  double intercept = (sy - fit.slope * sx) / n;
  double ss_res = 0.0;
  for (const auto& [x, y] : points) {
    double residual = std::log(y) - (intercept + fit.slope * std::log(x));
    ss_res += residual * residual;
  }
  double ss_tot = syy - sy * sy / n;
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  fit.stderr_slope = std::sqrt(ss_res / (n - 2.0) / (sxx - sx * sx / n));
  return fit;
}

std::vector<int> sample_discrete_power_law(double gamma, int k_max, int n, std::uint64_t seed) {
  std::vector<double> cdf(k_max + 1, 0.0);
  double z = 0.0;
  for (int k = 1; k <= k_max; ++k) z += std::pow(static_cast<double>(k), -gamma);
  double acc = 0.0;
  for (int k = 1; k <= k_max; ++k) {
    acc += std::pow(static_cast<double>(k), -gamma) / z;
    cdf[k] = acc;
  }
  cdf[k_max] = 1.0;

  TestRng rng(seed);
  std::vector<int> draws;
  draws.reserve(n);
  for (int s = 0; s < n; ++s) {
    double u = rng.uniform();
    int k = 1;
    while (k < k_max && cdf[k] < u) ++k;
    draws.push_back(k);
  }
  return draws;
}

marketnet::DistMatrix random_ultrametric(std::size_t n, TestRng& rng) {
  marketnet::DistMatrix dist;
  dist.tickers = make_tickers(n);
  dist.values.assign(n * n, 0.0);

  std::vector<std::vector<int>> clusters;
  for (std::size_t i = 0; i < n; ++i) clusters.push_back({static_cast<int>(i)});
  double height = 0.0;
  while (clusters.size() > 1) {
    height += rng.uniform(0.05, 0.3);
    int a = rng.uniform_int(0, static_cast<int>(clusters.size()) - 1);
    int b = rng.uniform_int(0, static_cast<int>(clusters.size()) - 2);
    if (b >= a) ++b;
    for (int i : clusters[a]) {
      for (int j : clusters[b]) dist.set(i, j, height);
    }
    clusters[a].insert(clusters[a].end(), clusters[b].begin(), clusters[b].end());
    clusters.erase(clusters.begin() + b);
  }
  return dist;
}

}  // namespace oracles
