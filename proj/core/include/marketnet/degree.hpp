#pragma once

#include <cstddef>
#include <map>
#include <span>

namespace marketnet {

// Degree histogram of a vertex set: counts per degree and the normalized pmf.
struct DegreeDistribution {
  std::map<int, int> counts;
  std::map<int, double> pmf;
  std::size_t n_vertices = 0;
};

DegreeDistribution degree_distribution_of(std::span<const int> degrees);

}  // namespace marketnet
