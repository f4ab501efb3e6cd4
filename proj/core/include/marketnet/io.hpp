#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "marketnet/correlation.hpp"
#include "marketnet/hierarchy.hpp"
#include "marketnet/mst.hpp"
#include "marketnet/panel.hpp"
#include "marketnet/threshold.hpp"

namespace marketnet {

// Shortest decimal string that parses back to the same double.
std::string format_double(double value);

// Wide CSV (header "date,T1,T2,..."); reparsing yields an identical panel.
std::string write_wide_csv(const PricePanel& panel);

// Sector sidecar: one "ticker,sector" line per ticker, with a header.
std::string write_sectors_csv(const PricePanel& panel);
std::map<std::string, std::string> parse_sectors_file(std::string_view text);

std::string write_corr_csv(const CorrMatrix& corr);
std::string write_dist_csv(const DistMatrix& dist);

// Two-column plot-ready TSVs.
std::string histogram_tsv(const Histogram& histogram);
std::string sweep_tsv(std::span<const SweepRow> rows);

std::string to_dot(const ThresholdGraph& graph, const std::map<std::string, std::string>& sectors = {});
std::string to_dot(const SpanningTree& tree, const std::map<std::string, std::string>& sectors = {});
std::string to_graphml(const ThresholdGraph& graph, const std::map<std::string, std::string>& sectors = {});
std::string to_graphml(const SpanningTree& tree, const std::map<std::string, std::string>& sectors = {});
std::string to_edge_list(const ThresholdGraph& graph);
std::string to_edge_list(const SpanningTree& tree);

// Rooted Newick string with branch lengths chosen so that every internal
// node sits at its merge height and leaves sit at height zero.
std::string to_newick(const MergeTree& tree);

// Minimal reparsers for the writers above; used to verify that exports
// round-trip. They only understand the exact shape this library emits.
struct ParsedGraph {
  struct Edge {
    std::string a;
    std::string b;
    std::optional<double> weight;
  };
  std::vector<std::string> nodes;                 // labels, emission order
  std::map<std::string, std::string> sectors;
  std::vector<Edge> edges;
};

ParsedGraph parse_dot(std::string_view text);
ParsedGraph parse_graphml(std::string_view text);

struct ParsedDendrogram {
  std::vector<std::string> leaves;  // sorted
  CopheneticMatrix cophenetic;      // indexed by sorted leaf order
  double root_height = 0.0;
};

ParsedDendrogram parse_newick(std::string_view text);

}  // namespace marketnet
