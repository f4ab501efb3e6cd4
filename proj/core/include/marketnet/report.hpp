#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "marketnet/correlation.hpp"
#include "marketnet/hierarchy.hpp"
#include "marketnet/mst.hpp"
#include "marketnet/panel.hpp"
#include "marketnet/powerlaw.hpp"
#include "marketnet/threshold.hpp"

namespace marketnet {

struct SweepGrid {
  double lo = 0.0;
  double hi = 0.9;
  double step = 0.05;
};

struct AnalyzeOptions {
  std::vector<double> explicit_thetas;
  std::vector<int> sigma_multiples = {1, 2, 3};
  double histogram_bin_width = 0.02;
  SweepGrid sweep;
  std::optional<FitRange> clustering_fit_range;  // theta range; default: positive sweep rows
  std::optional<FitRange> degree_fit_range;      // k range
  bool log_binning = false;                      // geometric binning before degree fits
  DegreeScope degree_scope = DegreeScope::largest_component;
  int top_hubs = 10;
  std::vector<double> band_cutoffs = {1.0, 1.2};
  BandConvention band_convention = BandConvention::merge_heights;
};

// Everything computed for one window, kept so callers can export artifacts
// without re-running the pipeline. `report` is the window's JSON block.
struct WindowAnalysis {
  std::string name;
  PricePanel panel;
  ReturnPanel returns;
  CorrMatrix corr;
  DistMatrix dist;
  CoefficientDistribution coefficients;
  std::map<std::string, ThresholdGraph> graphs;  // keyed by formatted theta
  std::vector<SweepRow> sweep;
  SpanningTree tree;
  MergeTree merge_tree;
  CopheneticMatrix cophenetic;
  nlohmann::json report;
};

WindowAnalysis analyze_window(const PricePanel& window_panel, const std::string& name,
                              const AnalyzeOptions& options);

struct InputDescription {
  std::string path;
  std::string format;  // "wide" | "long" | "synthetic"
  std::string fill = "none";
};

// Full report document. Serializing it with dump() is deterministic for
// identical inputs and options; no timestamps are embedded.
nlohmann::json build_report(std::span<const WindowAnalysis> windows, const InputDescription& input,
                            const AnalyzeOptions& options);

// Window-by-window comparison table extracted from a report.
nlohmann::json summary_from_report(const nlohmann::json& report);

// Minimal JSON Schema checker covering the subset the shipped schema uses
// (type, properties, required, items, enum, oneOf, patternProperties,
// additionalProperties, minItems, minimum). Returns human-readable problems;
// empty means the document validates.
std::vector<std::string> validate_schema(const nlohmann::json& document, const nlohmann::json& schema);

nlohmann::json fit_to_json(const PowerLawFit& fit);

}  // namespace marketnet
