#include "marketnet/report.hpp"

#include <algorithm>
#include <regex>

#include "marketnet/error.hpp"
#include "marketnet/io.hpp"
#include "marketnet/stats.hpp"
#include "marketnet/version.hpp"

namespace marketnet {

namespace {

nlohmann::json stats_to_json(const DistStats& stats) {
  return {{"mean", stats.mean},
          {"std", stats.std_dev},
          {"skewness", stats.skewness},
          {"kurtosis", stats.kurtosis},
          {"n", stats.n}};
}

nlohmann::json degree_distribution_to_json(const DegreeDistribution& dd) {
  nlohmann::json counts = nlohmann::json::object();
  nlohmann::json pmf = nlohmann::json::object();
  for (const auto& [k, count] : dd.counts) counts[std::to_string(k)] = count;
  for (const auto& [k, p] : dd.pmf) pmf[std::to_string(k)] = p;
  return {{"counts", counts}, {"pmf", pmf}, {"n_vertices", dd.n_vertices}};
}

// Fits run on whatever the data offers; when a distribution has no fittable
// regime the failure is recorded instead of aborting the window.
template <typename Fn>
nlohmann::json fit_or_error(Fn&& fit_fn) {
  try {
    return fit_to_json(fit_fn());
  } catch (const Error& e) {
    return {{"error", e.what()}};
  }
}

std::string scope_name(DegreeScope scope) {
  return scope == DegreeScope::whole ? "whole" : "largest_component";
}

std::string band_convention_name(BandConvention convention) {
  switch (convention) {
    case BandConvention::merge_heights: return "merge_heights";
    case BandConvention::leaf_first_merge: return "leaf_first_merge";
    case BandConvention::all_pairs: return "all_pairs";
  }
  return "merge_heights";
}

PowerLawFit degree_fit(const DegreeDistribution& dd, const AnalyzeOptions& options) {
  if (options.log_binning) {
    return fit_power_law(log_binned_pmf(dd), options.degree_fit_range);
  }
  return fit_degree_exponent(dd, options.degree_fit_range);
}

}  // namespace

nlohmann::json fit_to_json(const PowerLawFit& fit) {
  return {{"exponent", fit.exponent},
          {"std_error", fit.std_error},
          {"r_squared", fit.r_squared},
          {"n_points", fit.n_points},
          {"min_x", fit.min_x},
          {"max_x", fit.max_x},
          {"formatted", format_exponent(fit)}};
}

WindowAnalysis analyze_window(const PricePanel& window_panel, const std::string& name,
                              const AnalyzeOptions& options) {
  WindowAnalysis wa;
  wa.name = name;
  wa.panel = window_panel;
  wa.returns = log_returns(wa.panel);
  wa.corr = cross_correlation(wa.returns);
  wa.dist = distance_matrix(wa.corr);
  wa.coefficients = coefficient_distribution(wa.corr, options.histogram_bin_width);

  nlohmann::json report;
  report["name"] = name;
  report["start"] = wa.panel.dates.front().to_string();
  report["end"] = wa.panel.dates.back().to_string();
  report["n_rows"] = wa.panel.rows();
  report["n_returns"] = wa.returns.rows();
  report["n_tickers"] = wa.panel.cols();

  // Table of distribution statistics for the window.
  {
    nlohmann::json window_stats;
    window_stats["returns"] = stats_to_json(dist_stats(wa.returns.raw));
    window_stats["correlation"] = stats_to_json(wa.coefficients.stats);
    window_stats["mean_volatility"] = mean_volatility(wa.returns).mean_volatility;
    window_stats["kurtosis"] = "raw";
    window_stats["volatility"] = "cross_sectional_std";
    report["window_stats"] = std::move(window_stats);
  }

  // Thresholds: requested sigma multiples plus explicit values, deduplicated
  // by their formatted key. A sigma threshold beyond [-1, 1] is kept as a
  // clamped boundary value (the resulting graph is simply empty or complete);
  // explicit thresholds must already be in range.
  std::vector<std::pair<double, std::string>> thetas;  // value, source
  if (!options.sigma_multiples.empty()) {
    auto sigma_values = sigma_thresholds(wa.corr, options.sigma_multiples);
    nlohmann::json sigma_json = nlohmann::json::array();
    for (std::size_t k = 0; k < sigma_values.size(); ++k) {
      sigma_json.push_back({{"multiple", options.sigma_multiples[k]}, {"theta", sigma_values[k]}});
      thetas.emplace_back(std::clamp(sigma_values[k], -1.0, 1.0),
                          "mean_plus_" + std::to_string(options.sigma_multiples[k]) + "_sigma");
    }
    report["sigma_thresholds"] = std::move(sigma_json);
  } else {
    report["sigma_thresholds"] = nlohmann::json::array();
  }
  for (double theta : options.explicit_thetas) {
    if (theta < -1.0 || theta > 1.0) {
      throw Error(errc::theta_out_of_range,
                  "threshold " + format_double(theta) + " outside [-1, 1]");
    }
    thetas.emplace_back(theta, "explicit");
  }

  nlohmann::json networks = nlohmann::json::object();
  for (const auto& [theta, source] : thetas) {
    std::string key = format_double(theta);
    if (wa.graphs.contains(key)) continue;
    auto graph = build_threshold_network(wa.corr, theta);
    auto components = connected_components(graph);
    auto clustering = clustering_coefficients(graph);

    nlohmann::json entry;
    entry["theta"] = theta;
    entry["source"] = source;
    entry["edge_count"] = graph.edges.size();
    entry["mean_degree"] = mean_degree(graph);
    entry["avg_clustering"] = clustering.average;
    entry["n_components"] = components.components.size();
    entry["largest_fraction"] = components.largest_fraction;
    nlohmann::json comp_json = nlohmann::json::array();
    for (const auto& component : components.components) {
      nlohmann::json members = nlohmann::json::array();
      for (int v : component) members.push_back(graph.tickers[v]);
      comp_json.push_back({{"size", component.size()},
                           {"small", component.size() <= 3},
                           {"members", std::move(members)}});
    }
    entry["components"] = std::move(comp_json);
    entry["degree_fit"] = fit_or_error([&] {
      return degree_fit(degree_distribution(graph, options.degree_scope), options);
    });
    try {
      entry["degree_distribution"] =
          degree_distribution_to_json(degree_distribution(graph, options.degree_scope));
      entry["degree_scope"] = scope_name(options.degree_scope);
    } catch (const Error&) {
      entry["degree_distribution"] =
          degree_distribution_to_json(degree_distribution(graph, DegreeScope::whole));
      entry["degree_scope"] = "whole";
    }
    wa.graphs.emplace(key, std::move(graph));
    networks[key] = std::move(entry);
  }
  report["threshold_networks"] = std::move(networks);

  // Sweep over the configured theta grid.
  {
    if (!(options.sweep.step > 0.0) || options.sweep.hi < options.sweep.lo) {
      throw Error(errc::invalid_spec, "sweep grid needs lo <= hi and step > 0");
    }
    std::vector<double> grid;
    for (int k = 0;; ++k) {
      double theta = options.sweep.lo + static_cast<double>(k) * options.sweep.step;
      if (theta > options.sweep.hi + 1e-12) break;
      // snap accumulated rounding back onto the grid bounds
      grid.push_back(std::clamp(theta, options.sweep.lo, options.sweep.hi));
    }
    wa.sweep = threshold_sweep(wa.corr, grid);
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : wa.sweep) {
      rows.push_back({{"theta", row.theta},
                      {"mean_degree", row.mean_degree},
                      {"avg_clustering", row.avg_clustering},
                      {"largest_fraction", row.largest_fraction},
                      {"edge_count", row.edge_count}});
    }
    report["sweep"] = std::move(rows);
  }

  // Minimum spanning tree block.
  {
    wa.tree = kruskal_mst(wa.dist);
    nlohmann::json mst;
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& edge : wa.tree.edges) {
      edges.push_back({{"a", edge.a},
                       {"b", edge.b},
                       {"ticker_a", wa.tree.tickers[edge.a]},
                       {"ticker_b", wa.tree.tickers[edge.b]},
                       {"weight", edge.weight}});
    }
    mst["edges"] = std::move(edges);
    mst["tree_length"] = average_tree_length(wa.tree);
    mst["mean_pairwise_path_length"] = mean_pairwise_path_length(wa.tree);
    auto dd = mst_degree_distribution(wa.tree);
    mst["degree_distribution"] = degree_distribution_to_json(dd);
    int top = std::min<int>(options.top_hubs, static_cast<int>(wa.tree.size()));
    nlohmann::json hubs = nlohmann::json::array();
    for (const auto& hub : hub_ranking(wa.tree, top)) {
      hubs.push_back({{"id", hub.id}, {"ticker", hub.ticker}, {"degree", hub.degree}});
    }
    mst["hubs"] = std::move(hubs);
    mst["degree_fit"] = fit_or_error([&] { return degree_fit(dd, options); });
    report["mst"] = std::move(mst);
  }

  // Hierarchy block.
  {
    wa.merge_tree = upgma(wa.dist);
    wa.cophenetic = cophenetic_matrix(wa.merge_tree);
    nlohmann::json hierarchy;
    nlohmann::json merges = nlohmann::json::array();
    for (const auto& merge : wa.merge_tree.merges) {
      merges.push_back({{"left", merge.left},
                        {"right", merge.right},
                        {"height", merge.height},
                        {"size", merge.size}});
    }
    hierarchy["merges"] = std::move(merges);
    hierarchy["ccc"] = cophenetic_correlation(wa.dist, wa.cophenetic);
    nlohmann::json bands;
    bands["cutoffs"] = options.band_cutoffs;
    bands["convention"] = band_convention_name(options.band_convention);
    bands["counts"] = pair_height_bands(wa.merge_tree, options.band_cutoffs, options.band_convention);
    bands["counts_merge_heights"] =
        pair_height_bands(wa.merge_tree, options.band_cutoffs, BandConvention::merge_heights);
    bands["counts_leaf_first_merge"] =
        pair_height_bands(wa.merge_tree, options.band_cutoffs, BandConvention::leaf_first_merge);
    bands["counts_all_pairs"] =
        pair_height_bands(wa.merge_tree, options.band_cutoffs, BandConvention::all_pairs);
    hierarchy["bands"] = std::move(bands);
    report["hierarchy"] = std::move(hierarchy);
  }

  // Fit summary block.
  {
    nlohmann::json fits;
    fits["mst_degree"] = report["mst"]["degree_fit"];
    fits["clustering_scaling"] = fit_or_error([&] {
      FitRange range;
      if (options.clustering_fit_range) {
        range = *options.clustering_fit_range;
      } else {
        // default: every sweep row with positive theta and clustering
        range.lo = 0.0;
        range.hi = 0.0;
        bool any = false;
        for (const auto& row : wa.sweep) {
          if (row.theta > 0.0 && row.avg_clustering > 0.0) {
            if (!any) range.lo = row.theta;
            range.hi = row.theta;
            any = true;
          }
        }
        if (!any) throw Error(errc::too_few_points, "no positive sweep rows to fit");
      }
      return fit_clustering_scaling(wa.sweep, range);
    });
    report["fits"] = std::move(fits);
  }

  wa.report = std::move(report);
  return wa;
}

nlohmann::json build_report(std::span<const WindowAnalysis> windows, const InputDescription& input,
                            const AnalyzeOptions& options) {
  nlohmann::json report;
  report["tool"] = "marketnet";
  report["version"] = version;
  report["conventions"] = {
      {"correlation", "pearson_raw_returns"},
      {"sigma_denominator", "sample"},
      {"kurtosis", "raw"},
      {"volatility", "cross_sectional_std"},
      {"tree_length", "mst_edge_sum_over_n"},
      {"threshold_rule", "edge_when_c_ge_theta"},
      {"threshold_std", "sample"},
      {"fit_binning", options.log_binning ? "pmf_log_bins" : "pmf_unit_bins"},
      {"degree_fit_scope", scope_name(options.degree_scope)},
      {"band_convention", band_convention_name(options.band_convention)},
      {"histogram_bin_width", options.histogram_bin_width},
  };
  report["input"] = {{"path", input.path}, {"format", input.format}, {"fill", input.fill}};
  nlohmann::json window_json = nlohmann::json::array();
  for (const auto& wa : windows) window_json.push_back(wa.report);
  report["windows"] = std::move(window_json);
  return report;
}

nlohmann::json summary_from_report(const nlohmann::json& report) {
  nlohmann::json summary;
  summary["tool"] = report.at("tool");
  summary["version"] = report.at("version");
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& window : report.at("windows")) {
    nlohmann::json row;
    row["name"] = window.at("name");
    row["mean_correlation"] = window.at("window_stats").at("correlation").at("mean");
    row["mean_volatility"] = window.at("window_stats").at("mean_volatility");
    row["tree_length"] = window.at("mst").at("tree_length");
    row["ccc"] = window.at("hierarchy").at("ccc");
    row["band_counts"] = window.at("hierarchy").at("bands").at("counts");
    const auto& mst_fit = window.at("mst").at("degree_fit");
    row["mst_degree_exponent"] =
        mst_fit.contains("formatted") ? mst_fit.at("formatted") : nlohmann::json(nullptr);
    if (!window.at("sigma_thresholds").empty()) {
      row["theta_1sigma"] = window.at("sigma_thresholds").at(0).at("theta");
    }
    rows.push_back(std::move(row));
  }
  summary["windows"] = std::move(rows);
  return summary;
}

namespace {

bool type_matches(const nlohmann::json& value, const std::string& type) {
  if (type == "object") return value.is_object();
  if (type == "array") return value.is_array();
  if (type == "string") return value.is_string();
  if (type == "number") return value.is_number();
  if (type == "integer") return value.is_number_integer();
  if (type == "boolean") return value.is_boolean();
  if (type == "null") return value.is_null();
  return false;
}

void validate_node(const nlohmann::json& value, const nlohmann::json& schema,
                   const nlohmann::json& root, const std::string& path,
                   std::vector<std::string>& problems) {
  if (schema.contains("$ref")) {
    const std::string ref = schema.at("$ref").get<std::string>();
    const std::string prefix = "#/definitions/";
    if (ref.rfind(prefix, 0) == 0 && root.contains("definitions")) {
      validate_node(value, root.at("definitions").at(ref.substr(prefix.size())), root, path,
                    problems);
    } else {
      problems.push_back(path + ": unsupported $ref '" + ref + "'");
    }
    return;
  }
  if (schema.contains("oneOf")) {
    std::size_t matched = 0;
    for (const auto& option : schema.at("oneOf")) {
      std::vector<std::string> local;
      validate_node(value, option, root, path, local);
      if (local.empty()) ++matched;
    }
    if (matched != 1) {
      problems.push_back(path + ": matches " + std::to_string(matched) + " oneOf branches, expected 1");
    }
    return;
  }
  if (schema.contains("type")) {
    const auto& type = schema.at("type");
    bool ok = false;
    if (type.is_array()) {
      for (const auto& t : type) ok = ok || type_matches(value, t.get<std::string>());
    } else {
      ok = type_matches(value, type.get<std::string>());
    }
    if (!ok) {
      problems.push_back(path + ": expected type " + type.dump() + ", got " +
                         std::string(value.type_name()));
      return;
    }
  }
  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& option : schema.at("enum")) found = found || option == value;
    if (!found) problems.push_back(path + ": value " + value.dump() + " not in enum");
  }
  if (schema.contains("minimum") && value.is_number()) {
    if (value.get<double>() < schema.at("minimum").get<double>()) {
      problems.push_back(path + ": below minimum " + schema.at("minimum").dump());
    }
  }
  if (value.is_object()) {
    if (schema.contains("required")) {
      for (const auto& key : schema.at("required")) {
        if (!value.contains(key.get<std::string>())) {
          problems.push_back(path + ": missing required key '" + key.get<std::string>() + "'");
        }
      }
    }
    const auto* properties = schema.contains("properties") ? &schema.at("properties") : nullptr;
    for (const auto& [key, member] : value.items()) {
      bool handled = false;
      if (properties && properties->contains(key)) {
        validate_node(member, properties->at(key), root, path + "/" + key, problems);
        handled = true;
      }
      if (!handled && schema.contains("patternProperties")) {
        for (const auto& [pattern, sub] : schema.at("patternProperties").items()) {
          if (std::regex_search(key, std::regex(pattern))) {
            validate_node(member, sub, root, path + "/" + key, problems);
            handled = true;
          }
        }
      }
      if (!handled && schema.contains("additionalProperties")) {
        const auto& extra = schema.at("additionalProperties");
        if (extra.is_boolean() && !extra.get<bool>()) {
          problems.push_back(path + ": unexpected key '" + key + "'");
        } else if (extra.is_object()) {
          validate_node(member, extra, root, path + "/" + key, problems);
        }
      }
    }
  }
  if (value.is_array()) {
    if (schema.contains("minItems") &&
        value.size() < schema.at("minItems").get<std::size_t>()) {
      problems.push_back(path + ": fewer than minItems items");
    }
    if (schema.contains("items")) {
      for (std::size_t k = 0; k < value.size(); ++k) {
        validate_node(value[k], schema.at("items"), root, path + "/" + std::to_string(k), problems);
      }
    }
  }
}

}  // namespace

std::vector<std::string> validate_schema(const nlohmann::json& document,
                                         const nlohmann::json& schema) {
  std::vector<std::string> problems;
  validate_node(document, schema, schema, "", problems);
  return problems;
}

}  // namespace marketnet
