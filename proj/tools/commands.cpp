#include "commands.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "marketnet/error.hpp"
#include "marketnet/io.hpp"
#include "marketnet/synth.hpp"

namespace fs = std::filesystem;

namespace marketnet::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(errc::io_error, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(errc::io_error, "cannot write '" + path.string() + "'");
  out << content;
}

double parse_flag_double(std::string_view text, std::string_view flag) {
  double value = 0.0;
  auto result = std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc() || result.ptr != text.data() + text.size()) {
    throw Error(errc::invalid_spec,
                std::string(flag) + " expects a number, got '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split_on(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto end = text.find(sep, start);
    if (end == std::string_view::npos) {
      parts.push_back(text.substr(start));
      break;
    }
    parts.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return parts;
}

CsvFormat parse_format(const std::string& format) {
  if (format == "wide") return CsvFormat::wide;
  if (format == "long") return CsvFormat::long_form;
  throw Error(errc::unknown_format, "input format must be wide or long, got '" + format + "'");
}

FillPolicy parse_fill(const std::string& fill) {
  if (fill == "none") return FillPolicy::strict;
  if (fill == "forward") return FillPolicy::forward;
  throw Error(errc::unknown_format, "fill policy must be none or forward, got '" + fill + "'");
}

FitRange parse_range(std::string_view text, std::string_view flag) {
  auto parts = split_on(text, ':');
  if (parts.size() != 2) {
    throw Error(errc::invalid_spec, std::string(flag) + " expects lo:hi");
  }
  FitRange range;
  range.lo = parse_flag_double(parts[0], flag);
  range.hi = parse_flag_double(parts[1], flag);
  if (range.hi < range.lo) {
    throw Error(errc::invalid_spec, std::string(flag) + " has hi < lo");
  }
  return range;
}

AnalyzeOptions build_options(const AnalyzeArgs& args) {
  AnalyzeOptions options;
  options.explicit_thetas = args.thetas;
  if (!args.sigma_multiples.empty()) {
    options.sigma_multiples = args.sigma_multiples;
  } else if (!args.thetas.empty()) {
    options.sigma_multiples.clear();  // explicit thetas replace the default multiples
  }
  options.histogram_bin_width = args.bin_width;
  options.top_hubs = args.top_hubs;
  if (!args.sweep.empty()) {
    auto parts = split_on(args.sweep, ':');
    if (parts.size() != 3) throw Error(errc::invalid_spec, "--sweep expects lo:hi:step");
    options.sweep.lo = parse_flag_double(parts[0], "--sweep");
    options.sweep.hi = parse_flag_double(parts[1], "--sweep");
    options.sweep.step = parse_flag_double(parts[2], "--sweep");
  }
  if (!args.fit_range.empty()) options.clustering_fit_range = parse_range(args.fit_range, "--fit-range");
  if (!args.k_range.empty()) options.degree_fit_range = parse_range(args.k_range, "--k-range");
  options.log_binning = args.log_binning;
  if (args.scope == "whole") {
    options.degree_scope = DegreeScope::whole;
  } else if (args.scope == "largest") {
    options.degree_scope = DegreeScope::largest_component;
  } else {
    throw Error(errc::unknown_format, "scope must be whole or largest, got '" + args.scope + "'");
  }
  options.band_cutoffs.clear();
  for (auto part : split_on(args.band_cutoffs, ',')) {
    options.band_cutoffs.push_back(parse_flag_double(part, "--band-cutoffs"));
  }
  if (args.band_convention == "merge_heights") {
    options.band_convention = BandConvention::merge_heights;
  } else if (args.band_convention == "leaf_first_merge") {
    options.band_convention = BandConvention::leaf_first_merge;
  } else if (args.band_convention == "all_pairs") {
    options.band_convention = BandConvention::all_pairs;
  } else {
    throw Error(errc::unknown_format, "unknown band convention '" + args.band_convention + "'");
  }
  return options;
}

// --window flags take precedence over the windows file; with neither, the
// whole panel is one window.
std::vector<WindowSpec> resolve_windows(const AnalyzeArgs& args, const PricePanel& panel) {
  std::vector<WindowSpec> windows;
  for (const auto& text : args.windows) windows.push_back(WindowSpec::parse(text));
  if (windows.empty() && !args.windows_file.empty()) {
    windows = parse_windows_file(read_file(args.windows_file));
  }
  if (windows.empty()) {
    windows.push_back({"full", panel.dates.front(), panel.dates.back()});
  }
  return windows;
}

void write_window_exports(const fs::path& dir, const WindowAnalysis& wa,
                          const std::vector<std::string>& exports) {
  const auto& sectors = wa.panel.sectors;
  for (const auto& format : exports) {
    if (format == "dot") {
      write_file(dir / "mst.dot", to_dot(wa.tree, sectors));
      for (const auto& [key, graph] : wa.graphs) {
        write_file(dir / ("threshold_" + key + ".dot"), to_dot(graph, sectors));
      }
    } else if (format == "graphml") {
      write_file(dir / "mst.graphml", to_graphml(wa.tree, sectors));
      for (const auto& [key, graph] : wa.graphs) {
        write_file(dir / ("threshold_" + key + ".graphml"), to_graphml(graph, sectors));
      }
    } else if (format == "edgelist") {
      write_file(dir / "mst.edgelist", to_edge_list(wa.tree));
      for (const auto& [key, graph] : wa.graphs) {
        write_file(dir / ("threshold_" + key + ".edgelist"), to_edge_list(graph));
      }
    } else if (format == "newick") {
      write_file(dir / "dendrogram.newick", to_newick(wa.merge_tree));
    } else if (format == "json") {
      write_file(dir / "mst.json", wa.report.at("mst").dump(2) + "\n");
      write_file(dir / "dendrogram.json", wa.report.at("hierarchy").dump(2) + "\n");
      nlohmann::json corr_doc{{"tickers", wa.corr.tickers}, {"values", wa.corr.values}};
      nlohmann::json dist_doc{{"tickers", wa.dist.tickers}, {"values", wa.dist.values}};
      write_file(dir / "correlation.json", corr_doc.dump(2) + "\n");
      write_file(dir / "distance.json", dist_doc.dump(2) + "\n");
    } else if (format == "csv") {
      write_file(dir / "correlation.csv", write_corr_csv(wa.corr));
      write_file(dir / "distance.csv", write_dist_csv(wa.dist));
    } else {
      throw Error(errc::unknown_format, "unknown export format '" + format + "'");
    }
  }
}

}  // namespace

int run_analyze(const AnalyzeArgs& args) {
  if (args.input.empty()) throw Error(errc::invalid_spec, "--input is required");
  PricePanel panel = parse_csv(read_file(args.input), parse_format(args.format), parse_fill(args.fill));
  if (!args.sectors_file.empty()) panel.sectors = parse_sectors_file(read_file(args.sectors_file));
  AnalyzeOptions options = build_options(args);
  auto windows = resolve_windows(args, panel);

  std::vector<WindowAnalysis> analyses;
  analyses.reserve(windows.size());
  for (const auto& window : windows) {
    try {
      analyses.push_back(analyze_window(slice_window(panel, window), window.name, options));
    } catch (const Error& e) {
      throw Error(e.code(), "window '" + window.name + "': " + e.what());
    }
  }

  const fs::path out_dir(args.out_dir);
  for (const auto& wa : analyses) {
    const fs::path dir = out_dir / wa.name;
    write_file(dir / "histogram.tsv", histogram_tsv(wa.coefficients.histogram));
    write_file(dir / "sweep.tsv", sweep_tsv(wa.sweep));
    write_window_exports(dir, wa, args.exports);
  }

  InputDescription input{args.input, args.format, args.fill};
  auto report = build_report(analyses, input, options);
  write_file(out_dir / "report.json", report.dump(2) + "\n");
  write_file(out_dir / "summary.json", summary_from_report(report).dump(2) + "\n");

  for (const auto& wa : analyses) {
    std::cout << "window " << wa.name << ": " << wa.panel.cols() << " tickers, "
              << wa.returns.rows() << " returns, mean correlation "
              << wa.report.at("window_stats").at("correlation").at("mean").get<double>() << "\n";
  }
  std::cout << "report written to " << (out_dir / "report.json").string() << "\n";
  return 0;
}

int run_synth(const SynthArgs& args) {
  SynthSpec spec = args.spec_file.empty() ? crisis_scenario() : parse_synth_spec(read_file(args.spec_file));
  if (args.seed) spec.seed = *args.seed;
  PricePanel panel = generate(spec);
  write_file(args.out, write_wide_csv(panel));
  if (!args.sectors_out.empty()) write_file(args.sectors_out, write_sectors_csv(panel));
  if (!args.windows_out.empty()) {
    std::string text = "name,start,end\n";
    for (const auto& window : regime_windows(spec)) {
      text += window.name + "," + window.start.to_string() + "," + window.end.to_string() + "\n";
    }
    write_file(args.windows_out, text);
  }
  std::cout << "wrote " << panel.rows() << " rows x " << panel.cols() << " tickers to " << args.out
            << "\n";
  return 0;
}

int run_export(const ExportArgs& args) {
  if (args.input.empty()) throw Error(errc::invalid_spec, "--input is required");
  if (args.out.empty()) throw Error(errc::invalid_spec, "--out is required");
  PricePanel panel = parse_csv(read_file(args.input), parse_format(args.format), parse_fill(args.fill));
  if (!args.sectors_file.empty()) panel.sectors = parse_sectors_file(read_file(args.sectors_file));
  if (!args.window.empty()) {
    panel = slice_window(panel, WindowSpec::parse(args.window));
  }
  auto returns = log_returns(panel);
  auto corr = cross_correlation(returns);
  const auto& sectors = panel.sectors;

  std::string content;
  if (args.what == "mst") {
    auto tree = kruskal_mst(distance_matrix(corr));
    if (args.as == "dot") content = to_dot(tree, sectors);
    else if (args.as == "graphml") content = to_graphml(tree, sectors);
    else if (args.as == "edgelist") content = to_edge_list(tree);
    else if (args.as == "json") {
      nlohmann::json doc;
      doc["tickers"] = tree.tickers;
      nlohmann::json edges = nlohmann::json::array();
      for (const auto& edge : tree.edges) {
        edges.push_back({{"a", edge.a}, {"b", edge.b}, {"weight", edge.weight}});
      }
      doc["edges"] = std::move(edges);
      content = doc.dump(2) + "\n";
    } else {
      throw Error(errc::unknown_format, "mst export supports dot|graphml|edgelist|json");
    }
  } else if (args.what == "threshold") {
    double theta = 0.0;
    if (args.theta) {
      theta = *args.theta;
    } else if (args.sigma_multiple) {
      int multiples[] = {*args.sigma_multiple};
      theta = sigma_thresholds(corr, multiples).front();
    } else {
      throw Error(errc::missing_artifact, "threshold export needs --theta or --sigma-mult");
    }
    auto graph = build_threshold_network(corr, theta);
    if (args.as == "dot") content = to_dot(graph, sectors);
    else if (args.as == "graphml") content = to_graphml(graph, sectors);
    else if (args.as == "edgelist") content = to_edge_list(graph);
    else if (args.as == "json") {
      nlohmann::json doc;
      doc["theta"] = theta;
      doc["tickers"] = graph.tickers;
      nlohmann::json edges = nlohmann::json::array();
      for (const auto& [a, b] : graph.edges) edges.push_back({{"a", a}, {"b", b}});
      doc["edges"] = std::move(edges);
      content = doc.dump(2) + "\n";
    } else {
      throw Error(errc::unknown_format, "threshold export supports dot|graphml|edgelist|json");
    }
  } else if (args.what == "dendrogram") {
    auto tree = upgma(distance_matrix(corr));
    if (args.as == "newick") {
      content = to_newick(tree);
    } else if (args.as == "json") {
      nlohmann::json doc;
      doc["leaves"] = tree.leaves;
      nlohmann::json merges = nlohmann::json::array();
      for (const auto& merge : tree.merges) {
        merges.push_back({{"left", merge.left},
                          {"right", merge.right},
                          {"height", merge.height},
                          {"size", merge.size}});
      }
      doc["merges"] = std::move(merges);
      content = doc.dump(2) + "\n";
    } else {
      throw Error(errc::unknown_format, "dendrogram export supports newick|json");
    }
  } else {
    throw Error(errc::unknown_format, "--what must be mst, threshold or dendrogram");
  }

  write_file(args.out, content);
  std::cout << "wrote " << args.out << "\n";
  return 0;
}

}  // namespace marketnet::cli
