#include "marketnet/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "marketnet/error.hpp"

namespace marketnet {

std::string format_double(double value) {
  char buffer[32];
  auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

std::string write_wide_csv(const PricePanel& panel) {
  std::string out = "date";
  for (const auto& ticker : panel.tickers) {
    out += ',';
    out += ticker;
  }
  out += '\n';
  for (std::size_t t = 0; t < panel.rows(); ++t) {
    out += panel.dates[t].to_string();
    for (std::size_t i = 0; i < panel.cols(); ++i) {
      out += ',';
      out += format_double(panel.price(t, i));
    }
    out += '\n';
  }
  return out;
}

std::string write_sectors_csv(const PricePanel& panel) {
  std::string out = "ticker,sector\n";
  for (const auto& ticker : panel.tickers) {
    out += ticker;
    out += ',';
    if (auto it = panel.sectors.find(ticker); it != panel.sectors.end()) out += it->second;
    out += '\n';
  }
  return out;
}

std::map<std::string, std::string> parse_sectors_file(std::string_view text) {
  std::map<std::string, std::string> sectors;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    start = end + 1;
    if (line.empty() || line.front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    auto comma = line.find(',');
    if (comma == std::string_view::npos) {
      throw Error(errc::bad_header, "expected ticker,sector, got '" + std::string(line) + "'");
    }
    std::string ticker(line.substr(0, comma));
    std::string sector(line.substr(comma + 1));
    if (ticker == "ticker" && sector == "sector") {
      if (end == text.size()) break;
      continue;
    }
    if (!sectors.emplace(std::move(ticker), std::move(sector)).second) {
      throw Error(errc::duplicate_entry, "ticker labelled twice in sector file");
    }
    if (end == text.size()) break;
  }
  return sectors;
}

namespace {

template <typename Matrix>
std::string write_matrix_csv(const Matrix& matrix) {
  std::string out = "ticker";
  for (const auto& ticker : matrix.tickers) {
    out += ',';
    out += ticker;
  }
  out += '\n';
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    out += matrix.tickers[i];
    for (std::size_t j = 0; j < matrix.size(); ++j) {
      out += ',';
      out += format_double(matrix.at(i, j));
    }
    out += '\n';
  }
  return out;
}

}  // namespace

std::string write_corr_csv(const CorrMatrix& corr) { return write_matrix_csv(corr); }
std::string write_dist_csv(const DistMatrix& dist) { return write_matrix_csv(dist); }

std::string histogram_tsv(const Histogram& histogram) {
  std::string out = "# bin_center\tdensity\n";
  for (std::size_t k = 0; k < histogram.centers.size(); ++k) {
    out += format_double(histogram.centers[k]);
    out += '\t';
    out += format_double(histogram.densities[k]);
    out += '\n';
  }
  return out;
}

std::string sweep_tsv(std::span<const SweepRow> rows) {
  std::string out = "theta\tmean_degree\tavg_clustering\tlargest_fraction\tedge_count\n";
  for (const auto& row : rows) {
    out += format_double(row.theta);
    out += '\t';
    out += format_double(row.mean_degree);
    out += '\t';
    out += format_double(row.avg_clustering);
    out += '\t';
    out += format_double(row.largest_fraction);
    out += '\t';
    out += std::to_string(row.edge_count);
    out += '\n';
  }
  return out;
}

namespace {

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string xml_unescape(std::string_view text) {
  std::string out;
  for (std::size_t k = 0; k < text.size(); ++k) {
    if (text[k] != '&') {
      out += text[k];
      continue;
    }
    std::string_view rest = text.substr(k);
    if (rest.starts_with("&amp;")) { out += '&'; k += 4; }
    else if (rest.starts_with("&lt;")) { out += '<'; k += 3; }
    else if (rest.starts_with("&gt;")) { out += '>'; k += 3; }
    else if (rest.starts_with("&quot;")) { out += '"'; k += 5; }
    else if (rest.starts_with("&apos;")) { out += '\''; k += 5; }
    else out += text[k];
  }
  return out;
}

std::string dot_node_line(int id, const std::string& ticker,
                          const std::map<std::string, std::string>& sectors) {
  std::string line = "  " + std::to_string(id) + " [label=\"" + ticker + "\"";
  if (auto it = sectors.find(ticker); it != sectors.end()) {
    line += " sector=\"" + it->second + "\"";
  }
  line += "];\n";
  return line;
}

struct EdgeView {
  int a;
  int b;
  std::optional<double> weight;
};

std::string graph_to_dot(const std::string& name, const std::vector<std::string>& tickers,
                         const std::vector<EdgeView>& edges,
                         const std::map<std::string, std::string>& sectors) {
  std::string out = "graph " + name + " {\n";
  for (std::size_t v = 0; v < tickers.size(); ++v) {
    out += dot_node_line(static_cast<int>(v), tickers[v], sectors);
  }
  for (const auto& edge : edges) {
    out += "  " + std::to_string(edge.a) + " -- " + std::to_string(edge.b);
    if (edge.weight) out += " [weight=" + format_double(*edge.weight) + "]";
    out += ";\n";
  }
  out += "}\n";
  return out;
}

std::string graph_to_graphml(const std::vector<std::string>& tickers,
                             const std::vector<EdgeView>& edges,
                             const std::map<std::string, std::string>& sectors) {
  std::string out =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
      "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
      "  <key id=\"sector\" for=\"node\" attr.name=\"sector\" attr.type=\"string\"/>\n"
      "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n"
      "  <graph id=\"G\" edgedefault=\"undirected\">\n";
  for (std::size_t v = 0; v < tickers.size(); ++v) {
    out += "    <node id=\"n" + std::to_string(v) + "\"><data key=\"label\">" +
           xml_escape(tickers[v]) + "</data>";
    if (auto it = sectors.find(tickers[v]); it != sectors.end()) {
      out += "<data key=\"sector\">" + xml_escape(it->second) + "</data>";
    }
    out += "</node>\n";
  }
  for (const auto& edge : edges) {
    out += "    <edge source=\"n" + std::to_string(edge.a) + "\" target=\"n" +
           std::to_string(edge.b) + "\">";
    if (edge.weight) out += "<data key=\"weight\">" + format_double(*edge.weight) + "</data>";
    out += "</edge>\n";
  }
  out += "  </graph>\n</graphml>\n";
  return out;
}

std::vector<EdgeView> edge_views(const ThresholdGraph& graph) {
  std::vector<EdgeView> edges;
  edges.reserve(graph.edges.size());
  for (const auto& [a, b] : graph.edges) edges.push_back({a, b, std::nullopt});
  return edges;
}

std::vector<EdgeView> edge_views(const SpanningTree& tree) {
  std::vector<EdgeView> edges;
  edges.reserve(tree.edges.size());
  for (const auto& edge : tree.edges) edges.push_back({edge.a, edge.b, edge.weight});
  return edges;
}

}  // namespace

std::string to_dot(const ThresholdGraph& graph, const std::map<std::string, std::string>& sectors) {
  return graph_to_dot("threshold_network", graph.tickers, edge_views(graph), sectors);
}

std::string to_dot(const SpanningTree& tree, const std::map<std::string, std::string>& sectors) {
  return graph_to_dot("mst", tree.tickers, edge_views(tree), sectors);
}

std::string to_graphml(const ThresholdGraph& graph,
                       const std::map<std::string, std::string>& sectors) {
  return graph_to_graphml(graph.tickers, edge_views(graph), sectors);
}

std::string to_graphml(const SpanningTree& tree, const std::map<std::string, std::string>& sectors) {
  return graph_to_graphml(tree.tickers, edge_views(tree), sectors);
}

std::string to_edge_list(const ThresholdGraph& graph) {
  std::string out;
  for (const auto& [a, b] : graph.edges) {
    out += graph.tickers[a];
    out += '\t';
    out += graph.tickers[b];
    out += '\n';
  }
  return out;
}

std::string to_edge_list(const SpanningTree& tree) {
  std::string out;
  for (const auto& edge : tree.edges) {
    out += tree.tickers[edge.a];
    out += '\t';
    out += tree.tickers[edge.b];
    out += '\t';
    out += format_double(edge.weight);
    out += '\n';
  }
  return out;
}

namespace {

bool newick_needs_quotes(std::string_view name) {
  return name.find_first_of(" \t(),:;'[]") != std::string_view::npos;
}

std::string newick_name(const std::string& name) {
  if (!newick_needs_quotes(name)) return name;
  std::string out = "'";
  for (char c : name) {
    out += c;
    if (c == '\'') out += '\'';
  }
  out += "'";
  return out;
}

}  // namespace

std::string to_newick(const MergeTree& tree) {
  const std::size_t n = tree.leaves.size();
  // height of node id: leaves sit at 0, merge k at its recorded height
  auto height_of = [&](int id) {
    return id < static_cast<int>(n) ? 0.0 : tree.merges[id - n].height;
  };
  std::string out;
  auto emit = [&](auto&& self, int id, double parent_height) -> void {
    if (id < static_cast<int>(n)) {
      out += newick_name(tree.leaves[id]);
    } else {
      const auto& merge = tree.merges[id - n];
      out += '(';
      self(self, merge.left, merge.height);
      out += ',';
      self(self, merge.right, merge.height);
      out += ')';
    }
    out += ':';
    out += format_double(parent_height - height_of(id));
  };
  const double root_height = tree.merges.back().height;
  out += '(';
  emit(emit, tree.merges.back().left, root_height);
  out += ',';
  emit(emit, tree.merges.back().right, root_height);
  out += ");\n";
  return out;
}

namespace {

// ---- reparsers -----------------------------------------------------------
// These understand exactly the shapes the writers above emit. They exist so
// exports can be round-trip checked, not as general-purpose parsers.

double parse_double_or_throw(std::string_view text, std::string_view what) {
  double value = 0.0;
  auto result = std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc() || result.ptr != text.data() + text.size()) {
    throw Error(errc::bad_number, std::string(what) + ": '" + std::string(text) + "'");
  }
  return value;
}

std::string_view trimmed(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\r')) text.remove_suffix(1);
  return text;
}

std::optional<std::string_view> attribute_value(std::string_view line, std::string_view key) {
  std::string pattern = std::string(key) + "=\"";
  auto pos = line.find(pattern);
  if (pos == std::string_view::npos) return std::nullopt;
  auto start = pos + pattern.size();
  auto end = line.find('"', start);
  if (end == std::string_view::npos) return std::nullopt;
  return line.substr(start, end - start);
}

}  // namespace

ParsedGraph parse_dot(std::string_view text) {
  ParsedGraph graph;
  std::map<int, std::string> labels;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = trimmed(text.substr(start, end - start));
    start = end + 1;
    if (line.empty() || line.starts_with("graph") || line == "}") continue;
    auto dash = line.find(" -- ");
    if (dash == std::string_view::npos) {
      auto bracket = line.find(" [");
      if (bracket == std::string_view::npos) continue;
      int id = static_cast<int>(parse_double_or_throw(line.substr(0, bracket), "dot node id"));
      auto label = attribute_value(line, "label");
      if (!label) throw Error(errc::bad_header, "dot node without label");
      labels[id] = std::string(*label);
      if (auto sector = attribute_value(line, "sector")) {
        graph.sectors[std::string(*label)] = std::string(*sector);
      }
    } else {
      int a = static_cast<int>(parse_double_or_throw(line.substr(0, dash), "dot edge source"));
      std::string_view rest = line.substr(dash + 4);
      std::optional<double> weight;
      std::string_view b_text = rest;
      if (auto bracket = rest.find(" ["); bracket != std::string_view::npos) {
        b_text = rest.substr(0, bracket);
        auto w = attribute_value(rest, "weight");
        if (!w) {
          // weight written without quotes
          auto key = rest.find("weight=");
          if (key != std::string_view::npos) {
            auto value_start = key + 7;
            auto value_end = rest.find_first_of("];", value_start);
            weight = parse_double_or_throw(rest.substr(value_start, value_end - value_start),
                                           "dot edge weight");
          }
        } else {
          weight = parse_double_or_throw(*w, "dot edge weight");
        }
      } else if (!b_text.empty() && b_text.back() == ';') {
        b_text.remove_suffix(1);
      }
      int b = static_cast<int>(parse_double_or_throw(trimmed(b_text), "dot edge target"));
      graph.edges.push_back({labels.at(a), labels.at(b), weight});
    }
  }
  for (const auto& [id, label] : labels) graph.nodes.push_back(label);
  return graph;
}

ParsedGraph parse_graphml(std::string_view text) {
  ParsedGraph graph;
  std::map<std::string, std::string> label_of;  // node xml id -> label
  std::size_t pos = 0;
  auto find_data = [](std::string_view element, std::string_view key) -> std::optional<std::string> {
    std::string pattern = "<data key=\"" + std::string(key) + "\">";
    auto start = element.find(pattern);
    if (start == std::string_view::npos) return std::nullopt;
    start += pattern.size();
    auto end = element.find("</data>", start);
    return xml_unescape(element.substr(start, end - start));
  };
  while (true) {
    auto node_pos = text.find("<node ", pos);
    auto edge_pos = text.find("<edge ", pos);
    if (node_pos == std::string_view::npos && edge_pos == std::string_view::npos) break;
    if (node_pos < edge_pos) {
      auto end = text.find("</node>", node_pos);
      std::string_view element = text.substr(node_pos, end - node_pos);
      auto id = attribute_value(element, "id");
      auto label = find_data(element, "label");
      if (!id || !label) throw Error(errc::bad_header, "graphml node without id/label");
      label_of[std::string(*id)] = *label;
      graph.nodes.push_back(*label);
      if (auto sector = find_data(element, "sector")) graph.sectors[*label] = *sector;
      pos = end + 7;
    } else {
      auto end = text.find("</edge>", edge_pos);
      std::string_view element = text.substr(edge_pos, end - edge_pos);
      auto source = attribute_value(element, "source");
      auto target = attribute_value(element, "target");
      if (!source || !target) throw Error(errc::bad_header, "graphml edge without endpoints");
      ParsedGraph::Edge edge;
      edge.a = label_of.at(std::string(*source));
      edge.b = label_of.at(std::string(*target));
      if (auto weight = find_data(element, "weight")) {
        edge.weight = parse_double_or_throw(*weight, "graphml edge weight");
      }
      graph.edges.push_back(std::move(edge));
      pos = end + 7;
    }
  }
  return graph;
}

namespace {

struct NewickNode {
  std::vector<NewickNode> children;
  std::string name;
  double length = 0.0;  // branch to parent
};

class NewickParser {
 public:
  explicit NewickParser(std::string_view text) : text_(text) {}

  NewickNode parse() {
    NewickNode root = node();
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == ';') ++pos_;
    return root;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\n' || text_[pos_] == '\r' || text_[pos_] == '\t')) {
      ++pos_;
    }
  }

  NewickNode node() {
    skip_ws();
    NewickNode out;
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      out.children.push_back(node());
      while (pos_ < text_.size() && text_[pos_] == ',') {
        ++pos_;
        out.children.push_back(node());
      }
      if (pos_ >= text_.size() || text_[pos_] != ')') {
        throw Error(errc::bad_header, "newick: missing ')'");
      }
      ++pos_;
    } else {
      out.name = name();
    }
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == ':') {
      ++pos_;
      out.length = number();
    }
    return out;
  }

  std::string name() {
    skip_ws();
    std::string out;
    if (pos_ < text_.size() && text_[pos_] == '\'') {
      ++pos_;
      while (pos_ < text_.size()) {
        if (text_[pos_] == '\'') {
          if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '\'') {
            out += '\'';
            pos_ += 2;
          } else {
            ++pos_;
            break;
          }
        } else {
          out += text_[pos_++];
        }
      }
    } else {
      while (pos_ < text_.size() && text_.find_first_of("(),:;", pos_) != pos_) {
        out += text_[pos_++];
      }
    }
    return out;
  }

  double number() {
    std::size_t end = text_.find_first_of("(),:;", pos_);
    if (end == std::string_view::npos) end = text_.size();
    double value = parse_double_or_throw(trimmed(text_.substr(pos_, end - pos_)), "newick length");
    pos_ = end;
    return value;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void collect_leaves(const NewickNode& node, double depth, std::vector<std::pair<std::string, double>>& out) {
  if (node.children.empty()) {
    out.emplace_back(node.name, depth + node.length);
    return;
  }
  for (const auto& child : node.children) collect_leaves(child, depth + node.length, out);
}

// Returns the leaf indices below `node`; fills pair heights for pairs that
// first meet at this node.
std::vector<int> fill_pair_heights(const NewickNode& node, double depth, double leaf_depth,
                                   const std::map<std::string, int>& index_of,
                                   CopheneticMatrix& coph) {
  if (node.children.empty()) {
    return {index_of.at(node.name)};
  }
  double node_depth = depth + node.length;
  double height = leaf_depth - node_depth;
  std::vector<int> below;
  std::vector<std::vector<int>> per_child;
  for (const auto& child : node.children) {
    per_child.push_back(fill_pair_heights(child, node_depth, leaf_depth, index_of, coph));
  }
  for (std::size_t a = 0; a < per_child.size(); ++a) {
    for (std::size_t b = a + 1; b < per_child.size(); ++b) {
      for (int i : per_child[a]) {
        for (int j : per_child[b]) coph.set(i, j, height);
      }
    }
    below.insert(below.end(), per_child[a].begin(), per_child[a].end());
  }
  return below;
}

}  // namespace

ParsedDendrogram parse_newick(std::string_view text) {
  NewickParser parser(text);
  NewickNode root = parser.parse();

  std::vector<std::pair<std::string, double>> leaf_depths;
  collect_leaves(root, 0.0, leaf_depths);
  if (leaf_depths.size() < 2) throw Error(errc::bad_header, "newick: fewer than 2 leaves");

  ParsedDendrogram out;
  for (const auto& [name, depth] : leaf_depths) out.leaves.push_back(name);
  std::sort(out.leaves.begin(), out.leaves.end());
  std::map<std::string, int> index_of;
  for (std::size_t k = 0; k < out.leaves.size(); ++k) {
    if (!index_of.emplace(out.leaves[k], static_cast<int>(k)).second) {
      throw Error(errc::duplicate_entry, "newick: leaf '" + out.leaves[k] + "' appears twice");
    }
  }

  double leaf_depth = 0.0;
  for (const auto& [name, depth] : leaf_depths) leaf_depth = std::max(leaf_depth, depth);

  out.cophenetic.n = out.leaves.size();
  out.cophenetic.values.assign(out.leaves.size() * out.leaves.size(), 0.0);
  fill_pair_heights(root, 0.0, leaf_depth, index_of, out.cophenetic);
  out.root_height = leaf_depth - root.length;
  return out;
}

}  // namespace marketnet
