#pragma once

#include <optional>
#include <string>
#include <vector>

#include "marketnet/report.hpp"

namespace marketnet::cli {

struct AnalyzeArgs {
  std::string input;
  std::string format = "wide";
  std::string fill = "none";
  std::string sectors_file;
  std::vector<std::string> windows;   // "name:start:end"
  std::string windows_file;
  std::vector<double> thetas;
  std::vector<int> sigma_multiples;
  std::string sweep;                  // "lo:hi:step"
  std::string fit_range;              // "lo:hi" on theta
  std::string k_range;                // "lo:hi" on degree
  bool log_binning = false;
  std::string scope = "largest";
  std::string band_cutoffs = "1.0,1.2";
  std::string band_convention = "merge_heights";
  double bin_width = 0.02;
  int top_hubs = 10;
  std::string out_dir = "out";
  std::vector<std::string> exports;   // dot|graphml|edgelist|newick|json|csv
};

struct SynthArgs {
  std::string spec_file;              // empty -> canonical crisis scenario
  std::optional<std::uint64_t> seed;  // overrides the spec seed
  std::string out = "synthetic.csv";
  std::string windows_out;            // optional name,start,end file
  std::string sectors_out;            // optional ticker,sector file
};

struct ExportArgs {
  std::string input;
  std::string format = "wide";
  std::string fill = "none";
  std::string sectors_file;
  std::string window;                 // optional "name:start:end"
  std::string what = "mst";           // mst|threshold|dendrogram
  std::optional<double> theta;
  std::optional<int> sigma_multiple;
  std::string as;                     // dot|graphml|edgelist|newick|json
  std::string out;
};

int run_analyze(const AnalyzeArgs& args);
int run_synth(const SynthArgs& args);
int run_export(const ExportArgs& args);

}  // namespace marketnet::cli
