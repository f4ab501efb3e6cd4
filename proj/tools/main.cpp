#include <cstdint>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "marketnet/error.hpp"
#include "marketnet/version.hpp"

// Exit codes: 0 success, 1 usage, 2 data error, 3 numeric error.
int main(int argc, char** argv) {
  CLI::App app{"correlation-network analytics for asset price panels"};
  app.set_version_flag("--version", marketnet::version);
  app.require_subcommand(1);

  marketnet::cli::AnalyzeArgs analyze_args;
  auto* analyze = app.add_subcommand(
      "analyze", "run the full pipeline per window and write reports and plot data");
  analyze->add_option("--input", analyze_args.input, "price CSV")->required();
  analyze->add_option("--format", analyze_args.format, "input layout: wide|long");
  analyze->add_option("--fill", analyze_args.fill, "missing-cell policy: none|forward");
  analyze->add_option("--sectors", analyze_args.sectors_file,
                      "ticker,sector labels passed through to graph exports");
  analyze->add_option("--window", analyze_args.windows, "window as name:start:end (repeatable)");
  analyze->add_option("--windows-file", analyze_args.windows_file,
                      "file of name,start,end window rows");
  analyze->add_option("--theta", analyze_args.thetas, "explicit threshold (repeatable)");
  analyze->add_option("--sigma-mult", analyze_args.sigma_multiples,
                      "threshold at mean + k sigma (repeatable, default 1 2 3)");
  analyze->add_option("--sweep", analyze_args.sweep, "sweep grid lo:hi:step (default 0:0.9:0.05)");
  analyze->add_option("--fit-range", analyze_args.fit_range,
                      "theta range lo:hi for the clustering scaling fit");
  analyze->add_option("--k-range", analyze_args.k_range, "degree range lo:hi for degree fits");
  analyze->add_flag("--log-binning", analyze_args.log_binning,
                    "geometrically bin degree pmfs before fitting");
  analyze->add_option("--scope", analyze_args.scope, "degree distribution scope: whole|largest");
  analyze->add_option("--bins", analyze_args.bin_width, "coefficient histogram bin width");
  analyze->add_option("--band-cutoffs", analyze_args.band_cutoffs,
                      "dendrogram height cutoffs, comma separated");
  analyze->add_option("--band-convention", analyze_args.band_convention,
                      "merge_heights|leaf_first_merge|all_pairs");
  analyze->add_option("--top", analyze_args.top_hubs, "hub ranking length");
  analyze->add_option("--out", analyze_args.out_dir, "output directory");
  analyze->add_option("--export", analyze_args.exports,
                      "graph exports: dot|graphml|edgelist|newick|json|csv (repeatable)");

  marketnet::cli::SynthArgs synth_args;
  std::uint64_t seed_value = 0;
  auto* synth = app.add_subcommand("synth", "generate a synthetic factor-model price panel");
  synth->add_option("--spec", synth_args.spec_file,
                    "JSON spec file (default: canonical crisis scenario)");
  auto* seed_opt = synth->add_option("--seed", seed_value, "override the spec seed");
  synth->add_option("--out", synth_args.out, "output CSV path");
  synth->add_option("--windows-out", synth_args.windows_out,
                    "write the regime windows as a name,start,end file");
  synth->add_option("--sectors-out", synth_args.sectors_out,
                    "write the generated sector labels as a ticker,sector file");

  marketnet::cli::ExportArgs export_args;
  auto* exporter = app.add_subcommand("export", "export one graph artifact from a panel");
  exporter->add_option("--input", export_args.input, "price CSV")->required();
  exporter->add_option("--format", export_args.format, "input layout: wide|long");
  exporter->add_option("--fill", export_args.fill, "missing-cell policy: none|forward");
  exporter->add_option("--sectors", export_args.sectors_file,
                       "ticker,sector labels for node attributes");
  exporter->add_option("--window", export_args.window, "optional window name:start:end");
  exporter->add_option("--what", export_args.what, "mst|threshold|dendrogram");
  double theta_value = 0.0;
  auto* theta_opt = exporter->add_option("--theta", theta_value, "threshold for --what threshold");
  int sigma_value = 0;
  auto* sigma_opt =
      exporter->add_option("--sigma-mult", sigma_value, "threshold at mean + k sigma");
  exporter->add_option("--as", export_args.as, "dot|graphml|edgelist|newick|json")->required();
  exporter->add_option("--out", export_args.out, "output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (app.got_subcommand(analyze)) {
      return marketnet::cli::run_analyze(analyze_args);
    }
    if (app.got_subcommand(synth)) {
      if (seed_opt->count() > 0) synth_args.seed = seed_value;
      return marketnet::cli::run_synth(synth_args);
    }
    if (theta_opt->count() > 0) export_args.theta = theta_value;
    if (sigma_opt->count() > 0) export_args.sigma_multiple = sigma_value;
    return marketnet::cli::run_export(export_args);
  } catch (const marketnet::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.category() == marketnet::error_category::numeric ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
