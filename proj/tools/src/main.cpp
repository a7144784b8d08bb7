#include <CLI11.hpp>

#include <functional>
#include <iostream>

#include "commands.hpp"
#include "hyperlet/budget.hpp"
#include "usage.hpp"

using namespace hyperlet::cli;

namespace {

void add_input(CLI::App* sub, Config& c, bool many = false) {
  auto* opt = sub->add_option("input", c.inputs, many ? "Input files" : "Input file")
                  ->check(CLI::ExistingFile);
  if (!many) {
    opt->required()->expected(1);
  }
}

void add_graph_flags(CLI::App* sub, Config& c) {
  sub->add_flag("--no-dedupe", c.no_dedupe, "Keep exact duplicate edges");
  sub->add_option("--token-map", c.token_map, "Write the id/token map here");
}

void add_split_flags(CLI::App* sub, Config& c) {
  sub->add_option("--alpha", c.alpha, "auto, naive, or a fixed threshold")->capture_default_str();
  sub->add_option("--gamma", c.gamma, "Weight of the lower cost in the split objective")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
}

void add_sampling_flags(CLI::App* sub, Config& c) {
  sub->add_option("-k", c.k, "Hypergraphlet order")->required();
  sub->add_option("--seed", c.seed, "Base seed")->capture_default_str();
  sub->add_option("--samples", c.samples, "Accepted samples per coloring")->capture_default_str();
  sub->add_option("--threads", c.threads, "Worker threads")->capture_default_str();
  sub->add_flag("--uniform", c.uniform, "Accept with probability 1/sigma");
  sub->add_flag("--ie-extract", c.ie_extract, "Extract through subset counters");
  sub->add_option("--out", c.out, "CSV output (default stdout)");
  sub->add_option("--meta", c.meta, "JSON metadata sidecar");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate k-hypergraphlet counting by color coding on split hypergraphs"};
  app.require_subcommand(1);
  Config c;
  std::function<int(const Config&)> run;
  auto on = [&](CLI::App* sub, int (*fn)(const Config&)) { sub->callback([&run, fn] { run = fn; }); };

  auto* stats = app.add_subcommand("stats", "Size, rank, degree and the chosen split, as JSON");
  add_input(stats, c);
  add_graph_flags(stats, c);
  stats->add_option("--gamma", c.gamma)->check(CLI::Range(0.0, 1.0));
  stats->add_option("--out", c.out);
  on(stats, cmd_stats);

  auto* curve = app.add_subcommand("curve", "CSV of every threshold with its costs");
  add_input(curve, c);
  add_graph_flags(curve, c);
  curve->add_option("--gamma", c.gamma)->check(CLI::Range(0.0, 1.0));
  curve->add_option("--out", c.out);
  on(curve, cmd_curve);

  auto* split = app.add_subcommand("split", "Write the lower and upper parts");
  add_input(split, c);
  add_graph_flags(split, c);
  add_split_flags(split, c);
  split->add_option("--lower-out", c.lower_out);
  split->add_option("--upper-out", c.upper_out);
  split->add_option("--out", c.out, "JSON summary (default stdout)");
  on(split, cmd_split);

  auto* build = app.add_subcommand("build", "Build and save the counter table");
  add_input(build, c);
  add_graph_flags(build, c);
  add_split_flags(build, c);
  build->add_option("-k", c.k)->required();
  build->add_option("--seed", c.seed)->capture_default_str();
  build->add_option("--threads", c.threads)->capture_default_str();
  build->add_option("--out", c.out, "Table file")->required();
  build->add_option("--meta", c.meta, "JSON summary (default stdout)");
  on(build, cmd_build);

  auto* sample = app.add_subcommand("sample", "Estimate from one coloring, optionally logging draws");
  add_input(sample, c);
  add_graph_flags(sample, c);
  add_split_flags(sample, c);
  add_sampling_flags(sample, c);
  sample->add_option("--table", c.table, "Reuse a saved table")->check(CLI::ExistingFile);
  sample->add_option("--log", c.log, "Per-draw CSV");
  on(sample, cmd_sample);

  auto* count = app.add_subcommand("count", "Estimates averaged over --runs colorings");
  add_input(count, c);
  add_graph_flags(count, c);
  add_split_flags(count, c);
  add_sampling_flags(count, c);
  count->add_option("--runs", c.runs, "Independent colorings")->capture_default_str();
  on(count, cmd_count);

  auto* exact = app.add_subcommand("exact", "Exact counts by enumeration, in the count CSV schema");
  add_input(exact, c);
  add_graph_flags(exact, c);
  exact->add_option("-k", c.k)->required();
  exact->add_flag("--colorful", c.colorful, "Only sets colorful under the --seed coloring");
  exact->add_option("--seed", c.seed)->capture_default_str();
  exact->add_option("--out", c.out);
  exact->add_option("--meta", c.meta);
  on(exact, cmd_exact);

  auto* reduce = app.add_subcommand("reduce-clique", "Clique instance to a k-SH instance");
  add_input(reduce, c);
  reduce->add_option("-k", c.k, "Clique size")->required();
  reduce->add_option("--out", c.out, "Hypergraph (default stdout)");
  reduce->add_option("--meta", c.meta, "JSON sidecar (default <out>.json)");
  on(reduce, cmd_reduce_clique);

  auto* ksh = app.add_subcommand("ksh", "Decide k-SH by enumeration; exit 0 on YES, 1 on NO");
  add_input(ksh, c);
  add_graph_flags(ksh, c);
  ksh->add_option("-k", c.k)->required();
  ksh->add_option("--method", c.method, "auto, subsets or unions")->capture_default_str();
  ksh->add_option("--out", c.out);
  on(ksh, cmd_ksh);

  auto* ov = app.add_subcommand("ov", "Orthogonal vectors through neighbor counts; exit 0 on YES");
  add_input(ov, c);
  ov->add_option("--out", c.out);
  on(ov, cmd_ov);

  auto* gen = app.add_subcommand("gen-synthetic", "Power-law or split-controlled hypergraph");
  gen->add_option("--model", c.model, "powerlaw or controlled")->capture_default_str();
  gen->add_option("-n", c.n)->capture_default_str();
  gen->add_option("-m", c.m)->capture_default_str();
  gen->add_option("--exponent", c.exponent)->capture_default_str();
  gen->add_option("--max-size", c.max_size)->capture_default_str();
  gen->add_option("--alpha", c.gen_alpha, "Largest small-edge size")->capture_default_str();
  gen->add_option("--beta", c.gen_beta, "Upper-degree bound")->capture_default_str();
  gen->add_option("--large-size", c.large_size)->capture_default_str();
  gen->add_option("--small-fraction", c.small_fraction)->check(CLI::Range(0.0, 1.0));
  gen->add_option("--seed", c.seed)->capture_default_str();
  gen->add_option("--out", c.out);
  on(gen, cmd_gen_synthetic);

  auto* bench = app.add_subcommand("bench", "Time naive and split builds; CSV size vs seconds");
  add_input(bench, c, true);
  bench->add_flag("--no-dedupe", c.no_dedupe);
  bench->add_option("-k", c.k)->capture_default_str();
  bench->add_option("--sizes", c.sizes, "Vertex counts of generated instances")->delimiter(',');
  bench->add_option("--alpha", c.gen_alpha, "Small-edge size bound of generated instances");
  bench->add_option("--beta", c.gen_beta, "Upper-degree bound of generated instances");
  bench->add_option("--gamma", c.gamma)->check(CLI::Range(0.0, 1.0));
  bench->add_option("--reps", c.reps)->capture_default_str();
  bench->add_option("--threads", c.threads)->capture_default_str();
  bench->add_option("--seed", c.seed)->capture_default_str();
  bench->add_option("--out", c.out);
  on(bench, cmd_bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    return run(c);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
}
