#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <stdexcept>

#include <json.hpp>

#include "hyperlet/canon.hpp"
#include "hyperlet/counters.hpp"
#include "hyperlet/hardlab.hpp"
#include "hyperlet/io.hpp"
#include "hyperlet/sampler.hpp"
#include "hyperlet/split.hpp"
#include "report.hpp"
#include "usage.hpp"

namespace hyperlet::cli {

using Json = nlohmann::ordered_json;

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) {
    throw UsageError(message);
  }
}

const std::string& single_input(const Config& c) {
  require(c.inputs.size() == 1, "expected exactly one input file");
  return c.inputs.front();
}

LabeledHypergraph load(const Config& c) {
  ParseOptions opts;
  opts.dedupe_edges = !c.no_dedupe;
  auto lh = parse_hypergraph_file(single_input(c), opts);
  if (!c.token_map.empty()) {
    Output out(c.token_map);
    write_token_map(out.stream(), lh);
  }
  return lh;
}

void write_json(const std::string& path, const Json& j) {
  Output out(path);
  out.stream() << j.dump(2) << '\n';
}

struct SplitPolicy {
  AlphaSplit split;
  bool naive = false;
};

SplitPolicy resolve_split(const Hypergraph& h, const Config& c) {
  SplitPolicy p;
  if (c.alpha == "auto") {
    p.split = choose_split_refined(h, c.gamma).split;
  } else if (c.alpha == "naive") {
    p.naive = true;
    p.split = apply_split(h, h.rank());
  } else {
    std::size_t used = 0;
    unsigned long long a = 0;
    try {
      a = std::stoull(c.alpha, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    require(used == c.alpha.size() && !c.alpha.empty(),
            "--alpha must be auto, naive or a non-negative integer");
    p.split = apply_split(h, a);
  }
  return p;
}

CounterSet build_table(const Hypergraph& h, const SplitPolicy& p, unsigned k, std::uint64_t seed,
                       unsigned threads, bool keep_sums) {
  BuildOptions opts;
  opts.threads = threads;
  opts.keep_neighbor_sums = keep_sums;
  auto coloring = random_coloring(h.vertex_count(), k, seed);
  return p.naive ? build_counters_naive(h, k, coloring, opts)
                 : build_counters(h, p.split, k, coloring, opts);
}

EstimateResult estimate(const CounterSet& cs, const AlphaSplit& split, const EstimateOptions& opts,
                        std::uint64_t seed) {
  try {
    Generators gen(cs, split);
    return estimate_counts(gen, opts, seed);
  } catch (const NoColorfulOccurrences&) {
    return empty_estimate(cs.k(), opts);
  }
}

EstimateOptions estimate_options(const Config& c) {
  require(c.samples >= 1, "--samples must be at least 1");
  EstimateOptions opts;
  opts.samples = c.samples;
  opts.threads = c.threads;
  opts.uniform = c.uniform;
  opts.ie_extract = c.ie_extract;
  return opts;
}

void check_sampling_k(const Config& c) {
  require(c.k >= 2 && c.k <= kMaxKeyOrder, "-k must be in [2, 8] for sampling");
  require(c.threads >= 1, "--threads must be at least 1");
}

Json split_json(const SplitPolicy& p) {
  Json j;
  j["naive"] = p.naive;
  j["alpha"] = p.naive ? Json(nullptr) : Json(p.split.alpha);
  j["beta"] = p.split.beta;
  return j;
}

std::vector<CsvRow> rows_of(const EstimateResult& r) {
  std::vector<CsvRow> rows;
  for (const auto& t : r.types) {
    rows.push_back({to_string(t.key), t.samples, t.inv_sigma_sum, t.colorful_estimate,
                    t.relative_frequency});
  }
  return rows;
}

std::uint64_t run_seed(std::uint64_t seed, unsigned run) { return seed + run; }

}  // namespace

int cmd_stats(const Config& c) {
  auto lh = load(c);
  const auto& h = lh.graph;
  std::size_t projection = 0;
  for (EdgeId e = 0; e < h.edge_count(); ++e) {
    projection += h.edge_size(e) * (h.edge_size(e) - 1);
  }
  auto choice = choose_split_refined(h, c.gamma);
  Json j;
  j["vertices"] = h.vertex_count();
  j["edges"] = h.edge_count();
  j["size"] = h.size();
  j["rank"] = h.rank();
  j["max_degree"] = h.max_degree();
  j["projection_entries_bound"] = projection;
  j["gaifman_edges"] = gaifman(h).edge_count();
  j["refined_alpha"] = choice.split.alpha;
  j["refined_beta"] = choice.split.beta;
  write_json(c.out, j);
  return kExitOk;
}

int cmd_curve(const Config& c) {
  auto lh = load(c);
  Output out(c.out);
  out.stream() << "alpha,beta,lower_cost,upper_cost,weighted\n";
  for (const auto& row : refined_sweep(lh.graph, c.gamma)) {
    out.stream() << row.alpha << ',' << row.beta << ',' << to_string(row.cost.lower_cost) << ','
                 << (row.cost.capped ? std::string("inf") : to_string(row.cost.upper_cost)) << ','
                 << (row.cost.capped ? std::string("inf") : format_real(row.cost.weighted))
                 << '\n';
  }
  return kExitOk;
}

int cmd_split(const Config& c) {
  auto lh = load(c);
  auto p = resolve_split(lh.graph, c);
  require(!p.naive, "split needs --alpha auto or an integer");
  if (!c.lower_out.empty()) {
    Output out(c.lower_out);
    write_hypergraph(out.stream(), p.split.lower);
  }
  if (!c.upper_out.empty()) {
    Output out(c.upper_out);
    write_hypergraph(out.stream(), p.split.upper);
  }
  Json j = split_json(p);
  j["lower_edges"] = p.split.lower.edge_count();
  j["upper_edges"] = p.split.upper.edge_count();
  j["lower_graph_edges"] = p.split.lower_graph.edge_count();
  write_json(c.out, j);
  return kExitOk;
}

int cmd_build(const Config& c) {
  require(c.k >= 2 && c.k <= TreeletCatalog::kMaxOrder, "-k must be in [2, 16]");
  require(c.threads >= 1, "--threads must be at least 1");
  require(!c.out.empty(), "build needs --out");
  auto lh = load(c);
  auto p = resolve_split(lh.graph, c);
  auto cs = build_table(lh.graph, p, c.k, c.seed, c.threads, false);
  {
    Output out(c.out);
    save_counters(out.stream(), cs);
  }
  Json j = split_json(p);
  j["k"] = c.k;
  j["seed"] = c.seed;
  j["root_weight"] = to_string(cs.total());
  j["table"] = c.out;
  write_json(c.meta, j);
  return kExitOk;
}

int cmd_sample(const Config& c) {
  check_sampling_k(c);
  auto opts = estimate_options(c);
  opts.keep_log = !c.log.empty();
  auto lh = load(c);
  const auto& h = lh.graph;

  std::optional<CounterSet> cs;
  SplitPolicy p;
  if (!c.table.empty()) {
    std::ifstream in(c.table, std::ios::binary);
    if (!in) {
      throw std::runtime_error("cannot open table " + c.table);
    }
    cs.emplace(load_counters(in));
    if (cs->vertex_count() != h.vertex_count()) {
      throw std::runtime_error("table was built for a different hypergraph");
    }
    require(cs->k() == c.k, "-k does not match the table");
    p.naive = cs->alpha == kNaiveAlpha;
    p.split = apply_split(h, p.naive ? h.rank() : cs->alpha);
    BuildOptions bo;
    bo.threads = c.threads;
    attach_neighbor_sums(*cs, p.split, bo);
  } else {
    p = resolve_split(h, c);
    cs.emplace(build_table(h, p, c.k, c.seed, c.threads, true));
  }
  auto r = estimate(*cs, p.split, opts, c.seed);
  {
    Output out(c.out);
    write_estimate_csv(out.stream(), rows_of(r));
  }
  if (!c.log.empty()) {
    Output out(c.log);
    out.stream() << "index,key,sigma,accepted\n";
    for (std::size_t i = 0; i < r.log.size(); ++i) {
      out.stream() << i << ',' << to_string(r.log[i].key) << ',' << to_string(r.log[i].sigma) << ','
                   << (r.log[i].accepted ? 1 : 0) << '\n';
    }
  }
  if (!c.meta.empty()) {
    Json j = split_json(p);
    j["k"] = c.k;
    j["seed"] = c.seed;
    j["coloring_seed"] = cs->coloring().seed;
    j["root_weight"] = to_string(r.root_weight);
    j["samples"] = r.samples;
    j["draws"] = r.draws;
    j["uniform"] = r.uniform;
    j["colorful_probability"] = static_cast<double>(r.colorful_probability);
    write_json(c.meta, j);
  }
  return kExitOk;
}

int cmd_count(const Config& c) {
  check_sampling_k(c);
  require(c.runs >= 1, "--runs must be at least 1");
  auto opts = estimate_options(c);
  auto lh = load(c);
  const auto& h = lh.graph;
  auto p = resolve_split(h, c);

  struct Agg {
    std::uint64_t samples = 0;
    long double inv_sigma_sum = 0;
    long double colorful_sum = 0;
  };
  std::map<HypergraphletKey, Agg> agg;
  Json runs = Json::array();
  for (unsigned r = 0; r < c.runs; ++r) {
    const auto seed = run_seed(c.seed, r);
    auto cs = build_table(h, p, c.k, seed, c.threads, true);
    auto est = estimate(cs, p.split, opts, seed);
    for (const auto& t : est.types) {
      auto& a = agg[t.key];
      a.samples += t.samples;
      a.inv_sigma_sum += t.inv_sigma_sum;
      a.colorful_sum += t.colorful_estimate;
    }
    runs.push_back({{"seed", seed}, {"root_weight", to_string(est.root_weight)}, {"draws", est.draws}});
  }

  const long double pk = colorful_probability(c.k);
  long double mean_sum = 0;
  for (auto& [key, a] : agg) {
    mean_sum += a.colorful_sum / c.runs;
  }
  std::vector<CsvRow> rows;
  Json types = Json::array();
  for (auto& [key, a] : agg) {
    const long double mean = a.colorful_sum / c.runs;
    rows.push_back({to_string(key), a.samples, a.inv_sigma_sum, mean,
                    mean_sum > 0 ? mean / mean_sum : 0});
    types.push_back({{"key", to_string(key)},
                     {"colorful_estimate", format_real(mean)},
                     {"total_estimate", format_real(mean / pk)}});
  }
  {
    Output out(c.out);
    write_estimate_csv(out.stream(), rows);
  }
  if (!c.meta.empty()) {
    Json j = split_json(p);
    j["k"] = c.k;
    j["seed"] = c.seed;
    j["samples"] = c.samples;
    j["uniform"] = c.uniform;
    j["colorful_probability"] = format_real(pk);
    j["runs"] = runs;
    j["types"] = types;
    j["total_estimate"] = format_real(mean_sum / pk);
    write_json(c.meta, j);
  }
  return kExitOk;
}

int cmd_exact(const Config& c) {
  require(c.k >= 1 && c.k <= kMaxKeyOrder, "-k must be in [1, 8]");
  auto lh = load(c);
  const auto budget = enumeration_budget(kDefaultEnumerationBudget);
  auto table = c.colorful
                   ? exact_colorful_counts(lh.graph, random_coloring(lh.graph.vertex_count(), c.k, c.seed),
                                           c.k, budget)
                   : exact_counts(lh.graph, c.k, budget);
  Count total = 0;
  for (auto& [key, n] : table) {
    total = checked_add(total, n);
  }
  std::vector<CsvRow> rows;
  Json types = Json::array();
  for (auto& [key, n] : table) {
    rows.push_back({to_string(key), 0, 0, to_long_double(n), to_long_double(n) / to_long_double(total)});
    types.push_back({{"key", to_string(key)}, {"count", to_string(n)}});
  }
  {
    Output out(c.out);
    write_estimate_csv(out.stream(), rows);
  }
  if (!c.meta.empty()) {
    Json j;
    j["k"] = c.k;
    j["colorful"] = c.colorful;
    if (c.colorful) {
      j["seed"] = c.seed;
    }
    j["total"] = to_string(total);
    j["types"] = types;
    write_json(c.meta, j);
  }
  return kExitOk;
}

int cmd_reduce_clique(const Config& c) {
  require(c.k >= 3, "-k must be at least 3");
  std::ifstream in(single_input(c));
  if (!in) {
    throw std::runtime_error("cannot open " + single_input(c));
  }
  auto g = parse_graph(in);
  auto r = reduce_clique_to_ksh(g, c.k);
  {
    Output out(c.out);
    write_hypergraph(out.stream(), r.hypergraph);
  }
  std::string sidecar = c.meta;
  if (sidecar.empty() && !c.out.empty() && c.out != "-") {
    sidecar = c.out + ".json";
  }
  if (!sidecar.empty()) {
    Json edges = Json::array();
    for (const auto& e : r.edge_map) {
      edges.push_back({{"u", e.u}, {"v", e.v}, {"singleton", e.singleton}, {"hyperedge", e.hyperedge}});
    }
    Json j;
    j["k"] = r.k;
    j["k_prime"] = r.k_prime;
    j["block_size"] = r.block_size;
    j["block_map"] = r.block_map;
    j["edge_map"] = edges;
    write_json(sidecar, j);
  }
  return kExitOk;
}

int cmd_ksh(const Config& c) {
  require(c.k >= 1, "-k must be at least 1");
  KshMethod method = KshMethod::kAuto;
  if (c.method == "subsets") {
    method = KshMethod::kSubsets;
  } else if (c.method == "unions") {
    method = KshMethod::kEdgeUnions;
  } else {
    require(c.method == "auto", "--method must be auto, subsets or unions");
  }
  auto lh = load(c);
  auto r = decide_ksh_bruteforce(lh.graph, c.k, method, enumeration_budget(kDefaultKshBudget));
  Json witness = Json::array();
  for (Vertex v : r.witness) {
    witness.push_back(lh.tokens[v]);
  }
  Json j;
  j["verdict"] = r.found ? "YES" : "NO";
  j["k"] = c.k;
  j["witness"] = witness;
  j["examined"] = r.examined;
  write_json(c.out, j);
  return r.found ? kExitOk : kExitNo;
}

namespace {

OVInstance parse_ov(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  OVInstance inst;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '%' || line[0] == '#') {
      continue;
    }
    std::vector<std::uint8_t> v;
    for (char ch : line) {
      if (ch == '0' || ch == '1') {
        v.push_back(static_cast<std::uint8_t>(ch - '0'));
      } else if (ch != ' ' && ch != '\t' && ch != ',' && ch != '\r') {
        throw ParseError(lineno, "vector entries must be 0 or 1");
      }
    }
    if (v.empty()) {
      throw ParseError(lineno, "empty vector");
    }
    inst.vectors.push_back(std::move(v));
  }
  return inst;
}

}  // namespace

int cmd_ov(const Config& c) {
  auto inst = parse_ov(single_input(c));
  auto r = solve_ov_via_nc(inst);
  Json j;
  j["verdict"] = r.orthogonal_pair ? "YES" : "NO";
  j["vectors"] = inst.vectors.size();
  j["dimension"] = inst.dimension();
  j["pair"] = r.pair ? Json::array({r.pair->first, r.pair->second}) : Json(nullptr);
  j["min_neighbor_count"] = *std::min_element(r.neighbor_counts.begin(), r.neighbor_counts.end());
  write_json(c.out, j);
  return r.orthogonal_pair ? kExitOk : kExitNo;
}

int cmd_gen_synthetic(const Config& c) {
  Hypergraph h(0, {});
  if (c.model == "powerlaw") {
    h = powerlaw_hypergraph(c.n, c.m, c.exponent, c.max_size, c.seed);
  } else if (c.model == "controlled") {
    ControlledParams p;
    p.n = c.n;
    p.m = c.m;
    p.alpha = c.gen_alpha;
    p.beta = c.gen_beta;
    p.large_size = c.large_size;
    p.small_fraction = c.small_fraction;
    h = controlled_hypergraph(p, c.seed);
  } else {
    throw UsageError("--model must be powerlaw or controlled");
  }
  Output out(c.out);
  write_hypergraph(out.stream(), h);
  return kExitOk;
}

namespace {

// A few large edges whose size grows with n: the projection is quadratic in
// |H| while the split stays linear.
Hypergraph bench_instance(const Config& c, std::size_t n) {
  constexpr std::size_t kLargeEdges = 4;
  ControlledParams p;
  p.n = n;
  p.m = std::max<std::size_t>(n, 2 * kLargeEdges);
  p.alpha = c.gen_alpha;
  p.beta = c.gen_beta;
  p.large_size = std::max(c.gen_alpha + 1, n / 4);
  p.small_fraction = 1.0 - static_cast<double>(kLargeEdges) / static_cast<double>(p.m);
  return controlled_hypergraph(p, c.seed);
}

}  // namespace

int cmd_bench(const Config& c) {
  require(c.k >= 2 && c.k <= TreeletCatalog::kMaxOrder, "-k must be in [2, 16]");
  require(c.reps >= 1, "--reps must be at least 1");
  std::vector<std::pair<std::string, Hypergraph>> cases;
  if (!c.inputs.empty()) {
    for (const auto& path : c.inputs) {
      ParseOptions opts;
      opts.dedupe_edges = !c.no_dedupe;
      cases.emplace_back(path, parse_hypergraph_file(path, opts).graph);
    }
  } else {
    for (std::size_t n : c.sizes) {
      cases.emplace_back("controlled-" + std::to_string(n), bench_instance(c, n));
    }
  }
  Output out(c.out);
  out.stream() << "instance,vertices,edges,size,path,alpha,beta,seconds\n";
  for (const auto& [name, h] : cases) {
    auto coloring = random_coloring(h.vertex_count(), c.k, c.seed);
    BuildOptions opts;
    opts.threads = c.threads;
    opts.keep_neighbor_sums = false;
    auto split = choose_split_refined(h, c.gamma).split;
    for (const char* path : {"naive", "split"}) {
      double best = 1e300;
      for (unsigned rep = 0; rep < c.reps; ++rep) {
        const auto start = std::chrono::steady_clock::now();
        if (path[0] == 'n') {
          build_counters_naive(h, c.k, coloring, opts);
        } else {
          build_counters(h, split, c.k, coloring, opts);
        }
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
      }
      const bool naive = path[0] == 'n';
      out.stream() << name << ',' << h.vertex_count() << ',' << h.edge_count() << ',' << h.size() << ','
                   << path << ',' << (naive ? h.rank() : split.alpha) << ','
                   << (naive ? 0 : split.beta) << ',' << format_real(best) << '\n';
    }
  }
  return kExitOk;
}

}  // namespace hyperlet::cli
