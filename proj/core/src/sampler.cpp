#include "hyperlet/sampler.hpp"

#include <algorithm>
#include <bit>
#include <exception>
#include <mutex>
#include <thread>

namespace hyperlet {

Generators::Generators(const CounterSet& counters, const AlphaSplit& split)
    : cs_(&counters), split_(&split) {
  if (!counters.has_neighbor_sums()) {
    throw std::invalid_argument("counter table has no neighbor sums; attach them first");
  }
  if (split.vertex_count() != counters.vertex_count()) {
    throw std::invalid_argument("split does not match the counter table");
  }
  const auto& catalog = counters.catalog();
  const std::size_t n = counters.vertex_count();
  const unsigned k = counters.k();
  const ColorSet full = counters.subsets().full();

  top_treelets_ = catalog.of_order(k);
  std::vector<Count> weights;
  weights.reserve(top_treelets_.size() * n);
  for (TreeletId t : top_treelets_) {
    auto row = counters.row(t, full);
    weights.insert(weights.end(), row.begin(), row.end());
  }
  root_table_ = pool_.add(weights);
  if (root_table_ == AliasPool::kNone) {
    throw NoColorfulOccurrences();
  }
  root_weight_ = pool_.total(root_table_);

  const Hypergraph& upper = split.upper;
  family_offset_.assign(catalog.size(), 0);
  std::size_t total_families = 0;
  for (TreeletId t = 0; t < catalog.size(); ++t) {
    family_offset_[t] = total_families;
    if (catalog[t].order < k) {
      total_families += counters.subsets().of_size(catalog[t].order).size();
    }
  }
  families_.resize(total_families);
  family_present_.assign(total_families, 0);

  for (TreeletId t = 0; t < catalog.size(); ++t) {
    if (catalog[t].order >= k) {
      continue;
    }
    for (ColorSet s : counters.subsets().of_size(catalog[t].order)) {
      auto w = counters.row(t, s);
      if (std::all_of(w.begin(), w.end(), [](Count x) { return x == 0; })) {
        continue;
      }
      const std::size_t index = family_offset_[t] + counters.subsets().rank(s);
      Family& fam = families_[index];
      family_present_[index] = 1;
      fam.lower.assign(n, AliasPool::kNone);
      fam.vertex_edges.assign(n, AliasPool::kNone);
      fam.edge_members.assign(upper.edge_count(), AliasPool::kNone);
      std::vector<Count> edge_total(upper.edge_count(), 0);
      for (EdgeId e = 0; e < upper.edge_count(); ++e) {
        weights.clear();
        for (Vertex u : upper.edge(e)) {
          weights.push_back(w[u]);
        }
        fam.edge_members[e] = pool_.add(weights);
        if (fam.edge_members[e] != AliasPool::kNone) {
          edge_total[e] = pool_.total(fam.edge_members[e]);
        }
      }
      for (Vertex v = 0; v < n; ++v) {
        weights.clear();
        for (Vertex u : split.lower_graph.neighbors(v)) {
          weights.push_back(w[u]);
        }
        fam.lower[v] = pool_.add(weights);
        weights.clear();
        for (EdgeId e : upper.incidence(v)) {
          weights.push_back(edge_total[e]);
        }
        fam.vertex_edges[v] = pool_.add(weights);
      }
    }
  }
}

const Generators::Family* Generators::family(TreeletId t2, ColorSet s2) const {
  const std::size_t index = family_offset_[t2] + cs_->subsets().rank(s2);
  return family_present_[index] != 0 ? &families_[index] : nullptr;
}

std::pair<TreeletId, Vertex> Generators::draw_root(Rng& rng) const {
  const std::size_t n = cs_->vertex_count();
  const std::size_t j = pool_.draw(root_table_, rng);
  return {top_treelets_[j / n], static_cast<Vertex>(j % n)};
}

std::pair<ColorSet, ColorSet> Generators::draw_partition(TreeletId t, ColorSet s, Vertex v,
                                                         Rng& rng) const {
  const Treelet& tree = cs_->catalog()[t];
  const unsigned rest_order = cs_->catalog()[tree.rest].order;
  const ColorSet own = ColorSet{1} << cs_->coloring().colors[v];
  std::vector<std::pair<ColorSet, Count>> options;
  Count total = 0;
  for (ColorSet s1 = s; s1 != 0; s1 = (s1 - 1) & s) {
    if ((s1 & own) == 0 || static_cast<unsigned>(std::popcount(s1)) != rest_order) {
      continue;
    }
    const Count a = cs_->at(tree.rest, s1, v);
    if (a == 0) {
      continue;
    }
    const Count weight = checked_mul(a, cs_->eta(tree.sub, s & ~s1)[v], "partition weight");
    if (weight != 0) {
      options.emplace_back(s1, weight);
      total = checked_add(total, weight, "partition weight");
    }
  }
  if (total == 0) {
    throw std::logic_error("partition drawn for a zero counter");
  }
  Count r = uniform_below(rng, total);
  for (const auto& [s1, weight] : options) {
    if (r < weight) {
      return {s1, s & ~s1};
    }
    r -= weight;
  }
  throw std::logic_error("partition draw fell through");
}

Vertex Generators::draw_neighbor(TreeletId t2, ColorSet s2, Vertex v, Rng& rng) const {
  const Family* fam = family(t2, s2);
  const Count low = cs_->eta_low(t2, s2)[v];
  const Count high = cs_->eta_high(t2, s2)[v];
  const Count total = checked_add(low, high, "branch weight");
  if (fam == nullptr || total == 0) {
    throw std::logic_error("neighbor draw with zero neighbor weight");
  }
  const AlphaSplit& split = *split_;
  for (;;) {
    Vertex u;
    if (uniform_below(rng, total) < low) {
      auto nbrs = split.lower_graph.neighbors(v);
      u = nbrs[pool_.draw(fam->lower[v], rng)];
    } else {
      auto type = split.upper.incidence(v);
      for (;;) {
        const EdgeId e = type[pool_.draw(fam->vertex_edges[v], rng)];
        u = split.upper.edge(e)[pool_.draw(fam->edge_members[e], rng)];
        if (u == v) {
          continue;
        }
        const std::uint64_t shared = split.shared_upper_edges(u, v);
        if (uniform_below(rng, shared) == 0) {
          break;
        }
      }
    }
    const std::uint64_t ways = (split.lower_adjacent(u, v) ? 1 : 0) +
                               (split.upper_adjacent(u, v) ? 1 : 0);
    if (ways == 1 || uniform_below(rng, ways) == 0) {
      return u;
    }
  }
}

NeighborDraw Generators::sample_neigh(TreeletId t, ColorSet s, Vertex v, Rng& rng) const {
  NeighborDraw out;
  std::tie(out.rest_colors, out.sub_colors) = draw_partition(t, s, v, rng);
  out.u = draw_neighbor(cs_->catalog()[t].sub, out.sub_colors, v, rng);
  return out;
}

namespace {

void sample_into(const Generators& gen, TreeletId t, ColorSet s, Vertex v, Rng& rng,
                 SampleOutcome& out) {
  const Treelet& tree = gen.counters().catalog()[t];
  if (tree.order == 1) {
    out.vertices.push_back(v);
    return;
  }
  const NeighborDraw d = gen.sample_neigh(t, s, v, rng);
  sample_into(gen, tree.rest, d.rest_colors, v, rng, out);
  sample_into(gen, tree.sub, d.sub_colors, d.u, rng, out);
  out.tree_edges.emplace_back(v, d.u);
}

}  // namespace

SampleOutcome sample_treelet(const Generators& gen, Rng& rng) {
  SampleOutcome out;
  const auto [t, v] = gen.draw_root(rng);
  sample_into(gen, t, gen.counters().subsets().full(), v, rng, out);
  std::sort(out.vertices.begin(), out.vertices.end());
  return out;
}

Hypergraphlet extract_hypergraphlet(const AlphaSplit& split, std::span<const Vertex> subset) {
  Hypergraphlet out;
  out.vertex_map.assign(subset.begin(), subset.end());
  std::sort(out.vertex_map.begin(), out.vertex_map.end());
  out.order = static_cast<unsigned>(out.vertex_map.size());
  const auto& u = out.vertex_map;
  for (const Hypergraph* part : {&split.lower, &split.upper}) {
    for (unsigned i = 0; i < u.size(); ++i) {
      for (EdgeId e : part->incidence(u[i])) {
        auto members = part->edge(e);
        std::uint32_t mask = 0;
        bool first = true;
        for (unsigned j = 0; j < u.size() && first; ++j) {
          if (std::binary_search(members.begin(), members.end(), u[j])) {
            first = j >= i;
            mask |= 1u << j;
          }
        }
        if (first) {
          out.edges.push_back(mask);
        }
      }
    }
  }
  std::sort(out.edges.begin(), out.edges.end());
  out.edges.erase(std::unique(out.edges.begin(), out.edges.end()), out.edges.end());
  return out;
}

std::size_t SubsetExtractor::TupleHash::operator()(const std::vector<Vertex>& t) const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (Vertex x : t) {
    h = (h ^ x) * 0x100000001b3ull;
  }
  return static_cast<std::size_t>(h);
}

SubsetExtractor::SubsetExtractor(const AlphaSplit& split, unsigned k, std::uint64_t budget)
    : split_(&split), k_(k) {
  if (k > kMaxHypergraphletOrder) {
    throw std::invalid_argument("subset extraction supports at most 32 vertices");
  }
  const Hypergraph& lower = split.lower;
  std::uint64_t work = 0;
  std::vector<Vertex> tuple;
  for (EdgeId e = 0; e < lower.edge_count(); ++e) {
    auto members = lower.edge(e);
    const unsigned size = static_cast<unsigned>(members.size());
    // All nonempty sub-tuples of e with at most k members, in ascending order.
    std::vector<unsigned> pick;
    auto rec = [&](auto&& self, unsigned from) -> void {
      if (!pick.empty()) {
        if (++work > budget) {
          throw BudgetError("subset counters exceed the enumeration budget");
        }
        tuple.clear();
        for (unsigned p : pick) {
          tuple.push_back(members[p]);
        }
        ++containing_[tuple];
      }
      if (pick.size() == k_) {
        return;
      }
      for (unsigned p = from; p < size; ++p) {
        pick.push_back(p);
        self(self, p + 1);
        pick.pop_back();
      }
    };
    rec(rec, 0);
  }
}

Hypergraphlet SubsetExtractor::extract(std::span<const Vertex> subset) const {
  if (subset.size() > k_) {
    throw std::invalid_argument("subset larger than the extractor order");
  }
  Hypergraphlet out;
  out.vertex_map.assign(subset.begin(), subset.end());
  std::sort(out.vertex_map.begin(), out.vertex_map.end());
  out.order = static_cast<unsigned>(out.vertex_map.size());
  const auto& u = out.vertex_map;
  const unsigned m = out.order;

  std::vector<std::int64_t> exact(std::size_t{1} << m, 0);
  std::vector<Vertex> tuple;
  for (std::uint32_t x = 1; x < (1u << m); ++x) {
    tuple.clear();
    for (unsigned j = 0; j < m; ++j) {
      if (x >> j & 1u) {
        tuple.push_back(u[j]);
      }
    }
    auto it = containing_.find(tuple);
    exact[x] = it == containing_.end() ? 0 : it->second;
  }
  // Superset Möbius inversion: N*(X) = sum over X ⊆ Y ⊆ U of (-1)^{|Y \ X|} N[Y].
  for (unsigned j = 0; j < m; ++j) {
    for (std::uint32_t x = 1; x < (1u << m); ++x) {
      if ((x >> j & 1u) == 0) {
        exact[x] -= exact[x | (1u << j)];
      }
    }
  }
  for (std::uint32_t x = 1; x < (1u << m); ++x) {
    if (exact[x] > 0) {
      out.edges.push_back(x);
    }
  }

  std::vector<std::pair<EdgeId, std::uint32_t>> upper;
  for (unsigned j = 0; j < m; ++j) {
    for (EdgeId e : split_->upper.incidence(u[j])) {
      upper.emplace_back(e, 1u << j);
    }
  }
  std::sort(upper.begin(), upper.end());
  for (std::size_t i = 0; i < upper.size();) {
    std::uint32_t mask = 0;
    std::size_t j = i;
    while (j < upper.size() && upper[j].first == upper[i].first) {
      mask |= upper[j].second;
      ++j;
    }
    out.edges.push_back(mask);
    i = j;
  }
  std::sort(out.edges.begin(), out.edges.end());
  out.edges.erase(std::unique(out.edges.begin(), out.edges.end()), out.edges.end());
  return out;
}

std::vector<std::uint32_t> local_adjacency(const AlphaSplit& split,
                                           std::span<const Vertex> subset) {
  std::vector<Vertex> u(subset.begin(), subset.end());
  std::sort(u.begin(), u.end());
  std::vector<std::uint32_t> rows(u.size(), 0);
  for (unsigned i = 0; i < u.size(); ++i) {
    for (unsigned j = i + 1; j < u.size(); ++j) {
      if (split.lower_adjacent(u[i], u[j]) || split.upper_adjacent(u[i], u[j])) {
        rows[i] |= 1u << j;
        rows[j] |= 1u << i;
      }
    }
  }
  return rows;
}

Count spanning_tree_count(std::span<const std::uint32_t> rows) {
  const std::size_t k = rows.size();
  if (k <= 1) {
    return 1;
  }
  // Laplacian with the last row and column removed.
  const std::size_t m = k - 1;
  std::vector<__int128> a(m * m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    a[i * m + i] = std::popcount(rows[i]);
    for (std::size_t j = 0; j < m; ++j) {
      if (i != j && (rows[i] >> j & 1u)) {
        a[i * m + j] = -1;
      }
    }
  }
  // Bareiss elimination: every intermediate is a minor, so divisions are exact.
  __int128 prev = 1;
  int sign = 1;
  for (std::size_t p = 0; p < m; ++p) {
    if (a[p * m + p] == 0) {
      std::size_t r = p + 1;
      while (r < m && a[r * m + p] == 0) {
        ++r;
      }
      if (r == m) {
        throw std::invalid_argument("graph is disconnected");
      }
      for (std::size_t c = 0; c < m; ++c) {
        std::swap(a[p * m + c], a[r * m + c]);
      }
      sign = -sign;
    }
    for (std::size_t i = p + 1; i < m; ++i) {
      for (std::size_t j = p + 1; j < m; ++j) {
        a[i * m + j] = (a[i * m + j] * a[p * m + p] - a[i * m + p] * a[p * m + j]) / prev;
      }
      a[i * m + p] = 0;
    }
    prev = a[p * m + p];
  }
  const __int128 det = sign * a[(m - 1) * m + (m - 1)];
  if (det <= 0) {
    throw std::invalid_argument("graph is disconnected");
  }
  return static_cast<Count>(det);
}

long double colorful_probability(unsigned k) {
  long double p = 1;
  for (unsigned i = 1; i <= k; ++i) {
    p *= static_cast<long double>(i) / static_cast<long double>(k);
  }
  return p;
}

namespace {

struct TypeTally {
  std::map<Count, std::uint64_t> hist;
  std::uint64_t accepted = 0;
};

struct WorkerResult {
  std::map<HypergraphletKey, TypeTally> tally;
  std::uint64_t draws = 0;
  std::vector<LogEntry> log;
};

void run_worker(const Generators& gen, const EstimateOptions& options,
                const SubsetExtractor* extractor, std::uint64_t quota, Rng rng,
                WorkerResult& out) {
  KeyCache cache;
  const AlphaSplit& split = gen.split();
  std::uint64_t kept = 0;
  while (kept < quota) {
    SampleOutcome s = sample_treelet(gen, rng);
    ++out.draws;
    const auto rows = local_adjacency(split, s.vertices);
    s.sigma = spanning_tree_count(rows);
    s.hypergraphlet = extractor != nullptr ? extractor->extract(s.vertices)
                                           : extract_hypergraphlet(split, s.vertices);
    const HypergraphletKey& key = cache.get(s.hypergraphlet);
    bool accept = true;
    if (options.uniform) {
      accept = uniform_below(rng, s.sigma) == 0;
    }
    auto& t = out.tally[key];
    ++t.hist[s.sigma];
    if (accept) {
      ++t.accepted;
      ++kept;
    }
    if (options.keep_log) {
      out.log.push_back({key, s.sigma, accept});
    }
  }
}

}  // namespace

EstimateResult empty_estimate(unsigned k, const EstimateOptions& options) {
  EstimateResult r;
  r.k = k;
  r.samples = options.samples;
  r.uniform = options.uniform;
  r.colorful_probability = colorful_probability(k);
  return r;
}

EstimateResult estimate_counts(const Generators& gen, const EstimateOptions& options,
                               std::uint64_t seed) {
  if (options.samples < 1) {
    throw std::invalid_argument("sample budget must be at least 1");
  }
  if (options.threads < 1) {
    throw std::invalid_argument("thread count must be at least 1");
  }
  const unsigned k = gen.k();
  if (k > kMaxKeyOrder) {
    throw std::invalid_argument("estimation supports k <= " + std::to_string(kMaxKeyOrder));
  }
  std::unique_ptr<SubsetExtractor> extractor;
  if (options.ie_extract) {
    extractor = std::make_unique<SubsetExtractor>(gen.split(), k);
  }

  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(options.threads, options.samples));
  std::vector<WorkerResult> results(workers);
  {
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t quota = options.samples / workers + (w < options.samples % workers);
      auto body = [&, w, quota] {
        try {
          run_worker(gen, options, extractor.get(), quota, make_rng(seed, Stream::kSampling, w),
                     results[w]);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      };
      if (workers == 1) {
        body();
      } else {
        pool.emplace_back(body);
      }
    }
    pool.clear();
    for (auto& e : errors) {
      if (e) {
        std::rethrow_exception(e);
      }
    }
  }

  EstimateResult out = empty_estimate(k, options);
  out.root_weight = gen.root_weight();
  std::map<HypergraphletKey, TypeTally> merged;
  for (auto& r : results) {
    out.draws += r.draws;
    for (auto& [key, t] : r.tally) {
      auto& m = merged[key];
      m.accepted += t.accepted;
      for (auto [sigma, c] : t.hist) {
        m.hist[sigma] += c;
      }
    }
    if (options.keep_log) {
      out.log.insert(out.log.end(), r.log.begin(), r.log.end());
    }
  }

  const long double w = to_long_double(out.root_weight);
  long double weight_sum = 0;
  std::uint64_t accepted_sum = 0;
  for (auto& [key, t] : merged) {
    TypeEstimate e;
    e.key = key;
    e.samples = t.accepted;
    e.sigma_hist = t.hist;
    for (auto [sigma, c] : t.hist) {
      e.inv_sigma_sum += static_cast<long double>(c) / to_long_double(sigma);
    }
    if (options.uniform) {
      e.colorful_estimate = w / (static_cast<long double>(k) * static_cast<long double>(out.draws)) *
                            static_cast<long double>(t.accepted);
    } else {
      e.colorful_estimate =
          w / (static_cast<long double>(k) * static_cast<long double>(options.samples)) *
          e.inv_sigma_sum;
    }
    e.total_estimate = e.colorful_estimate / out.colorful_probability;
    weight_sum += e.inv_sigma_sum;
    accepted_sum += t.accepted;
    out.types.push_back(std::move(e));
  }
  for (auto& e : out.types) {
    e.relative_frequency = options.uniform
                               ? static_cast<long double>(e.samples) /
                                     static_cast<long double>(accepted_sum)
                               : e.inv_sigma_sum / weight_sum;
  }
  return out;
}

}  // namespace hyperlet
