#include "hyperlet/counters.hpp"

#include <bit>
#include <cstring>
#include <functional>
#include <stdexcept>
#include <string>

#include "hyperlet/random.hpp"

namespace hyperlet {

Coloring random_coloring(std::size_t vertex_count, unsigned k, std::uint64_t seed) {
  if (k < 1 || k > TreeletCatalog::kMaxOrder) {
    throw std::invalid_argument("number of colors must be in [1, 16]");
  }
  Coloring c;
  c.k = k;
  c.seed = seed;
  c.colors.resize(vertex_count);
  Rng rng = make_rng(seed, Stream::kColoring);
  for (auto& color : c.colors) {
    color = static_cast<std::uint8_t>(uniform_below(rng, std::uint64_t{k}));
  }
  return c;
}

SubsetIndex::SubsetIndex(unsigned k) : k_(k), rank_(std::size_t{1} << k), by_size_(k + 1) {
  for (ColorSet s = 0; s < (ColorSet{1} << k); ++s) {
    auto& bucket = by_size_[std::popcount(s)];
    rank_[s] = static_cast<std::uint32_t>(bucket.size());
    bucket.push_back(s);
  }
}

CounterSet::CounterSet(std::shared_ptr<const TreeletCatalog> catalog, Coloring coloring,
                       std::size_t n)
    : catalog_(std::move(catalog)), coloring_(std::move(coloring)), n_(n), subsets_(coloring_.k) {
  if (catalog_->max_order() != coloring_.k) {
    throw std::invalid_argument("catalog order differs from the number of colors");
  }
  if (coloring_.colors.size() != n) {
    throw std::invalid_argument("coloring length differs from the vertex count");
  }
  counts_.resize(catalog_->size());
  for (TreeletId t = 0; t < catalog_->size(); ++t) {
    counts_[t].assign(subsets_.of_size((*catalog_)[t].order).size() * n, 0);
  }
}

std::span<const Count> CounterSet::row(TreeletId t, ColorSet s) const {
  return {counts_[t].data() + subsets_.rank(s) * n_, n_};
}

std::span<Count> CounterSet::row(TreeletId t, ColorSet s) {
  return {counts_[t].data() + subsets_.rank(s) * n_, n_};
}

std::span<const Count> CounterSet::eta(TreeletId t, ColorSet s) const {
  return {eta_[t].data() + subsets_.rank(s) * n_, n_};
}

std::span<const Count> CounterSet::eta_low(TreeletId t, ColorSet s) const {
  return {eta_low_[t].data() + subsets_.rank(s) * n_, n_};
}

std::span<const Count> CounterSet::eta_high(TreeletId t, ColorSet s) const {
  return {eta_high_[t].data() + subsets_.rank(s) * n_, n_};
}

Count CounterSet::total() const {
  Count w = 0;
  for (TreeletId t : catalog_->of_order(k())) {
    for (Count c : row(t, subsets_.full())) {
      w = checked_add(w, c, "total treelet count");
    }
  }
  return w;
}

bool CounterSet::same_counts(const CounterSet& other) const {
  return coloring_ == other.coloring_ && catalog_->dump() == other.catalog_->dump() &&
         counts_ == other.counts_;
}

using NeighborFn = std::function<NeighborSums(std::span<const Count>)>;

class CounterBuilder {
 public:
  CounterBuilder(CounterSet& cs, NeighborFn neighbor_sums, const BuildOptions& options)
      : cs_(cs), neighbor_sums_(std::move(neighbor_sums)), options_(options) {}

  void run() {
    const auto& catalog = cs_.catalog();
    const unsigned k = cs_.k();
    const std::size_t n = cs_.n_;
    const auto& colors = cs_.coloring_.colors;

    const TreeletId single = catalog.single_vertex();
    for (Vertex v = 0; v < n; ++v) {
      cs_.row(single, ColorSet{1} << colors[v])[v] = 1;
    }

    const bool keep = options_.keep_neighbor_sums;
    cs_.eta_.assign(catalog.size(), {});
    if (keep) {
      cs_.eta_low_.assign(catalog.size(), {});
      cs_.eta_high_.assign(catalog.size(), {});
    }

    for (unsigned h = 2; h <= k; ++h) {
      // Orders below h are frozen; publish neighbor sums for order h - 1.
      for (TreeletId t : catalog.of_order(h - 1)) {
        compute_neighbor_sums(t, keep);
      }
      for (TreeletId t : catalog.of_order(h)) {
        fill_treelet(t);
      }
    }
    if (!keep) {
      cs_.eta_.clear();
    }
  }

  /// Neighbor sums for every order below k from already-filled tables.
  void publish() {
    const auto& catalog = cs_.catalog();
    cs_.eta_.assign(catalog.size(), {});
    cs_.eta_low_.assign(catalog.size(), {});
    cs_.eta_high_.assign(catalog.size(), {});
    for (unsigned h = 1; h < cs_.k(); ++h) {
      for (TreeletId t : catalog.of_order(h)) {
        compute_neighbor_sums(t, true);
      }
    }
  }

 private:
  void compute_neighbor_sums(TreeletId t, bool keep) {
    const std::size_t n = cs_.n_;
    const unsigned order = cs_.catalog()[t].order;
    const auto& sets = cs_.subsets_.of_size(order);
    cs_.eta_[t].assign(sets.size() * n, 0);
    if (keep) {
      cs_.eta_low_[t].assign(sets.size() * n, 0);
      cs_.eta_high_[t].assign(sets.size() * n, 0);
    }
    for (ColorSet s : sets) {
      auto w = cs_.row(t, s);
      const std::size_t base = cs_.subsets_.rank(s) * n;
      bool any = false;
      for (Count x : w) {
        if (x != 0) {
          any = true;
          break;
        }
      }
      if (!any) {
        continue;
      }
      NeighborSums sums = neighbor_sums_(w);
      std::copy(sums.eta.begin(), sums.eta.end(), cs_.eta_[t].begin() + base);
      if (keep) {
        std::copy(sums.low.begin(), sums.low.end(), cs_.eta_low_[t].begin() + base);
        std::copy(sums.high.begin(), sums.high.end(), cs_.eta_high_[t].begin() + base);
      }
    }
  }

  void fill_treelet(TreeletId t) {
    const auto& catalog = cs_.catalog();
    const Treelet& tree = catalog[t];
    const unsigned rest_order = catalog[tree.rest].order;
    const std::size_t n = cs_.n_;
    const auto& colors = cs_.coloring_.colors;
    const Count d = tree.multiplicity;

    for (ColorSet s : cs_.subsets_.of_size(tree.order)) {
      // Enumerate S1 ⊂ S with |S1| = |T1|.
      std::vector<ColorSet> firsts;
      for (ColorSet s1 = s; s1 != 0; s1 = (s1 - 1) & s) {
        if (static_cast<unsigned>(std::popcount(s1)) == rest_order) {
          firsts.push_back(s1);
        }
      }
      std::vector<const Count*> rest_rows;
      std::vector<const Count*> eta_rows;
      for (ColorSet s1 : firsts) {
        rest_rows.push_back(cs_.row(tree.rest, s1).data());
        eta_rows.push_back(cs_.eta_[tree.sub].data() + cs_.subsets_.rank(s & ~s1) * n);
      }
      auto out = cs_.row(t, s);
      parallel_for(n, options_.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t v = begin; v < end; ++v) {
          const ColorSet own = ColorSet{1} << colors[v];
          if ((s & own) == 0) {
            continue;
          }
          Count acc = 0;
          for (std::size_t i = 0; i < firsts.size(); ++i) {
            if ((firsts[i] & own) == 0) {
              continue;
            }
            const Count a = rest_rows[i][v];
            if (a == 0) {
              continue;
            }
            acc = checked_add(acc, checked_mul(a, eta_rows[i][v], "treelet product"),
                              "treelet sum");
          }
          if (acc % d != 0) {
            throw std::logic_error("treelet counter not divisible by its normalizing factor");
          }
          out[v] = acc / d;
        }
      });
    }
  }

  CounterSet& cs_;
  NeighborFn neighbor_sums_;
  BuildOptions options_;
};

namespace {

std::shared_ptr<const TreeletCatalog> catalog_for(unsigned k) {
  return std::make_shared<const TreeletCatalog>(k);
}

void check_coloring(const Hypergraph& h, unsigned k, const Coloring& coloring) {
  if (k < 1) {
    throw std::invalid_argument("k must be at least 1");
  }
  if (coloring.k != k) {
    throw std::invalid_argument("coloring uses a different number of colors");
  }
  if (coloring.colors.size() != h.vertex_count()) {
    throw std::invalid_argument("coloring length differs from the vertex count");
  }
}

}  // namespace

CounterSet build_counters(const Hypergraph& h, const AlphaSplit& split, unsigned k,
                          const Coloring& coloring, const BuildOptions& options) {
  check_coloring(h, k, coloring);
  if (split.vertex_count() != h.vertex_count()) {
    throw std::invalid_argument("split does not belong to this hypergraph");
  }
  CounterSet cs(catalog_for(k), coloring, h.vertex_count());
  cs.alpha = split.alpha;
  SplitNeighborWeights engine(split, options.degree_cap);
  CounterBuilder(
      cs, [&](std::span<const Count> w) { return engine.compute(w, options.threads); }, options)
      .run();
  return cs;
}

CounterSet build_counters_naive(const Hypergraph& h, unsigned k, const Coloring& coloring,
                                const BuildOptions& options) {
  check_coloring(h, k, coloring);
  std::size_t entries = 0;
  for (EdgeId e = 0; e < h.edge_count(); ++e) {
    const std::size_t s = h.edge_size(e);
    entries += s * (s - 1);
  }
  if (entries > options.max_projection_entries) {
    throw std::runtime_error("Gaifman projection needs up to " + std::to_string(entries) +
                             " adjacency entries (~" + std::to_string(entries * 4 >> 20) +
                             " MiB), above the configured limit");
  }
  const Graph g = gaifman(h);
  CounterSet cs(catalog_for(k), coloring, h.vertex_count());
  cs.alpha = kNaiveAlpha;
  CounterBuilder(
      cs,
      [&](std::span<const Count> w) {
        NeighborSums sums;
        sums.eta.assign(g.vertex_count(), 0);
        parallel_for(g.vertex_count(), options.threads, [&](std::size_t begin, std::size_t end) {
          for (std::size_t v = begin; v < end; ++v) {
            Count sum = 0;
            for (Vertex u : g.neighbors(static_cast<Vertex>(v))) {
              sum = checked_add(sum, w[u], "neighbor weight");
            }
            sums.eta[v] = sum;
          }
        });
        sums.low = sums.eta;
        sums.high.assign(g.vertex_count(), 0);
        return sums;
      },
      options)
      .run();
  return cs;
}

void attach_neighbor_sums(CounterSet& cs, const AlphaSplit& split, const BuildOptions& options) {
  if (split.vertex_count() != cs.vertex_count()) {
    throw std::invalid_argument("split does not match the table");
  }
  SplitNeighborWeights engine(split, options.degree_cap);
  CounterBuilder(
      cs, [&](std::span<const Count> w) { return engine.compute(w, options.threads); }, options)
      .publish();
}

namespace {

constexpr char kMagic[8] = {'H', 'Y', 'P', 'L', 'T', 'B', 'L', '\0'};
constexpr std::uint32_t kVersion = 1;

void put_u64(std::ostream& out, std::uint64_t x) {
  unsigned char buf[8];
  for (int i = 0; i < 8; ++i) {
    buf[i] = static_cast<unsigned char>(x >> (8 * i));
  }
  out.write(reinterpret_cast<const char*>(buf), 8);
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char buf[8];
  if (!in.read(reinterpret_cast<char*>(buf), 8)) {
    throw std::runtime_error("counter table is truncated");
  }
  std::uint64_t x = 0;
  for (int i = 7; i >= 0; --i) {
    x = (x << 8) | buf[i];
  }
  return x;
}

}  // namespace

void save_counters(std::ostream& out, const CounterSet& cs) {
  out.write(kMagic, sizeof kMagic);
  put_u64(out, kVersion);
  put_u64(out, cs.k());
  put_u64(out, cs.alpha);
  put_u64(out, cs.coloring().seed);
  put_u64(out, cs.vertex_count());
  put_u64(out, cs.catalog().digest());
  out.write(reinterpret_cast<const char*>(cs.coloring().colors.data()),
            static_cast<std::streamsize>(cs.coloring().colors.size()));
  const auto& catalog = cs.catalog();
  for (TreeletId t = 0; t < catalog.size(); ++t) {
    for (ColorSet s : cs.subsets().of_size(catalog[t].order)) {
      for (Count c : cs.row(t, s)) {
        put_u64(out, static_cast<std::uint64_t>(c));
        put_u64(out, static_cast<std::uint64_t>(c >> 64));
      }
    }
  }
  if (!out) {
    throw std::runtime_error("failed to write counter table");
  }
}

CounterSet load_counters(std::istream& in) {
  char magic[sizeof kMagic];
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof magic) != 0) {
    throw std::runtime_error("not a counter table");
  }
  if (get_u64(in) != kVersion) {
    throw std::runtime_error("unsupported counter table version");
  }
  const std::uint64_t k = get_u64(in);
  if (k < 1 || k > TreeletCatalog::kMaxOrder) {
    throw std::runtime_error("counter table has invalid k");
  }
  const std::uint64_t alpha = get_u64(in);
  Coloring coloring;
  coloring.k = static_cast<unsigned>(k);
  coloring.seed = get_u64(in);
  const std::uint64_t n = get_u64(in);
  const std::uint64_t digest = get_u64(in);
  auto catalog = catalog_for(coloring.k);
  if (catalog->digest() != digest) {
    throw std::runtime_error("counter table was written with a different treelet catalog");
  }
  coloring.colors.resize(n);
  if (!in.read(reinterpret_cast<char*>(coloring.colors.data()), static_cast<std::streamsize>(n))) {
    throw std::runtime_error("counter table is truncated");
  }
  for (auto c : coloring.colors) {
    if (c >= k) {
      throw std::runtime_error("counter table has a color out of range");
    }
  }
  CounterSet cs(catalog, std::move(coloring), n);
  cs.alpha = alpha;
  for (auto& rows : cs.counts_) {
    for (auto& c : rows) {
      const std::uint64_t lo = get_u64(in);
      const std::uint64_t hi = get_u64(in);
      c = (Count{hi} << 64) | lo;
    }
  }
  return cs;
}

}  // namespace hyperlet
