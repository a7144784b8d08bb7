#include "hyperlet/alias.hpp"

#include <algorithm>
#include <stdexcept>

namespace hyperlet {

AliasPool::TableId AliasPool::add(std::span<const Count> weights) {
  Count total = 0;
  for (Count w : weights) {
    total = checked_add(total, w, "alias table total");
  }
  if (total == 0) {
    return kNone;
  }
  if (weights.size() >= kNone) {
    throw std::length_error("alias table too large");
  }
  const std::size_t m = weights.size();
  const std::size_t base = threshold_.size();
  threshold_.resize(base + m);
  alias_.resize(base + m);

  Count scaled_total;
  const bool overflow = __builtin_mul_overflow(total, static_cast<Count>(m), &scaled_total);
  if (overflow) {
    Count run = 0;
    for (std::size_t j = 0; j < m; ++j) {
      run += weights[j];
      threshold_[base + j] = run;
      alias_[base + j] = static_cast<std::uint32_t>(j);
    }
  } else {
    std::vector<Count> scaled(m);
    std::vector<std::uint32_t> small;
    std::vector<std::uint32_t> large;
    for (std::size_t j = 0; j < m; ++j) {
      scaled[j] = weights[j] * static_cast<Count>(m);
      (scaled[j] < total ? small : large).push_back(static_cast<std::uint32_t>(j));
    }
    while (!small.empty() && !large.empty()) {
      const std::uint32_t s = small.back();
      small.pop_back();
      const std::uint32_t g = large.back();
      threshold_[base + s] = scaled[s];
      alias_[base + s] = g;
      scaled[g] -= total - scaled[s];
      if (scaled[g] < total) {
        large.pop_back();
        small.push_back(g);
      }
    }
    // Leftovers are exactly full columns.
    for (std::uint32_t j : large) {
      threshold_[base + j] = total;
      alias_[base + j] = j;
    }
    for (std::uint32_t j : small) {
      threshold_[base + j] = total;
      alias_[base + j] = j;
    }
  }
  begin_.push_back(base + m);
  totals_.push_back(total);
  prefix_mode_.push_back(overflow ? 1 : 0);
  return static_cast<TableId>(totals_.size() - 1);
}

std::size_t AliasPool::draw(TableId id, Rng& rng) const {
  const std::size_t base = begin_[id];
  const std::size_t m = begin_[id + 1] - base;
  const Count total = totals_[id];
  if (prefix_mode_[id] != 0) {
    const Count r = uniform_below(rng, total);
    auto first = threshold_.begin() + static_cast<std::ptrdiff_t>(base);
    auto it = std::upper_bound(first, first + static_cast<std::ptrdiff_t>(m), r);
    return static_cast<std::size_t>(it - first);
  }
  const std::size_t j = static_cast<std::size_t>(uniform_below(rng, std::uint64_t{m}));
  const Count r = uniform_below(rng, total);
  return r < threshold_[base + j] ? j : alias_[base + j];
}

std::vector<Count> AliasPool::implied_mass(TableId id) const {
  const std::size_t base = begin_[id];
  const std::size_t m = begin_[id + 1] - base;
  const Count total = totals_[id];
  std::vector<Count> mass(m, 0);
  for (std::size_t j = 0; j < m; ++j) {
    if (prefix_mode_[id] != 0) {
      const Count below = j == 0 ? 0 : threshold_[base + j - 1];
      mass[j] = threshold_[base + j] - below;
    } else {
      mass[j] += threshold_[base + j];
      mass[alias_[base + j]] += total - threshold_[base + j];
    }
  }
  return mass;
}

}  // namespace hyperlet
