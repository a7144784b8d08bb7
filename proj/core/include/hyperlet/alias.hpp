#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hyperlet/count.hpp"
#include "hyperlet/random.hpp"

namespace hyperlet {

/**
 * Many exact alias tables packed into shared arrays.
 *
 * Table i over weights w_0..w_{m-1} with total W: column j keeps a threshold
 * in [0, W] and an alias, draw j uniformly and r in [0, W), return j when
 * r < threshold else alias. Thresholds are integers (w * m scaled against
 * W), so the law is exactly w_j / W. If w * m overflows 128 bits the table
 * falls back to prefix sums with a binary-search draw.
 */
class AliasPool {
 public:
  using TableId = std::uint32_t;
  static constexpr TableId kNone = ~TableId{0};

  /// Returns kNone when every weight is zero.
  TableId add(std::span<const Count> weights);

  std::size_t draw(TableId id, Rng& rng) const;
  Count total(TableId id) const { return totals_[id]; }
  std::size_t size(TableId id) const { return begin_[id + 1] - begin_[id]; }
  std::size_t table_count() const { return totals_.size(); }
  std::size_t entry_count() const { return threshold_.size(); }

  /// Exact law of a table, up to scale: entry j is drawn with probability
  /// mass[j] / sum(mass). Alias tables give w_j * size(id); prefix tables
  /// (used when that product would overflow) give w_j itself.
  std::vector<Count> implied_mass(TableId id) const;

 private:
  std::vector<std::size_t> begin_{0};
  std::vector<Count> totals_;
  std::vector<std::uint8_t> prefix_mode_;
  std::vector<Count> threshold_;
  std::vector<std::uint32_t> alias_;
};

}  // namespace hyperlet
