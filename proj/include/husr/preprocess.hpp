#pragma once

// Sequence-estimated utilities, unpromising-item elimination and the ordered
// item-pair co-occurrence map used to gate expansions.

#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "husr/core.hpp"

namespace husr {

/// SEU(i): sum of sequence utilities over sequences containing i.
using SeuTable = std::map<Item, Utility>;

SeuTable compute_seu(const QuantitativeSequenceDatabase& db);

/// Copy of the database without the given items. Itemsets and sequences that
/// become empty are dropped; sids are preserved.
QuantitativeSequenceDatabase remove_items(const QuantitativeSequenceDatabase& db, const std::vector<Item>& items);

struct EliminationResult {
  QuantitativeSequenceDatabase database;
  /// Items removed in each round (never an empty round).
  std::vector<std::vector<Item>> removed_per_round;
  /// SEU table before the first round followed by the table after each round.
  std::vector<SeuTable> seu_trace;

  std::size_t removed_count() const noexcept;
};

/// One removal pass when iterative is false; otherwise repeats removal and
/// SEU recomputation until every remaining item has SEU >= minutil.
EliminationResult eliminate_unpromising_items(const QuantitativeSequenceDatabase& db, Utility minutil,
                                              bool iterative);

/// Ordered item-pair map: value(a, b) is the summed utility of sequences in
/// which a's itemset precedes b's or a and b share an itemset. Zero pairs are
/// not stored.
class ReucMap {
 public:
  Utility get(Item a, Item b) const noexcept {
    auto it = values_.find(key(a, b));
    return it == values_.end() ? 0 : it->second;
  }
  void add(Item a, Item b, Utility value) { values_[key(a, b)] += value; }
  void reserve(std::size_t n) { values_.reserve(n); }
  std::size_t size() const noexcept { return values_.size(); }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (const auto& [k, value] : values_) fn(Item{static_cast<std::uint32_t>(k >> 32)}, Item{static_cast<std::uint32_t>(k)}, value);
  }

 private:
  static std::uint64_t key(Item a, Item b) noexcept { return (std::uint64_t{a.id} << 32) | b.id; }

  std::unordered_map<std::uint64_t, Utility> values_;
};

ReucMap build_reucm(const QuantitativeSequenceDatabase& db);

}  // namespace husr
