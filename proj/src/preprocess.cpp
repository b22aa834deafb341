#include "husr/preprocess.hpp"

#include <algorithm>

namespace husr {

SeuTable compute_seu(const QuantitativeSequenceDatabase& db) {
  SeuTable seu;
  for (std::size_t s = 0; s < db.size(); ++s) {
    const Utility su = db.sequence_utility(s);
    for (const IndexedEntry& entry : db.index(s).entries) seu[entry.item] += su;
  }
  return seu;
}

QuantitativeSequenceDatabase remove_items(const QuantitativeSequenceDatabase& db, const std::vector<Item>& items) {
  std::vector<Item> doomed = items;
  std::sort(doomed.begin(), doomed.end());
  const auto is_doomed = [&](const ItemQuantity& entry) {
    return std::binary_search(doomed.begin(), doomed.end(), entry.item);
  };

  std::vector<Sequence> kept;
  kept.reserve(db.size());
  for (const Sequence& sequence : db.sequences()) {
    Sequence reduced{sequence.sid, {}};
    for (const Itemset& itemset : sequence.itemsets) {
      Itemset filtered;
      std::copy_if(itemset.begin(), itemset.end(), std::back_inserter(filtered),
                   [&](const ItemQuantity& entry) { return !is_doomed(entry); });
      if (!filtered.empty()) reduced.itemsets.push_back(std::move(filtered));
    }
    if (!reduced.itemsets.empty()) kept.push_back(std::move(reduced));
  }

  ExternalUtilityTable eu;
  for (const auto& [item, utility] : db.external_utilities().entries()) {
    if (!std::binary_search(doomed.begin(), doomed.end(), item)) eu.set(item, utility);
  }
  return QuantitativeSequenceDatabase(std::move(kept), std::move(eu));
}

std::size_t EliminationResult::removed_count() const noexcept {
  std::size_t n = 0;
  for (const auto& round : removed_per_round) n += round.size();
  return n;
}

EliminationResult eliminate_unpromising_items(const QuantitativeSequenceDatabase& db, Utility minutil,
                                              bool iterative) {
  EliminationResult result{db, {}, {}};
  result.seu_trace.push_back(compute_seu(db));
  while (true) {
    std::vector<Item> unpromising;
    for (const auto& [item, seu] : result.seu_trace.back()) {
      if (seu < minutil) unpromising.push_back(item);
    }
    if (unpromising.empty()) break;
    result.database = remove_items(result.database, unpromising);
    result.removed_per_round.push_back(std::move(unpromising));
    result.seu_trace.push_back(compute_seu(result.database));
    if (!iterative) break;
  }
  return result;
}

ReucMap build_reucm(const QuantitativeSequenceDatabase& db) {
  ReucMap map;
  for (std::size_t s = 0; s < db.size(); ++s) {
    const SequenceIndex& index = db.index(s);
    const Utility su = index.total_utility();
    const auto& entries = index.entries;
    for (std::size_t x = 0; x < entries.size(); ++x) {
      for (std::size_t y = x + 1; y < entries.size(); ++y) {
        // Entries are ordered by itemset, so entries[x] never comes after entries[y].
        map.add(entries[x].item, entries[y].item, su);
        if (entries[x].itemset == entries[y].itemset) map.add(entries[y].item, entries[x].item, su);
      }
    }
  }
  return map;
}

}  // namespace husr
