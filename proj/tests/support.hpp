#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "husr/core.hpp"
#include "husr/ingest.hpp"

namespace husr::testing {

// Items of the running example: a..g are ids 1..7.
inline constexpr Item a{1}, b{2}, c{3}, d{4}, e{5}, f{6}, g{7};

inline std::vector<Item> items(std::initializer_list<Item> list) { return std::vector<Item>(list); }

inline const char* example_sequences() {
  return "1:1 -1 2:2 -1 3:1 7:1 -1 -2\n"
         "1:1 -1 3:1 -1 5:1 7:1 -1 -2\n"
         "2:1 -1 4:1 -1 7:2 -1 -2\n"
         "5:1 -1 6:2 -1 -2\n";
}

inline const char* example_utilities() { return "1 2\n2 1\n3 4\n4 7\n5 1\n6 2\n7 1\n"; }

inline QuantitativeSequenceDatabase example_db() { return parse_database(example_sequences(), example_utilities()); }

/// The example with f and e removed, built directly rather than by elimination.
inline QuantitativeSequenceDatabase reduced_example_db() {
  return parse_database(
      "1:1 -1 2:2 -1 3:1 7:1 -1 -2\n"
      "1:1 -1 3:1 -1 7:1 -1 -2\n"
      "2:1 -1 4:1 -1 7:2 -1 -2\n",
      "1 2\n2 1\n3 4\n4 7\n7 1\n");
}

struct RandomDbShape {
  std::uint32_t max_sequences = 50;
  std::uint32_t max_items = 12;
  std::uint32_t max_itemsets = 8;
  std::uint32_t max_itemset_size = 4;
  std::uint32_t max_quantity = 5;
  std::uint32_t max_utility = 9;
};

/// Small random database; every sequence holds at least one item.
inline QuantitativeSequenceDatabase random_db(std::uint64_t seed, const RandomDbShape& shape = {}) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](std::uint32_t lo, std::uint32_t hi) {
    return std::uniform_int_distribution<std::uint32_t>(lo, hi)(rng);
  };
  const std::uint32_t alphabet = uniform(2, shape.max_items);
  ExternalUtilityTable eu;
  for (std::uint32_t id = 1; id <= alphabet; ++id) eu.set(Item{id}, uniform(1, shape.max_utility));

  std::vector<Sequence> sequences;
  const std::uint32_t count = uniform(1, shape.max_sequences);
  for (std::uint32_t s = 0; s < count; ++s) {
    std::vector<std::uint32_t> pool(alphabet);
    for (std::uint32_t id = 0; id < alphabet; ++id) pool[id] = id + 1;
    std::shuffle(pool.begin(), pool.end(), rng);
    std::size_t next = 0;
    Sequence sequence;
    sequence.sid = s + 1;
    const std::uint32_t itemsets = uniform(1, shape.max_itemsets);
    for (std::uint32_t k = 0; k < itemsets && next < pool.size(); ++k) {
      const std::uint32_t size = std::min<std::uint32_t>(uniform(1, shape.max_itemset_size),
                                                         static_cast<std::uint32_t>(pool.size() - next));
      Itemset itemset;
      for (std::uint32_t j = 0; j < size; ++j) itemset.push_back({Item{pool[next++]}, uniform(1, shape.max_quantity)});
      std::sort(itemset.begin(), itemset.end(),
                [](const ItemQuantity& x, const ItemQuantity& y) { return x.item < y.item; });
      sequence.itemsets.push_back(std::move(itemset));
    }
    sequences.push_back(std::move(sequence));
  }
  ExternalUtilityTable used;
  for (const Sequence& sequence : sequences) {
    for (const Itemset& itemset : sequence.itemsets) {
      for (const auto& entry : itemset) used.set(entry.item, eu.at(entry.item));
    }
  }
  return QuantitativeSequenceDatabase(std::move(sequences), std::move(used));
}

/// Thresholds spread over the database's utility range.
inline std::vector<std::pair<Utility, std::string>> threshold_grid(const QuantitativeSequenceDatabase& db) {
  const Utility total = std::max<Utility>(db.total_utility(), 1);
  return {{std::max<Utility>(total / 50, 1), "0"}, {std::max<Utility>(total / 12, 1), "0.4"},
          {std::max<Utility>(total / 4, 1), "0.75"}};
}

}  // namespace husr::testing
