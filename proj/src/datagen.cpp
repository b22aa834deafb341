#include "husr/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace husr {

GeneratorParams GeneratorParams::syn10k_profile(std::uint64_t num_sequences, std::uint64_t seed) {
  GeneratorParams p;
  p.num_sequences = num_sequences;
  p.alphabet_size = 7312;
  p.mean_itemsets_per_sequence = 27.11;
  p.mean_items_per_itemset = 4.35;
  p.max_quantity = 5;
  p.max_external_utility = 10;
  p.seed = seed;
  return p;
}

void validate(const GeneratorParams& p) {
  const auto fail = [](const std::string& what) { throw std::invalid_argument(what); };
  if (p.alphabet_size == 0) fail("alphabet size must be positive");
  if (!(p.mean_itemsets_per_sequence >= 1.0)) fail("mean itemsets per sequence must be at least 1");
  if (!(p.mean_items_per_itemset >= 1.0)) fail("mean items per itemset must be at least 1");
  if (p.mean_items_per_itemset > p.alphabet_size) fail("mean items per itemset exceeds the alphabet size");
  if (p.max_quantity == 0) fail("max quantity must be positive");
  if (p.max_external_utility == 0) fail("max external utility must be positive");
  if (!(p.skew >= 0.0) || !std::isfinite(p.skew)) fail("skew must be a non-negative number");
}

namespace {

/// 1 + Poisson(mean - 1): at least one, with the requested mean.
class ShiftedPoisson {
 public:
  explicit ShiftedPoisson(double mean) : extra_(mean - 1.0) {}

  std::uint32_t operator()(std::mt19937_64& rng) {
    if (extra_ <= 0.0) return 1;
    return 1 + static_cast<std::uint32_t>(poisson_(rng, std::poisson_distribution<std::uint32_t>::param_type(extra_)));
  }

 private:
  double extra_;
  std::poisson_distribution<std::uint32_t> poisson_;
};

}  // namespace

QuantitativeSequenceDatabase generate(const GeneratorParams& p) {
  validate(p);
  std::mt19937_64 rng(p.seed);
  const std::uint32_t alphabet = p.alphabet_size;

  // Item ids 1..alphabet; popularity rank is a random permutation of the ids.
  std::vector<std::uint32_t> ranked(alphabet);
  std::iota(ranked.begin(), ranked.end(), 1u);
  std::shuffle(ranked.begin(), ranked.end(), rng);
  std::vector<double> weights(alphabet);
  for (std::uint32_t r = 0; r < alphabet; ++r) weights[r] = std::pow(static_cast<double>(r + 1), -p.skew);
  std::discrete_distribution<std::uint32_t> pick_rank(weights.begin(), weights.end());

  ExternalUtilityTable eu;
  std::uniform_int_distribution<std::uint32_t> pick_unit(1, p.max_external_utility);
  for (std::uint32_t id = 1; id <= alphabet; ++id) eu.set(Item{id}, pick_unit(rng));

  std::uniform_int_distribution<std::uint32_t> pick_quantity(1, p.max_quantity);
  std::uniform_int_distribution<std::uint32_t> pick_start(0, alphabet - 1);
  ShiftedPoisson itemset_count(p.mean_itemsets_per_sequence);
  ShiftedPoisson itemset_size(p.mean_items_per_itemset);

  std::vector<std::uint64_t> used_in(alphabet + 1, 0);  // sequence stamp per item id
  std::vector<Sequence> sequences;
  sequences.reserve(p.num_sequences);
  for (std::uint64_t n = 0; n < p.num_sequences; ++n) {
    const std::uint64_t stamp = n + 1;
    Sequence sequence;
    sequence.sid = static_cast<Sid>(n + 1);
    std::uint32_t remaining = alphabet;
    const std::uint32_t count = itemset_count(rng);
    for (std::uint32_t k = 0; k < count && remaining > 0; ++k) {
      const std::uint32_t size = std::min(itemset_size(rng), remaining);
      Itemset itemset;
      itemset.reserve(size);
      for (std::uint32_t j = 0; j < size; ++j) {
        std::uint32_t id = 0;
        for (int attempt = 0; attempt < 64; ++attempt) {
          const std::uint32_t candidate = ranked[pick_rank(rng)];
          if (used_in[candidate] != stamp) {
            id = candidate;
            break;
          }
        }
        if (id == 0) {
          // Popular items exhausted: take the next unused id from a random start.
          std::uint32_t probe = pick_start(rng);
          while (used_in[probe + 1] == stamp) probe = (probe + 1) % alphabet;
          id = probe + 1;
        }
        used_in[id] = stamp;
        --remaining;
        itemset.push_back({Item{id}, pick_quantity(rng)});
      }
      std::sort(itemset.begin(), itemset.end(),
                [](const ItemQuantity& a, const ItemQuantity& b) { return a.item < b.item; });
      sequence.itemsets.push_back(std::move(itemset));
    }
    sequences.push_back(std::move(sequence));
  }

  // Keep only utilities of items that occur, so the written utility file matches the data.
  ExternalUtilityTable used_eu;
  for (const Sequence& sequence : sequences) {
    for (const Itemset& itemset : sequence.itemsets) {
      for (const auto& [item, _] : itemset) used_eu.set(item, eu.at(item));
    }
  }
  return QuantitativeSequenceDatabase(std::move(sequences), std::move(used_eu));
}

DatabaseProfile profile(const QuantitativeSequenceDatabase& db) {
  DatabaseProfile out;
  out.sequences = db.size();
  out.distinct_items = db.items().size();
  std::uint64_t itemsets = 0;
  std::uint64_t items = 0;
  for (const Sequence& sequence : db.sequences()) {
    itemsets += sequence.itemsets.size();
    for (const Itemset& itemset : sequence.itemsets) items += itemset.size();
  }
  if (out.sequences > 0) out.mean_itemsets_per_sequence = static_cast<double>(itemsets) / out.sequences;
  if (itemsets > 0) out.mean_items_per_itemset = static_cast<double>(items) / itemsets;
  return out;
}

}  // namespace husr
