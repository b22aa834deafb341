#pragma once

// Seeded synthetic quantitative sequence databases for scalability runs.

#include <cstdint>

#include "husr/core.hpp"

namespace husr {

struct GeneratorParams {
  std::uint64_t num_sequences = 1000;
  std::uint32_t alphabet_size = 1000;
  double mean_itemsets_per_sequence = 10.0;
  double mean_items_per_itemset = 2.0;
  std::uint32_t max_quantity = 5;
  std::uint32_t max_external_utility = 10;
  /// Item popularity follows rank^-skew over a shuffled ranking; 0 is uniform.
  double skew = 0.5;
  std::uint64_t seed = 1;

  /// Sizes of the public Syn10k benchmark: 10000 sequences over 7312 items,
  /// 27.11 itemsets per sequence and 4.35 items per itemset on average.
  static GeneratorParams syn10k_profile(std::uint64_t num_sequences = 10000, std::uint64_t seed = 1);
};

/// Throws std::invalid_argument on non-positive sizes or means, or when the
/// mean itemset size exceeds the alphabet.
void validate(const GeneratorParams& params);

/// Deterministic for fixed params. Itemset counts and sizes are 1 + Poisson
/// around the requested means; items never repeat inside a sequence.
QuantitativeSequenceDatabase generate(const GeneratorParams& params);

struct DatabaseProfile {
  std::uint64_t sequences = 0;
  std::uint64_t distinct_items = 0;
  double mean_itemsets_per_sequence = 0.0;
  double mean_items_per_itemset = 0.0;
};

DatabaseProfile profile(const QuantitativeSequenceDatabase& db);

}  // namespace husr
