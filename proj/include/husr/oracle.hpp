#pragma once

// Brute-force rule enumeration for small databases. Shares no tables or
// bounds with the miner; every measure is recomputed by scanning sequences.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "husr/core.hpp"

namespace husr {

class AlphabetTooLarge : public std::runtime_error {
 public:
  AlphabetTooLarge(std::size_t items, std::size_t limit);

  std::size_t items() const noexcept { return items_; }
  std::size_t limit() const noexcept { return limit_; }

 private:
  std::size_t items_;
  std::size_t limit_;
};

struct OracleOptions {
  /// 0 means unbounded.
  std::size_t max_items_per_side = 0;
  std::size_t alphabet_limit = 14;
};

/// Every rule occurring in at least one sequence, canonical order, no thresholds.
std::vector<SequentialRule> enumerate_occurring_rules(const QuantitativeSequenceDatabase& db,
                                                      const OracleOptions& options = {});

/// Rules with utility >= minutil and confidence >= minconf, canonical order.
std::vector<SequentialRule> enumerate_all_rules(const QuantitativeSequenceDatabase& db, Utility minutil,
                                                MinConfidence minconf, const OracleOptions& options = {});

/// Threshold filter over a precomputed enumeration.
std::vector<SequentialRule> filter_rules(const std::vector<SequentialRule>& rules, Utility minutil,
                                         MinConfidence minconf);

}  // namespace husr
