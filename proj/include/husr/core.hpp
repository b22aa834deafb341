#pragma once

// Domain types for quantitative sequence databases and sequential rules,
// together with the reference utility / occurrence / confidence arithmetic.

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace husr {

using Quantity = std::uint32_t;
using Utility = std::uint64_t;
using Sid = std::uint32_t;

/// An item identifier. Items are totally ordered by id.
struct Item {
  std::uint32_t id = 0;

  friend constexpr auto operator<=>(Item, Item) = default;
};

}  // namespace husr

template <>
struct std::hash<husr::Item> {
  std::size_t operator()(husr::Item item) const noexcept { return std::hash<std::uint32_t>{}(item.id); }
};

namespace husr {

struct ItemQuantity {
  Item item;
  Quantity quantity = 0;

  friend bool operator==(const ItemQuantity&, const ItemQuantity&) = default;
};

using Itemset = std::vector<ItemQuantity>;

struct Sequence {
  Sid sid = 0;
  std::vector<Itemset> itemsets;

  friend bool operator==(const Sequence&, const Sequence&) = default;
};

/// Thrown when a database violates one of its structural invariants.
class DatabaseError : public std::runtime_error {
 public:
  enum class Kind {
    DuplicateItemInSequence,
    MissingExternalUtility,
    NonPositiveQuantityOrUtility,
    UnorderedItemset,
    EmptyItemset,
    DuplicateSid,
    InvalidItem,
  };

  DatabaseError(Kind kind, Sid sid, Item item, const std::string& message)
      : std::runtime_error(message), kind_(kind), sid_(sid), item_(item) {}

  Kind kind() const noexcept { return kind_; }
  Sid sid() const noexcept { return sid_; }
  Item item() const noexcept { return item_; }

 private:
  Kind kind_;
  Sid sid_;
  Item item_;
};

/// Unit profit per item. Every stored utility is positive.
class ExternalUtilityTable {
 public:
  ExternalUtilityTable() = default;
  ExternalUtilityTable(std::initializer_list<std::pair<const Item, Utility>> entries);

  void set(Item item, Utility utility);
  bool contains(Item item) const { return entries_.contains(item); }
  std::optional<Utility> find(Item item) const;
  /// Throws DatabaseError(MissingExternalUtility) if absent.
  Utility at(Item item) const;
  std::size_t size() const noexcept { return entries_.size(); }
  const std::map<Item, Utility>& entries() const noexcept { return entries_; }

  friend bool operator==(const ExternalUtilityTable&, const ExternalUtilityTable&) = default;

 private:
  std::map<Item, Utility> entries_;
};

/// Location of an item occurrence: index of the sequence inside the database and
/// index of the itemset inside that sequence.
struct Position {
  std::uint32_t sequence = 0;
  std::uint32_t itemset = 0;

  friend bool operator==(const Position&, const Position&) = default;
};

/// Flattened per-sequence view with precomputed item utilities. Entries are
/// grouped by itemset, ascending item order inside each itemset.
struct IndexedEntry {
  Item item;
  std::uint32_t itemset = 0;
  Utility utility = 0;
};

struct SequenceIndex {
  std::vector<IndexedEntry> entries;
  // itemset k spans entries [itemset_offsets[k], itemset_offsets[k + 1]).
  std::vector<std::uint32_t> itemset_offsets;
  // prefix_utility[k] is the utility of itemsets [0, k).
  std::vector<Utility> prefix_utility;

  std::size_t itemset_count() const noexcept { return itemset_offsets.size() - 1; }
  Utility total_utility() const noexcept { return prefix_utility.back(); }
  /// Utility of itemsets in [first, last).
  Utility range_utility(std::size_t first, std::size_t last) const noexcept {
    return first >= last ? 0 : prefix_utility[last] - prefix_utility[first];
  }
  std::span<const IndexedEntry> itemset(std::size_t k) const noexcept {
    return std::span(entries).subspan(itemset_offsets[k], itemset_offsets[k + 1] - itemset_offsets[k]);
  }
};

/// An immutable quantitative sequence database. Construction validates every
/// invariant and builds the position index and sequence-utility cache.
class QuantitativeSequenceDatabase {
 public:
  QuantitativeSequenceDatabase() = default;
  QuantitativeSequenceDatabase(std::vector<Sequence> sequences, ExternalUtilityTable external_utilities);

  const std::vector<Sequence>& sequences() const noexcept { return sequences_; }
  const ExternalUtilityTable& external_utilities() const noexcept { return eu_; }
  std::size_t size() const noexcept { return sequences_.size(); }
  bool empty() const noexcept { return sequences_.empty(); }

  const Sequence& sequence(std::size_t index) const { return sequences_[index]; }
  const SequenceIndex& index(std::size_t index) const { return indexes_[index]; }
  Utility sequence_utility(std::size_t index) const { return indexes_[index].total_utility(); }
  /// Sum of all sequence utilities.
  Utility total_utility() const noexcept { return total_utility_; }

  /// Distinct items present in at least one sequence, ascending.
  const std::vector<Item>& items() const noexcept { return items_; }
  /// Occurrences of an item, ordered by sequence index. Empty if absent.
  std::span<const Position> positions(Item item) const;
  /// Index of the sequence with the given sid, if any.
  std::optional<std::size_t> find_sid(Sid sid) const;

  friend bool operator==(const QuantitativeSequenceDatabase& a, const QuantitativeSequenceDatabase& b) {
    return a.sequences_ == b.sequences_ && a.eu_ == b.eu_;
  }

 private:
  std::vector<Sequence> sequences_;
  ExternalUtilityTable eu_;
  std::vector<SequenceIndex> indexes_;
  std::vector<Item> items_;
  std::unordered_map<Item, std::vector<Position>> positions_;
  std::unordered_map<Sid, std::size_t> sid_lookup_;
  Utility total_utility_ = 0;
};

/// Minimum-confidence threshold held as an exact rational so that boundary
/// comparisons are made on integers.
class MinConfidence {
 public:
  MinConfidence() = default;
  /// Rounds to nine decimal places. Throws std::invalid_argument outside [0, 1].
  explicit MinConfidence(double value);
  /// Exact parse of a decimal literal such as "0.6" or "1". Throws std::invalid_argument.
  static MinConfidence parse(std::string_view text);

  /// True iff support / antecedent_support >= threshold (0/0 counts as 0).
  bool admits(std::uint64_t support, std::uint64_t antecedent_support) const noexcept;
  double value() const noexcept { return static_cast<double>(numerator_) / static_cast<double>(denominator_); }

 private:
  MinConfidence(std::uint64_t numerator, std::uint64_t denominator);

  std::uint64_t numerator_ = 0;
  std::uint64_t denominator_ = 1;
};

/// A mined (or evaluated) sequential rule X -> Y with its measures.
struct SequentialRule {
  std::vector<Item> antecedent;  // ascending
  std::vector<Item> consequent;  // ascending
  std::vector<Sid> occurrence_sids;  // ascending
  Utility utility = 0;
  std::uint64_t support_count = 0;
  std::uint64_t antecedent_support_count = 0;

  double confidence() const noexcept {
    return antecedent_support_count == 0 ? 0.0
                                         : static_cast<double>(support_count) /
                                               static_cast<double>(antecedent_support_count);
  }
  /// Support as a fraction of the database size.
  double relative_support(std::size_t database_size) const noexcept {
    return database_size == 0 ? 0.0 : static_cast<double>(support_count) / static_cast<double>(database_size);
  }

  friend bool operator==(const SequentialRule&, const SequentialRule&) = default;
};

/// Canonical rule order: antecedent items lexicographically, then consequent items.
bool canonical_less(const SequentialRule& a, const SequentialRule& b);
void sort_canonical(std::vector<SequentialRule>& rules);

/// Boundary itemset indexes of a rule occurrence inside one sequence.
struct RuleOccurrence {
  std::uint32_t last_antecedent_itemset = 0;
  std::uint32_t first_consequent_itemset = 0;

  friend bool operator==(const RuleOccurrence&, const RuleOccurrence&) = default;
};

struct SupportConfidence {
  std::uint64_t support_count = 0;
  std::uint64_t antecedent_support_count = 0;

  double confidence() const noexcept {
    return antecedent_support_count == 0 ? 0.0
                                         : static_cast<double>(support_count) /
                                               static_cast<double>(antecedent_support_count);
  }
};

Utility sequence_utility(const Sequence& sequence, const ExternalUtilityTable& eu);

/// The rule occurs iff every item of X and Y is in the sequence and every X
/// itemset index is strictly below every Y itemset index.
std::optional<RuleOccurrence> rule_occurrence(std::span<const Item> antecedent, std::span<const Item> consequent,
                                              const Sequence& sequence);

/// Utility of the rule's items in the sequence, or 0 when the rule does not occur.
Utility rule_utility_in_sequence(std::span<const Item> antecedent, std::span<const Item> consequent,
                                 const Sequence& sequence, const ExternalUtilityTable& eu);
Utility rule_utility(std::span<const Item> antecedent, std::span<const Item> consequent,
                     const QuantitativeSequenceDatabase& db);
SupportConfidence support_and_confidence(std::span<const Item> antecedent, std::span<const Item> consequent,
                                         const QuantitativeSequenceDatabase& db);

/// Full evaluation of X -> Y against the database.
SequentialRule evaluate_rule(std::span<const Item> antecedent, std::span<const Item> consequent,
                             const QuantitativeSequenceDatabase& db);

std::string to_string(const SequentialRule& rule);

}  // namespace husr
