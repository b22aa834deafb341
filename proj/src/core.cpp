#include "husr/core.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <unordered_set>

namespace husr {

ExternalUtilityTable::ExternalUtilityTable(std::initializer_list<std::pair<const Item, Utility>> entries) {
  for (const auto& [item, utility] : entries) set(item, utility);
}

void ExternalUtilityTable::set(Item item, Utility utility) {
  if (utility == 0) {
    throw DatabaseError(DatabaseError::Kind::NonPositiveQuantityOrUtility, 0, item,
                        "external utility of item " + std::to_string(item.id) + " must be positive");
  }
  entries_[item] = utility;
}

std::optional<Utility> ExternalUtilityTable::find(Item item) const {
  auto it = entries_.find(item);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

Utility ExternalUtilityTable::at(Item item) const {
  auto it = entries_.find(item);
  if (it == entries_.end()) {
    throw DatabaseError(DatabaseError::Kind::MissingExternalUtility, 0, item,
                        "no external utility for item " + std::to_string(item.id));
  }
  return it->second;
}

QuantitativeSequenceDatabase::QuantitativeSequenceDatabase(std::vector<Sequence> sequences,
                                                           ExternalUtilityTable external_utilities)
    : sequences_(std::move(sequences)), eu_(std::move(external_utilities)) {
  using Kind = DatabaseError::Kind;
  indexes_.reserve(sequences_.size());
  std::unordered_set<Item> seen;
  for (std::size_t s = 0; s < sequences_.size(); ++s) {
    const Sequence& seq = sequences_[s];
    if (!sid_lookup_.emplace(seq.sid, s).second) {
      throw DatabaseError(Kind::DuplicateSid, seq.sid, {}, "duplicate sid " + std::to_string(seq.sid));
    }
    seen.clear();
    SequenceIndex index;
    index.itemset_offsets.push_back(0);
    index.prefix_utility.push_back(0);
    for (std::size_t k = 0; k < seq.itemsets.size(); ++k) {
      const Itemset& itemset = seq.itemsets[k];
      if (itemset.empty()) {
        throw DatabaseError(Kind::EmptyItemset, seq.sid, {},
                            "sequence " + std::to_string(seq.sid) + " has an empty itemset");
      }
      Utility itemset_utility = 0;
      for (std::size_t j = 0; j < itemset.size(); ++j) {
        const auto [item, quantity] = itemset[j];
        if (item.id == 0) {
          throw DatabaseError(Kind::InvalidItem, seq.sid, item, "item ids must be positive");
        }
        if (quantity == 0) {
          throw DatabaseError(Kind::NonPositiveQuantityOrUtility, seq.sid, item,
                              "item " + std::to_string(item.id) + " in sequence " + std::to_string(seq.sid) +
                                  " has zero quantity");
        }
        // An equal neighbour is reported as a duplicate below.
        if (j > 0 && item < itemset[j - 1].item) {
          throw DatabaseError(Kind::UnorderedItemset, seq.sid, item,
                              "itemset items must be strictly ascending in sequence " + std::to_string(seq.sid));
        }
        if (!seen.insert(item).second) {
          throw DatabaseError(Kind::DuplicateItemInSequence, seq.sid, item,
                              "item " + std::to_string(item.id) + " appears more than once in sequence " +
                                  std::to_string(seq.sid));
        }
        const auto unit = eu_.find(item);
        if (!unit) {
          throw DatabaseError(Kind::MissingExternalUtility, seq.sid, item,
                              "no external utility for item " + std::to_string(item.id) + " (sequence " +
                                  std::to_string(seq.sid) + ")");
        }
        const Utility utility = static_cast<Utility>(quantity) * *unit;
        itemset_utility += utility;
        index.entries.push_back({item, static_cast<std::uint32_t>(k), utility});
        positions_[item].push_back({static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(k)});
      }
      index.itemset_offsets.push_back(static_cast<std::uint32_t>(index.entries.size()));
      index.prefix_utility.push_back(index.prefix_utility.back() + itemset_utility);
    }
    total_utility_ += index.total_utility();
    indexes_.push_back(std::move(index));
  }
  items_.reserve(positions_.size());
  for (const auto& [item, _] : positions_) items_.push_back(item);
  std::sort(items_.begin(), items_.end());
}

std::span<const Position> QuantitativeSequenceDatabase::positions(Item item) const {
  auto it = positions_.find(item);
  if (it == positions_.end()) return {};
  return it->second;
}

std::optional<std::size_t> QuantitativeSequenceDatabase::find_sid(Sid sid) const {
  auto it = sid_lookup_.find(sid);
  if (it == sid_lookup_.end()) return std::nullopt;
  return it->second;
}

namespace {

constexpr std::uint64_t kConfidenceScale = 1'000'000'000;

}  // namespace

MinConfidence::MinConfidence(std::uint64_t numerator, std::uint64_t denominator)
    : numerator_(numerator), denominator_(denominator) {}

MinConfidence::MinConfidence(double value) {
  if (!(value >= 0.0 && value <= 1.0)) throw std::invalid_argument("minconf must be in [0,1]");
  numerator_ = static_cast<std::uint64_t>(value * static_cast<double>(kConfidenceScale) + 0.5);
  denominator_ = kConfidenceScale;
}

MinConfidence MinConfidence::parse(std::string_view text) {
  const auto fail = [&] { throw std::invalid_argument("invalid minconf '" + std::string(text) + "'"); };
  if (text.empty()) fail();
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 1;
  bool seen_point = false;
  bool seen_digit = false;
  for (char c : text) {
    if (c == '.') {
      if (seen_point) fail();
      seen_point = true;
      continue;
    }
    if (c < '0' || c > '9') fail();
    seen_digit = true;
    if (!seen_point && numerator > 1) throw std::invalid_argument("minconf must be in [0,1]");
    if (seen_point) {
      if (denominator >= kConfidenceScale) continue;  // ignore digits past 1e-9
      denominator *= 10;
    }
    numerator = numerator * 10 + static_cast<std::uint64_t>(c - '0');
  }
  if (!seen_digit) fail();
  if (numerator > denominator) throw std::invalid_argument("minconf must be in [0,1]");
  return MinConfidence(numerator, denominator);
}

bool MinConfidence::admits(std::uint64_t support, std::uint64_t antecedent_support) const noexcept {
  if (antecedent_support == 0) return numerator_ == 0;
  // support * den >= num * ante; both sides fit in 128 bits.
  const unsigned __int128 lhs = static_cast<unsigned __int128>(support) * denominator_;
  const unsigned __int128 rhs = static_cast<unsigned __int128>(numerator_) * antecedent_support;
  return lhs >= rhs;
}

bool canonical_less(const SequentialRule& a, const SequentialRule& b) {
  if (a.antecedent != b.antecedent) return a.antecedent < b.antecedent;
  return a.consequent < b.consequent;
}

void sort_canonical(std::vector<SequentialRule>& rules) { std::sort(rules.begin(), rules.end(), canonical_less); }

Utility sequence_utility(const Sequence& sequence, const ExternalUtilityTable& eu) {
  Utility total = 0;
  for (const Itemset& itemset : sequence.itemsets) {
    for (const auto& [item, quantity] : itemset) total += static_cast<Utility>(quantity) * eu.at(item);
  }
  return total;
}

namespace {

const ItemQuantity* find_in_sequence(const Sequence& sequence, Item item, std::uint32_t& itemset_index) {
  for (std::size_t k = 0; k < sequence.itemsets.size(); ++k) {
    const Itemset& itemset = sequence.itemsets[k];
    auto it = std::lower_bound(itemset.begin(), itemset.end(), item,
                               [](const ItemQuantity& entry, Item value) { return entry.item < value; });
    if (it != itemset.end() && it->item == item) {
      itemset_index = static_cast<std::uint32_t>(k);
      return &*it;
    }
  }
  return nullptr;
}

}  // namespace

std::optional<RuleOccurrence> rule_occurrence(std::span<const Item> antecedent, std::span<const Item> consequent,
                                              const Sequence& sequence) {
  if (antecedent.empty() || consequent.empty()) return std::nullopt;
  RuleOccurrence occurrence{0, std::numeric_limits<std::uint32_t>::max()};
  std::uint32_t k = 0;
  for (Item item : antecedent) {
    if (find_in_sequence(sequence, item, k) == nullptr) return std::nullopt;
    occurrence.last_antecedent_itemset = std::max(occurrence.last_antecedent_itemset, k);
  }
  for (Item item : consequent) {
    if (find_in_sequence(sequence, item, k) == nullptr) return std::nullopt;
    occurrence.first_consequent_itemset = std::min(occurrence.first_consequent_itemset, k);
  }
  if (occurrence.last_antecedent_itemset >= occurrence.first_consequent_itemset) return std::nullopt;
  return occurrence;
}

Utility rule_utility_in_sequence(std::span<const Item> antecedent, std::span<const Item> consequent,
                                 const Sequence& sequence, const ExternalUtilityTable& eu) {
  if (!rule_occurrence(antecedent, consequent, sequence)) return 0;
  Utility total = 0;
  std::uint32_t k = 0;
  for (auto side : {antecedent, consequent}) {
    for (Item item : side) {
      const ItemQuantity* entry = find_in_sequence(sequence, item, k);
      total += static_cast<Utility>(entry->quantity) * eu.at(item);
    }
  }
  return total;
}

Utility rule_utility(std::span<const Item> antecedent, std::span<const Item> consequent,
                     const QuantitativeSequenceDatabase& db) {
  Utility total = 0;
  for (const Sequence& sequence : db.sequences()) {
    total += rule_utility_in_sequence(antecedent, consequent, sequence, db.external_utilities());
  }
  return total;
}

SupportConfidence support_and_confidence(std::span<const Item> antecedent, std::span<const Item> consequent,
                                         const QuantitativeSequenceDatabase& db) {
  SupportConfidence result;
  std::uint32_t k = 0;
  for (const Sequence& sequence : db.sequences()) {
    const bool has_antecedent = std::all_of(antecedent.begin(), antecedent.end(), [&](Item item) {
      return find_in_sequence(sequence, item, k) != nullptr;
    });
    if (!has_antecedent) continue;
    ++result.antecedent_support_count;
    if (rule_occurrence(antecedent, consequent, sequence)) ++result.support_count;
  }
  return result;
}

SequentialRule evaluate_rule(std::span<const Item> antecedent, std::span<const Item> consequent,
                             const QuantitativeSequenceDatabase& db) {
  SequentialRule rule;
  rule.antecedent.assign(antecedent.begin(), antecedent.end());
  rule.consequent.assign(consequent.begin(), consequent.end());
  std::sort(rule.antecedent.begin(), rule.antecedent.end());
  std::sort(rule.consequent.begin(), rule.consequent.end());
  for (const Sequence& sequence : db.sequences()) {
    if (!rule_occurrence(rule.antecedent, rule.consequent, sequence)) continue;
    rule.occurrence_sids.push_back(sequence.sid);
    rule.utility += rule_utility_in_sequence(rule.antecedent, rule.consequent, sequence, db.external_utilities());
  }
  std::sort(rule.occurrence_sids.begin(), rule.occurrence_sids.end());
  const SupportConfidence sc = support_and_confidence(rule.antecedent, rule.consequent, db);
  rule.support_count = sc.support_count;
  rule.antecedent_support_count = sc.antecedent_support_count;
  return rule;
}

std::string to_string(const SequentialRule& rule) {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < rule.antecedent.size(); ++i) out << (i ? "," : "") << rule.antecedent[i].id;
  out << "} -> {";
  for (std::size_t i = 0; i < rule.consequent.size(); ++i) out << (i ? "," : "") << rule.consequent[i].id;
  out << "} sup=" << rule.support_count << '/' << rule.antecedent_support_count << " util=" << rule.utility;
  return out.str();
}

}  // namespace husr
