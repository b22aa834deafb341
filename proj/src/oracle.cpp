#include "husr/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>

namespace husr {

AlphabetTooLarge::AlphabetTooLarge(std::size_t items, std::size_t limit)
    : std::runtime_error("oracle supports at most " + std::to_string(limit) + " distinct items, database has " +
                         std::to_string(items)),
      items_(items),
      limit_(limit) {}

namespace {

struct Slot {
  std::size_t itemset;
  Utility utility;
};

using SequenceMap = std::map<Item, Slot>;

class Enumerator {
 public:
  Enumerator(const QuantitativeSequenceDatabase& db, const OracleOptions& options) : options_(options) {
    for (const Sequence& sequence : db.sequences()) {
      SequenceMap map;
      for (std::size_t k = 0; k < sequence.itemsets.size(); ++k) {
        for (const auto& [item, quantity] : sequence.itemsets[k]) {
          map[item] = {k, static_cast<Utility>(quantity) * db.external_utilities().at(item)};
          alphabet_.push_back(item);
        }
      }
      sids_.push_back(sequence.sid);
      sequences_.push_back(std::move(map));
    }
    std::sort(alphabet_.begin(), alphabet_.end());
    alphabet_.erase(std::unique(alphabet_.begin(), alphabet_.end()), alphabet_.end());
    if (alphabet_.size() > options_.alphabet_limit) throw AlphabetTooLarge(alphabet_.size(), options_.alphabet_limit);
  }

  std::vector<SequentialRule> run() {
    std::vector<std::size_t> all(sequences_.size());
    for (std::size_t s = 0; s < all.size(); ++s) all[s] = s;
    grow(0, all);
    sort_canonical(rules_);
    return std::move(rules_);
  }

 private:
  // A partial rule "occurs" in s when all its items are present and, with both
  // sides non-empty, every antecedent itemset precedes every consequent itemset.
  // Adding items can only shrink that set of sequences.
  bool occurs(const SequenceMap& map) const {
    std::size_t last_left = 0;
    std::size_t first_right = SIZE_MAX;
    for (Item item : antecedent_) {
      auto it = map.find(item);
      if (it == map.end()) return false;
      last_left = std::max(last_left, it->second.itemset);
    }
    for (Item item : consequent_) {
      auto it = map.find(item);
      if (it == map.end()) return false;
      first_right = std::min(first_right, it->second.itemset);
    }
    return antecedent_.empty() || consequent_.empty() || last_left < first_right;
  }

  void grow(std::size_t next, const std::vector<std::size_t>& candidates) {
    for (std::size_t i = next; i < alphabet_.size(); ++i) {
      const Item item = alphabet_[i];
      for (std::vector<Item>* side : {&antecedent_, &consequent_}) {
        if (options_.max_items_per_side != 0 && side->size() >= options_.max_items_per_side) continue;
        side->push_back(item);
        std::vector<std::size_t> occurring;
        for (std::size_t s : candidates) {
          if (occurs(sequences_[s])) occurring.push_back(s);
        }
        if (!occurring.empty()) {
          if (!antecedent_.empty() && !consequent_.empty()) record(occurring);
          grow(i + 1, occurring);
        }
        side->pop_back();
      }
    }
  }

  void record(const std::vector<std::size_t>& occurring) {
    SequentialRule rule;
    rule.antecedent = antecedent_;
    rule.consequent = consequent_;
    for (std::size_t s : occurring) {
      rule.occurrence_sids.push_back(sids_[s]);
      for (Item item : antecedent_) rule.utility += sequences_[s].at(item).utility;
      for (Item item : consequent_) rule.utility += sequences_[s].at(item).utility;
    }
    std::sort(rule.occurrence_sids.begin(), rule.occurrence_sids.end());
    rule.support_count = occurring.size();
    for (const SequenceMap& map : sequences_) {
      if (std::all_of(antecedent_.begin(), antecedent_.end(), [&](Item item) { return map.contains(item); })) {
        ++rule.antecedent_support_count;
      }
    }
    rules_.push_back(std::move(rule));
  }

  OracleOptions options_;
  std::vector<SequenceMap> sequences_;
  std::vector<Sid> sids_;
  std::vector<Item> alphabet_;
  std::vector<Item> antecedent_;
  std::vector<Item> consequent_;
  std::vector<SequentialRule> rules_;
};

}  // namespace

std::vector<SequentialRule> enumerate_occurring_rules(const QuantitativeSequenceDatabase& db,
                                                      const OracleOptions& options) {
  return Enumerator(db, options).run();
}

std::vector<SequentialRule> filter_rules(const std::vector<SequentialRule>& rules, Utility minutil,
                                         MinConfidence minconf) {
  std::vector<SequentialRule> kept;
  for (const SequentialRule& rule : rules) {
    if (rule.utility >= minutil && minconf.admits(rule.support_count, rule.antecedent_support_count)) {
      kept.push_back(rule);
    }
  }
  return kept;
}

std::vector<SequentialRule> enumerate_all_rules(const QuantitativeSequenceDatabase& db, Utility minutil,
                                                MinConfidence minconf, const OracleOptions& options) {
  return filter_rules(enumerate_occurring_rules(db, options), minutil, minconf);
}

}  // namespace husr
