#include "husr/miner.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace husr {

StrategyConfig StrategyConfig::baseline() {
  StrategyConfig c;
  c.uip = true;
  c.usrp = true;
  return c;
}

StrategyConfig StrategyConfig::v1() {
  StrategyConfig c = baseline();
  c.reucp = true;
  return c;
}

StrategyConfig StrategyConfig::v2() {
  StrategyConfig c = v1();
  c.leeup = c.reeup = c.lersup = c.rersup = true;
  return c;
}

StrategyConfig StrategyConfig::v3() {
  StrategyConfig c = v2();
  c.reucp = false;
  c.reurp = true;
  return c;
}

StrategyConfig StrategyConfig::v4() {
  StrategyConfig c = v2();
  c.reurp = true;
  return c;
}

std::vector<StrategyConfig> StrategyConfig::presets() { return {baseline(), v1(), v2(), v3(), v4()}; }

namespace {

struct FlagName {
  const char* name;
  bool StrategyConfig::*flag;
};

constexpr FlagName kFlags[] = {
    {"uip", &StrategyConfig::uip},       {"usrp", &StrategyConfig::usrp},     {"reucp", &StrategyConfig::reucp},
    {"leeup", &StrategyConfig::leeup},   {"reeup", &StrategyConfig::reeup},   {"lersup", &StrategyConfig::lersup},
    {"rersup", &StrategyConfig::rersup}, {"reurp", &StrategyConfig::reurp},
};

}  // namespace

StrategyConfig StrategyConfig::parse(std::string_view text) {
  if (text == "baseline") return baseline();
  if (text == "v1") return v1();
  if (text == "v2") return v2();
  if (text == "v3") return v3();
  if (text == "v4") return v4();
  constexpr std::string_view kCustom = "custom:";
  if (!text.starts_with(kCustom)) throw std::invalid_argument("unknown strategy '" + std::string(text) + "'");
  StrategyConfig config;
  std::string_view rest = text.substr(kCustom.size());
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view name = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    if (name.empty()) continue;
    const auto it = std::find_if(std::begin(kFlags), std::end(kFlags),
                                 [&](const FlagName& f) { return name == f.name; });
    if (it == std::end(kFlags)) throw std::invalid_argument("unknown strategy flag '" + std::string(name) + "'");
    config.*(it->flag) = true;
  }
  return config;
}

std::string StrategyConfig::name() const {
  if (*this == baseline()) return "baseline";
  if (*this == v1()) return "v1";
  if (*this == v2()) return "v2";
  if (*this == v3()) return "v3";
  if (*this == v4()) return "v4";
  std::string out = "custom:";
  bool first = true;
  for (const FlagName& f : kFlags) {
    if (!(this->*(f.flag))) continue;
    if (!first) out += ',';
    out += f.name;
    first = false;
  }
  return out;
}

ReElement make_re_element(const QuantitativeSequenceDatabase& db, std::uint32_t sequence, Utility antecedent_utility,
                          Utility consequent_utility, RuleOccurrence occurrence) {
  const SequenceIndex& index = db.index(sequence);
  const std::uint32_t last_left = occurrence.last_antecedent_itemset;
  const std::uint32_t first_right = occurrence.first_consequent_itemset;
  ReElement e;
  e.sequence = sequence;
  e.utility = antecedent_utility + consequent_utility;
  e.u_left = index.prefix_utility[last_left + 1] - antecedent_utility;
  e.u_left_right = index.range_utility(last_left + 1, first_right);
  e.u_right = index.total_utility() - index.prefix_utility[first_right] - consequent_utility;
  e.leeu = leeu_in_sequence(e.utility, e.u_left, e.u_left_right);
  e.reeu = reeu_in_sequence(e.utility, e.u_left, e.u_left_right, e.u_right);
  e.last_antecedent_itemset = last_left;
  e.first_consequent_itemset = first_right;
  return e;
}

ReElement extend_right(const ReElement& element, const SequenceIndex& index, const IndexedEntry& entry) {
  ReElement e = element;
  e.first_consequent_itemset = std::min(element.first_consequent_itemset, entry.itemset);
  e.utility = element.utility + entry.utility;
  // Non-rule utility right of the antecedent boundary loses the new item and is
  // re-split at the (possibly earlier) consequent boundary.
  e.u_left_right = index.range_utility(element.last_antecedent_itemset + 1, e.first_consequent_itemset);
  e.u_right = element.u_left_right + element.u_right - entry.utility - e.u_left_right;
  e.leeu = leeu_in_sequence(e.utility, e.u_left, e.u_left_right);
  e.reeu = reeu_in_sequence(e.utility, e.u_left, e.u_left_right, e.u_right);
  return e;
}

LeElement extend_left(const LeElement& element, const IndexedEntry& entry) {
  LeElement e = element;
  e.utility = element.utility + entry.utility;
  e.u_left_merged = element.u_left_merged - entry.utility;
  e.leeu = e.u_left_merged > 0 ? e.utility + e.u_left_merged : 0;
  return e;
}

LeElement to_le_element(const ReElement& element) {
  return {element.sequence, element.utility, element.u_left + element.u_left_right, element.leeu,
          element.first_consequent_itemset};
}

LeTable to_le_table(const ReTable& table) {
  LeTable out;
  out.elements.reserve(table.elements.size());
  for (const ReElement& e : table.elements) out.elements.push_back(to_le_element(e));
  out.utility = table.utility;
  out.leeu = table.leeu;
  return out;
}

ExtensionClasses classify_extension_items(const Sequence& sequence, const ExternalUtilityTable& eu,
                                          std::span<const Item> antecedent, std::span<const Item> consequent,
                                          RuleOccurrence occurrence) {
  const auto in_rule = [&](Item item) {
    return std::find(antecedent.begin(), antecedent.end(), item) != antecedent.end() ||
           std::find(consequent.begin(), consequent.end(), item) != consequent.end();
  };
  ExtensionClasses classes;
  for (std::uint32_t k = 0; k < sequence.itemsets.size(); ++k) {
    for (const auto& [item, quantity] : sequence.itemsets[k]) {
      if (in_rule(item)) continue;
      const ExtensionItem ext{item, static_cast<Utility>(quantity) * eu.at(item)};
      if (k <= occurrence.last_antecedent_itemset) {
        classes.left_only.push_back(ext);
      } else if (k >= occurrence.first_consequent_itemset) {
        classes.right_only.push_back(ext);
      } else {
        classes.both.push_back(ext);
      }
    }
  }
  return classes;
}

namespace {

Utility side_utility(const SequenceIndex& index, std::span<const Item> items) {
  Utility total = 0;
  for (const IndexedEntry& entry : index.entries) {
    if (std::find(items.begin(), items.end(), entry.item) != items.end()) total += entry.utility;
  }
  return total;
}

}  // namespace

ReTable build_re_table(const QuantitativeSequenceDatabase& db, std::span<const Item> antecedent,
                       std::span<const Item> consequent) {
  ReTable table;
  for (std::uint32_t s = 0; s < db.size(); ++s) {
    const auto occurrence = rule_occurrence(antecedent, consequent, db.sequence(s));
    if (!occurrence) continue;
    const SequenceIndex& index = db.index(s);
    const ReElement e =
        make_re_element(db, s, side_utility(index, antecedent), side_utility(index, consequent), *occurrence);
    table.utility += e.utility;
    table.leeu += e.leeu;
    table.reeu += e.reeu;
    table.elements.push_back(e);
  }
  return table;
}

Utility leeu(const QuantitativeSequenceDatabase& db, std::span<const Item> antecedent,
             std::span<const Item> consequent) {
  return build_re_table(db, antecedent, consequent).leeu;
}

Utility reeu(const QuantitativeSequenceDatabase& db, std::span<const Item> antecedent,
             std::span<const Item> consequent) {
  return build_re_table(db, antecedent, consequent).reeu;
}

namespace {

template <typename Select>
Utility reduced_sequence_utility(const QuantitativeSequenceDatabase& db, std::span<const Item> parent_antecedent,
                                 std::span<const Item> parent_consequent, std::vector<Item> candidate_antecedent,
                                 std::vector<Item> candidate_consequent, Select select) {
  Utility total = 0;
  for (const ReElement& e : build_re_table(db, parent_antecedent, parent_consequent).elements) {
    if (rule_occurrence(candidate_antecedent, candidate_consequent, db.sequence(e.sequence))) total += select(e);
  }
  return total;
}

std::vector<Item> with_item(std::span<const Item> items, Item added) {
  std::vector<Item> out(items.begin(), items.end());
  out.push_back(added);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Utility lersu(const QuantitativeSequenceDatabase& db, std::span<const Item> parent_antecedent,
              std::span<const Item> parent_consequent, Item added) {
  return reduced_sequence_utility(db, parent_antecedent, parent_consequent, with_item(parent_antecedent, added),
                                  {parent_consequent.begin(), parent_consequent.end()},
                                  [](const ReElement& e) { return e.leeu; });
}

Utility rersu(const QuantitativeSequenceDatabase& db, std::span<const Item> parent_antecedent,
              std::span<const Item> parent_consequent, Item added) {
  return reduced_sequence_utility(db, parent_antecedent, parent_consequent,
                                  {parent_antecedent.begin(), parent_antecedent.end()},
                                  with_item(parent_consequent, added), [](const ReElement& e) { return e.reeu; });
}

namespace {

/// Calls fn(a, b, elements) for every occurring seed {a} -> {b}, ascending by
/// (a, b). Elements are ordered by sequence index.
template <typename Fn>
void for_each_seed(const QuantitativeSequenceDatabase& db, Fn&& fn) {
  std::map<Item, std::vector<ReElement>> buckets;
  for (Item a : db.items()) {
    for (auto& [_, elements] : buckets) elements.clear();
    for (const Position& position : db.positions(a)) {
      const SequenceIndex& index = db.index(position.sequence);
      Utility a_utility = 0;
      for (const IndexedEntry& entry : index.itemset(position.itemset)) {
        if (entry.item == a) a_utility = entry.utility;
      }
      for (std::size_t k = position.itemset + 1; k < index.itemset_count(); ++k) {
        for (const IndexedEntry& entry : index.itemset(k)) {
          buckets[entry.item].push_back(make_re_element(db, position.sequence, a_utility, entry.utility,
                                                        {position.itemset, static_cast<std::uint32_t>(k)}));
        }
      }
    }
    for (auto& [b, elements] : buckets) {
      if (!elements.empty()) fn(a, b, elements);
    }
  }
}

Utility seu_of(const QuantitativeSequenceDatabase& db, const std::vector<ReElement>& elements) {
  Utility seu = 0;
  for (const ReElement& e : elements) seu += db.sequence_utility(e.sequence);
  return seu;
}

}  // namespace

std::vector<SeedRule> generate_seed_rules(const QuantitativeSequenceDatabase& db, Utility minutil, bool usrp) {
  std::vector<SeedRule> seeds;
  for_each_seed(db, [&](Item a, Item b, const std::vector<ReElement>& elements) {
    SeedRule seed{a, b, {}, seu_of(db, elements), false};
    for (const ReElement& e : elements) seed.sids.push_back(db.sequence(e.sequence).sid);
    std::sort(seed.sids.begin(), seed.sids.end());
    seed.eliminated = usrp && seed.seu < minutil;
    seeds.push_back(std::move(seed));
  });
  return seeds;
}

bool MiningStats::same_counters(const MiningStats& o) const noexcept {
  return sequences == o.sequences && items == o.items && mined_sequences == o.mined_sequences &&
         mined_items == o.mined_items && rules_found == o.rules_found && seeds == o.seeds &&
         expansions == o.expansions && expansion_calls == o.expansion_calls && pruned_by_usrp == o.pruned_by_usrp &&
         pruned_by_reucp == o.pruned_by_reucp && pruned_by_leeup == o.pruned_by_leeup &&
         pruned_by_reeup == o.pruned_by_reeup && pruned_by_lersup == o.pruned_by_lersup &&
         pruned_by_rersup == o.pruned_by_rersup && items_removed_uip == o.items_removed_uip &&
         items_removed_reurp == o.items_removed_reurp && reucm_entries == o.reucm_entries &&
         peak_table_elements == o.peak_table_elements;
}

RuleGrowthSearch::RuleGrowthSearch(const QuantitativeSequenceDatabase& db, Utility minutil, MinConfidence minconf,
                                   StrategyConfig config, const ReucMap* reucm, MiningObserver* observer)
    : db_(db), minutil_(minutil), minconf_(minconf), config_(config), reucm_(reucm), observer_(observer) {
  if (config_.reucp && reucm_ == nullptr) throw std::invalid_argument("REUCP enabled without a co-occurrence map");
}

std::vector<SequentialRule> RuleGrowthSearch::take_rules() { return std::move(rules_); }

void RuleGrowthSearch::track_elements(std::int64_t delta) {
  live_elements_ = static_cast<std::uint64_t>(static_cast<std::int64_t>(live_elements_) + delta);
  stats_.peak_table_elements = std::max(stats_.peak_table_elements, live_elements_);
}

void RuleGrowthSearch::emit(std::span<const Item> antecedent, std::span<const Item> consequent, Utility utility,
                            std::span<const std::uint32_t> sequences, std::uint64_t antecedent_support) {
  SequentialRule rule;
  rule.antecedent.assign(antecedent.begin(), antecedent.end());
  rule.consequent.assign(consequent.begin(), consequent.end());
  rule.occurrence_sids.reserve(sequences.size());
  for (std::uint32_t s : sequences) rule.occurrence_sids.push_back(db_.sequence(s).sid);
  std::sort(rule.occurrence_sids.begin(), rule.occurrence_sids.end());
  rule.utility = utility;
  rule.support_count = sequences.size();
  rule.antecedent_support_count = antecedent_support;
  rules_.push_back(std::move(rule));
  ++stats_.rules_found;
}

RuleGrowthSearch::RightNode RuleGrowthSearch::make_node(std::span<const Item> antecedent,
                                                        std::span<const Item> consequent) const {
  RightNode node;
  node.antecedent.assign(antecedent.begin(), antecedent.end());
  node.consequent.assign(consequent.begin(), consequent.end());
  std::sort(node.antecedent.begin(), node.antecedent.end());
  std::sort(node.consequent.begin(), node.consequent.end());
  node.table = build_re_table(db_, node.antecedent, node.consequent);
  auto sequences = std::make_shared<std::vector<std::uint32_t>>();
  for (std::uint32_t s = 0; s < db_.size(); ++s) {
    const auto& itemsets = db_.sequence(s).itemsets;
    const bool contains_all = std::all_of(node.antecedent.begin(), node.antecedent.end(), [&](Item item) {
      return std::any_of(itemsets.begin(), itemsets.end(), [&](const Itemset& itemset) {
        return std::any_of(itemset.begin(), itemset.end(), [&](const ItemQuantity& e) { return e.item == item; });
      });
    });
    if (contains_all) sequences->push_back(s);
  }
  node.antecedent_sequences = std::move(sequences);
  return node;
}

RuleGrowthSearch::LeftNode RuleGrowthSearch::to_left(const RightNode& node) {
  return {node.antecedent, node.consequent, node.antecedent_sequences, to_le_table(node.table)};
}

void RuleGrowthSearch::run() {
  for_each_seed(db_, [&](Item a, Item b, std::vector<ReElement>& elements) {
    if (config_.usrp && seu_of(db_, elements) < minutil_) {
      ++stats_.pruned_by_usrp;
      return;
    }
    ++stats_.seeds;
    RightNode node;
    node.antecedent = {a};
    node.consequent = {b};
    auto sequences = std::make_shared<std::vector<std::uint32_t>>();
    for (const Position& p : db_.positions(a)) sequences->push_back(p.sequence);
    node.antecedent_sequences = std::move(sequences);
    node.table.elements = std::move(elements);
    for (const ReElement& e : node.table.elements) {
      node.table.utility += e.utility;
      node.table.leeu += e.leeu;
      node.table.reeu += e.reeu;
    }
    track_elements(static_cast<std::int64_t>(node.table.elements.size()));
    visit_right(node, Growth::Seed);
    track_elements(-static_cast<std::int64_t>(node.table.elements.size()));
    elements = std::move(node.table.elements);
  });
}

void RuleGrowthSearch::visit_right(RightNode& node, Growth growth) {
  const ReTable& table = node.table;
  const std::uint64_t antecedent_support = node.antecedent_sequences->size();
  if (observer_ != nullptr) {
    observer_->on_node({node.antecedent, node.consequent, growth, table.utility, table.leeu, table.reeu,
                        table.elements.size(), antecedent_support});
  }
  if (table.utility >= minutil_ && minconf_.admits(table.elements.size(), antecedent_support)) {
    std::vector<std::uint32_t> sequences;
    sequences.reserve(table.elements.size());
    for (const ReElement& e : table.elements) sequences.push_back(e.sequence);
    emit(node.antecedent, node.consequent, table.utility, sequences, antecedent_support);
  }
  if (config_.reeup && table.reeu < minutil_) {
    ++stats_.pruned_by_reeup;
  } else {
    right_expansion(node);
  }
  if (config_.leeup && table.leeu < minutil_) {
    ++stats_.pruned_by_leeup;
  } else {
    left_expansion(to_left(node));
  }
}

void RuleGrowthSearch::visit_left(const LeftNode& node) {
  const LeTable& table = node.table;
  const std::uint64_t antecedent_support = node.antecedent_sequences->size();
  if (observer_ != nullptr) {
    observer_->on_node({node.antecedent, node.consequent, Growth::Left, table.utility, table.leeu, 0,
                        table.elements.size(), antecedent_support});
  }
  if (table.utility >= minutil_ && minconf_.admits(table.elements.size(), antecedent_support)) {
    std::vector<std::uint32_t> sequences;
    sequences.reserve(table.elements.size());
    for (const LeElement& e : table.elements) sequences.push_back(e.sequence);
    emit(node.antecedent, node.consequent, table.utility, sequences, antecedent_support);
  }
  if (config_.leeup && table.leeu < minutil_) {
    ++stats_.pruned_by_leeup;
  } else {
    left_expansion(node);
  }
}

namespace {

/// Candidate bookkeeping for one expansion call: the running reduced-sequence
/// utility, the elements collected so far, and whether the candidate is out.
template <typename Element>
struct Candidate {
  Utility accumulated = 0;
  bool excluded = false;
  std::vector<Element> elements;
};

}  // namespace

void RuleGrowthSearch::right_expansion(const RightNode& node) {
  ++stats_.expansion_calls;
  const ReTable& table = node.table;
  const Item largest_antecedent = node.antecedent.back();
  const Item largest_consequent = node.consequent.back();

  std::unordered_map<Item, Candidate<ReElement>> candidates;
  std::vector<Item> candidate_consequent;
  const auto check_bound = [&](Item item, Utility bound) {
    const bool pruned = bound < minutil_;
    if (observer_ != nullptr) {
      candidate_consequent = node.consequent;
      candidate_consequent.push_back(item);
      observer_->on_bound_check({RunningBound::Rersu, node.antecedent, candidate_consequent, bound, pruned});
    }
    return pruned;
  };

  Utility remaining = table.reeu;
  for (const ReElement& e : table.elements) {
    remaining -= e.reeu;
    if (e.reeu == 0) continue;  // nothing left to extend with in this sequence
    const SequenceIndex& index = db_.index(e.sequence);
    for (std::size_t k = e.last_antecedent_itemset + 1; k < index.itemset_count(); ++k) {
      for (const IndexedEntry& entry : index.itemset(k)) {
        if (entry.item <= largest_consequent) continue;
        auto [it, inserted] = candidates.try_emplace(entry.item);
        Candidate<ReElement>& candidate = it->second;
        if (inserted && config_.reucp && reucm_->get(largest_antecedent, entry.item) < minutil_) {
          ++stats_.pruned_by_reucp;
          candidate.excluded = true;
        }
        if (candidate.excluded) continue;
        candidate.accumulated += e.reeu;
        if (config_.rersup && check_bound(entry.item, candidate.accumulated + remaining)) {
          ++stats_.pruned_by_rersup;
          candidate.excluded = true;
          std::vector<ReElement>().swap(candidate.elements);
          continue;
        }
        candidate.elements.push_back(extend_right(e, index, entry));
      }
    }
  }

  std::vector<Item> order;
  order.reserve(candidates.size());
  std::int64_t collected = 0;
  for (auto& [item, candidate] : candidates) {
    if (candidate.excluded) continue;
    if (config_.rersup && check_bound(item, candidate.accumulated)) {
      ++stats_.pruned_by_rersup;
      candidate.excluded = true;
      continue;
    }
    order.push_back(item);
    collected += static_cast<std::int64_t>(candidate.elements.size());
  }
  std::sort(order.begin(), order.end());
  track_elements(collected);

  for (Item item : order) {
    Candidate<ReElement>& candidate = candidates[item];
    ++stats_.expansions;
    RightNode child;
    child.antecedent = node.antecedent;
    child.consequent = node.consequent;
    child.consequent.push_back(item);
    child.antecedent_sequences = node.antecedent_sequences;
    child.table.elements = std::move(candidate.elements);
    for (const ReElement& e : child.table.elements) {
      child.table.utility += e.utility;
      child.table.leeu += e.leeu;
      child.table.reeu += e.reeu;
    }
    visit_right(child, Growth::Right);
    track_elements(-static_cast<std::int64_t>(child.table.elements.size()));
  }
}

void RuleGrowthSearch::left_expansion(const LeftNode& node) {
  ++stats_.expansion_calls;
  const LeTable& table = node.table;
  const Item largest_antecedent = node.antecedent.back();
  const Item largest_consequent = node.consequent.back();

  std::unordered_map<Item, Candidate<LeElement>> candidates;
  std::vector<Item> candidate_antecedent;
  const auto check_bound = [&](Item item, Utility bound) {
    const bool pruned = bound < minutil_;
    if (observer_ != nullptr) {
      candidate_antecedent = node.antecedent;
      candidate_antecedent.push_back(item);
      observer_->on_bound_check({RunningBound::Lersu, candidate_antecedent, node.consequent, bound, pruned});
    }
    return pruned;
  };

  Utility remaining = table.leeu;
  for (const LeElement& e : table.elements) {
    remaining -= e.leeu;
    if (e.leeu == 0) continue;
    const SequenceIndex& index = db_.index(e.sequence);
    for (std::size_t k = 0; k < e.first_consequent_itemset; ++k) {
      for (const IndexedEntry& entry : index.itemset(k)) {
        if (entry.item <= largest_antecedent) continue;
        auto [it, inserted] = candidates.try_emplace(entry.item);
        Candidate<LeElement>& candidate = it->second;
        if (inserted && config_.reucp && reucm_->get(entry.item, largest_consequent) < minutil_) {
          ++stats_.pruned_by_reucp;
          candidate.excluded = true;
        }
        if (candidate.excluded) continue;
        candidate.accumulated += e.leeu;
        if (config_.lersup && check_bound(entry.item, candidate.accumulated + remaining)) {
          ++stats_.pruned_by_lersup;
          candidate.excluded = true;
          std::vector<LeElement>().swap(candidate.elements);
          continue;
        }
        candidate.elements.push_back(extend_left(e, entry));
      }
    }
  }

  std::vector<Item> order;
  order.reserve(candidates.size());
  std::int64_t collected = 0;
  for (auto& [item, candidate] : candidates) {
    if (candidate.excluded) continue;
    if (config_.lersup && check_bound(item, candidate.accumulated)) {
      ++stats_.pruned_by_lersup;
      candidate.excluded = true;
      continue;
    }
    order.push_back(item);
    collected += static_cast<std::int64_t>(candidate.elements.size());
  }
  std::sort(order.begin(), order.end());
  track_elements(collected);

  for (Item item : order) {
    Candidate<LeElement>& candidate = candidates[item];
    ++stats_.expansions;
    LeftNode child;
    child.antecedent = node.antecedent;
    child.antecedent.push_back(item);
    child.consequent = node.consequent;
    // Antecedent support: parent's antecedent sequences that also contain the item.
    auto sequences = std::make_shared<std::vector<std::uint32_t>>();
    const auto positions = db_.positions(item);
    auto p = positions.begin();
    for (std::uint32_t s : *node.antecedent_sequences) {
      while (p != positions.end() && p->sequence < s) ++p;
      if (p == positions.end()) break;
      if (p->sequence == s) sequences->push_back(s);
    }
    child.antecedent_sequences = std::move(sequences);
    child.table.elements = std::move(candidate.elements);
    for (const LeElement& e : child.table.elements) {
      child.table.utility += e.utility;
      child.table.leeu += e.leeu;
    }
    visit_left(child);
    track_elements(-static_cast<std::int64_t>(child.table.elements.size()));
  }
}

MiningResult mine(const QuantitativeSequenceDatabase& db, Utility minutil, MinConfidence minconf,
                  StrategyConfig config, MiningObserver* observer) {
  if (minutil == 0) throw std::invalid_argument("minutil must be positive");
  const auto start = std::chrono::steady_clock::now();

  MiningStats stats;
  stats.sequences = db.size();
  stats.items = db.items().size();

  EliminationResult elimination{db, {}, {}};
  if (config.uip || config.reurp) elimination = eliminate_unpromising_items(db, minutil, config.reurp);
  const QuantitativeSequenceDatabase& prepared = elimination.database;
  for (std::size_t round = 0; round < elimination.removed_per_round.size(); ++round) {
    const std::size_t removed = elimination.removed_per_round[round].size();
    (round == 0 ? stats.items_removed_uip : stats.items_removed_reurp) += removed;
  }
  if (observer != nullptr) observer->on_database(prepared);

  ReucMap reucm;
  if (config.reucp) reucm = build_reucm(prepared);

  RuleGrowthSearch search(prepared, minutil, minconf, config, config.reucp ? &reucm : nullptr, observer);
  search.run();

  MiningResult result;
  result.rules = search.take_rules();
  sort_canonical(result.rules);
  const MiningStats& search_stats = search.stats();
  stats.mined_sequences = prepared.size();
  stats.mined_items = prepared.items().size();
  stats.rules_found = search_stats.rules_found;
  stats.seeds = search_stats.seeds;
  stats.expansions = search_stats.expansions;
  stats.expansion_calls = search_stats.expansion_calls;
  stats.pruned_by_usrp = search_stats.pruned_by_usrp;
  stats.pruned_by_reucp = search_stats.pruned_by_reucp;
  stats.pruned_by_leeup = search_stats.pruned_by_leeup;
  stats.pruned_by_reeup = search_stats.pruned_by_reeup;
  stats.pruned_by_lersup = search_stats.pruned_by_lersup;
  stats.pruned_by_rersup = search_stats.pruned_by_rersup;
  stats.reucm_entries = reucm.size();
  stats.peak_table_elements = search_stats.peak_table_elements;
  stats.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  result.stats = stats;
  return result;
}

}  // namespace husr
