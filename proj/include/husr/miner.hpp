#pragma once

// Rule-growth search for high-utility sequential rules. Rules start as 1*1
// seeds, grow to the right (consequent) and then to the left (antecedent);
// a left expansion is never followed by a right one, so every rule has a
// single generation path.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "husr/core.hpp"
#include "husr/preprocess.hpp"

namespace husr {

/// Which pruning strategies run. With a flag off the matching gate always passes.
struct StrategyConfig {
  bool uip = false;     // drop items with SEU < minutil once
  bool usrp = false;    // drop 1*1 seeds with SEU < minutil
  bool reucp = false;   // pair co-occurrence map gate on candidates
  bool leeup = false;   // LEEU gate on left recursion
  bool reeup = false;   // REEU gate on right recursion
  bool lersup = false;  // running LERSU bound on left candidates
  bool rersup = false;  // running RERSU bound on right candidates
  bool reurp = false;   // repeat item elimination to a fixpoint

  static StrategyConfig none() { return {}; }
  static StrategyConfig baseline();
  static StrategyConfig v1();
  static StrategyConfig v2();
  static StrategyConfig v3();
  static StrategyConfig v4();
  /// All five presets, baseline first.
  static std::vector<StrategyConfig> presets();

  /// Accepts baseline, v1..v4, or custom:<comma separated flag names> (custom: alone means no strategy).
  static StrategyConfig parse(std::string_view text);
  /// Preset name when the flags match a preset, custom:... otherwise.
  std::string name() const;

  friend bool operator==(const StrategyConfig&, const StrategyConfig&) = default;
};

/// Per-sequence record of a rule that may still grow on either side.
struct ReElement {
  std::uint32_t sequence = 0;  // index into the mining database
  Utility utility = 0;
  Utility u_left = 0;        // non-rule items at itemsets <= last antecedent itemset
  Utility u_right = 0;       // non-rule items at itemsets >= first consequent itemset
  Utility u_left_right = 0;  // items strictly between the two boundaries
  Utility leeu = 0;
  Utility reeu = 0;
  std::uint32_t last_antecedent_itemset = 0;
  std::uint32_t first_consequent_itemset = 0;

  friend bool operator==(const ReElement&, const ReElement&) = default;
};

struct ReTable {
  std::vector<ReElement> elements;  // ascending sequence index
  Utility utility = 0;
  Utility leeu = 0;
  Utility reeu = 0;
};

/// Per-sequence record of a rule that may only grow on the left.
struct LeElement {
  std::uint32_t sequence = 0;
  Utility utility = 0;
  Utility u_left_merged = 0;  // u_left + u_left_right of the rule's RE element
  Utility leeu = 0;
  std::uint32_t first_consequent_itemset = 0;

  friend bool operator==(const LeElement&, const LeElement&) = default;
};

struct LeTable {
  std::vector<LeElement> elements;
  Utility utility = 0;
  Utility leeu = 0;
};

inline Utility leeu_in_sequence(Utility rule_utility, Utility u_left, Utility u_left_right) noexcept {
  const Utility pool = u_left + u_left_right;
  return pool > 0 ? rule_utility + pool : 0;
}

inline Utility reeu_in_sequence(Utility rule_utility, Utility u_left, Utility u_left_right,
                                Utility u_right) noexcept {
  const Utility pool = u_left + u_left_right + u_right;
  return pool > 0 ? rule_utility + pool : 0;
}

/// Builds an element from the rule's side utilities and boundaries in one sequence.
ReElement make_re_element(const QuantitativeSequenceDatabase& db, std::uint32_t sequence, Utility antecedent_utility,
                          Utility consequent_utility, RuleOccurrence occurrence);
/// Extends an element by an item right of the antecedent boundary.
ReElement extend_right(const ReElement& element, const SequenceIndex& index, const IndexedEntry& entry);
LeElement extend_left(const LeElement& element, const IndexedEntry& entry);
LeElement to_le_element(const ReElement& element);
LeTable to_le_table(const ReTable& table);

struct ExtensionItem {
  Item item;
  Utility utility = 0;

  friend bool operator==(const ExtensionItem&, const ExtensionItem&) = default;
};

/// Non-rule items of a sequence split by position relative to an occurrence:
/// at or before the last antecedent itemset, at or after the first consequent
/// itemset, or strictly between.
struct ExtensionClasses {
  std::vector<ExtensionItem> left_only;
  std::vector<ExtensionItem> right_only;
  std::vector<ExtensionItem> both;
};

ExtensionClasses classify_extension_items(const Sequence& sequence, const ExternalUtilityTable& eu,
                                          std::span<const Item> antecedent, std::span<const Item> consequent,
                                          RuleOccurrence occurrence);

/// RE-table of X -> Y computed from scratch over every sequence.
ReTable build_re_table(const QuantitativeSequenceDatabase& db, std::span<const Item> antecedent,
                       std::span<const Item> consequent);

Utility leeu(const QuantitativeSequenceDatabase& db, std::span<const Item> antecedent,
             std::span<const Item> consequent);
Utility reeu(const QuantitativeSequenceDatabase& db, std::span<const Item> antecedent,
             std::span<const Item> consequent);
/// LERSU of parent + item on the left: parent's LEEU summed over sequences
/// where the candidate occurs.
Utility lersu(const QuantitativeSequenceDatabase& db, std::span<const Item> parent_antecedent,
              std::span<const Item> parent_consequent, Item added);
/// RERSU of parent + item on the right: parent's REEU summed over sequences
/// where the candidate occurs.
Utility rersu(const QuantitativeSequenceDatabase& db, std::span<const Item> parent_antecedent,
              std::span<const Item> parent_consequent, Item added);

struct SeedRule {
  Item antecedent;
  Item consequent;
  std::vector<Sid> sids;  // ascending
  Utility seu = 0;
  bool eliminated = false;
};

/// Every ordered pair {a} -> {b} occurring at least once, ascending by (a, b).
/// When usrp is set, seeds with SEU < minutil are flagged eliminated.
std::vector<SeedRule> generate_seed_rules(const QuantitativeSequenceDatabase& db, Utility minutil, bool usrp);

struct MiningStats {
  std::uint64_t sequences = 0;  // input database
  std::uint64_t items = 0;
  std::uint64_t mined_sequences = 0;  // after item elimination
  std::uint64_t mined_items = 0;
  std::uint64_t rules_found = 0;
  std::uint64_t seeds = 0;            // 1*1 rules expanded after USRP
  std::uint64_t expansions = 0;       // candidate rules materialized by expansions
  std::uint64_t expansion_calls = 0;  // left / right expansion invocations
  std::uint64_t pruned_by_usrp = 0;
  std::uint64_t pruned_by_reucp = 0;
  std::uint64_t pruned_by_leeup = 0;
  std::uint64_t pruned_by_reeup = 0;
  std::uint64_t pruned_by_lersup = 0;
  std::uint64_t pruned_by_rersup = 0;
  std::uint64_t items_removed_uip = 0;    // first elimination round
  std::uint64_t items_removed_reurp = 0;  // later rounds
  std::uint64_t reucm_entries = 0;
  std::uint64_t peak_table_elements = 0;
  double elapsed_ms = 0.0;

  /// Same counters, timing excluded.
  bool same_counters(const MiningStats& other) const noexcept;
};

struct MiningResult {
  std::vector<SequentialRule> rules;  // canonical order
  MiningStats stats;
};

enum class Growth { Seed, Right, Left };

struct NodeVisit {
  std::span<const Item> antecedent;
  std::span<const Item> consequent;
  Growth growth = Growth::Seed;
  Utility utility = 0;
  Utility leeu = 0;
  Utility reeu = 0;  // 0 for nodes reached by left expansion
  std::uint64_t support = 0;
  std::uint64_t antecedent_support = 0;
};

enum class RunningBound { Lersu, Rersu };

struct BoundCheck {
  RunningBound kind = RunningBound::Rersu;
  std::span<const Item> antecedent;  // candidate rule
  std::span<const Item> consequent;
  Utility bound = 0;
  bool pruned = false;
};

/// Hooks for audits and tests. Callbacks run synchronously inside mine().
class MiningObserver {
 public:
  virtual ~MiningObserver() = default;
  /// The database the search runs on, after item elimination.
  virtual void on_database(const QuantitativeSequenceDatabase&) {}
  /// A rule whose table was built (seed or expansion candidate).
  virtual void on_node(const NodeVisit&) {}
  /// Only called while LERSUP / RERSUP are enabled.
  virtual void on_bound_check(const BoundCheck&) {}
};

/// Search over an already-prepared database (items eliminated, map built).
class RuleGrowthSearch {
 public:
  struct RightNode {
    std::vector<Item> antecedent;
    std::vector<Item> consequent;
    std::shared_ptr<const std::vector<std::uint32_t>> antecedent_sequences;
    ReTable table;
  };
  struct LeftNode {
    std::vector<Item> antecedent;
    std::vector<Item> consequent;
    std::shared_ptr<const std::vector<std::uint32_t>> antecedent_sequences;
    LeTable table;
  };

  /// reucm may be null when the REUCP flag is off.
  RuleGrowthSearch(const QuantitativeSequenceDatabase& db, Utility minutil, MinConfidence minconf,
                   StrategyConfig config, const ReucMap* reucm, MiningObserver* observer = nullptr);

  /// Seeds every 1*1 rule and expands it.
  void run();

  /// Node for X -> Y built from scratch; lets callers expand an arbitrary rule.
  RightNode make_node(std::span<const Item> antecedent, std::span<const Item> consequent) const;
  static LeftNode to_left(const RightNode& node);

  void right_expansion(const RightNode& node);
  void left_expansion(const LeftNode& node);

  const std::vector<SequentialRule>& rules() const noexcept { return rules_; }
  std::vector<SequentialRule> take_rules();
  const MiningStats& stats() const noexcept { return stats_; }

 private:
  void visit_right(RightNode& node, Growth growth);
  void visit_left(const LeftNode& node);
  void emit(std::span<const Item> antecedent, std::span<const Item> consequent, Utility utility,
            std::span<const std::uint32_t> sequences, std::uint64_t antecedent_support);
  void track_elements(std::int64_t delta);

  const QuantitativeSequenceDatabase& db_;
  Utility minutil_;
  MinConfidence minconf_;
  StrategyConfig config_;
  const ReucMap* reucm_;
  MiningObserver* observer_;
  std::vector<SequentialRule> rules_;
  MiningStats stats_;
  std::uint64_t live_elements_ = 0;
};

/// All rules with utility >= minutil and confidence >= minconf. The result is
/// the same for every StrategyConfig; only the work done differs.
/// Throws std::invalid_argument when minutil is 0.
MiningResult mine(const QuantitativeSequenceDatabase& db, Utility minutil, MinConfidence minconf,
                  StrategyConfig config, MiningObserver* observer = nullptr);

}  // namespace husr
