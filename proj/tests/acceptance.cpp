#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "audit.hpp"
#include "husr/datagen.hpp"
#include "husr/miner.hpp"
#include "husr/oracle.hpp"
#include "husr/preprocess.hpp"
#include "support.hpp"

namespace {

using namespace husr;
using namespace husr::testing;
using Clock = std::chrono::steady_clock;

// Tolerances and workloads.
constexpr double kGoldenSeconds = 1.0;
constexpr std::uint64_t kRandomDatabases = 100;
constexpr double kOracleSuiteSeconds = 120.0;
constexpr std::uint64_t kProfileSeed = 1;
const std::vector<Utility> kEffectivenessLadder{650000, 600000, 550000};
constexpr double kEffectivenessBudgetSeconds = 30.0;
const std::vector<std::uint64_t> kScalingSizes{10000, 15000, 20000};
constexpr Utility kScalingMinutil = 1400000;
constexpr double kScalingSlack = 2.0;
const char* const kProfileMinconf = "0.6";

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string describe(const SequentialRule& rule) {
  std::ostringstream out;
  for (Item i : rule.antecedent) out << i.id << ' ';
  out << "==>";
  for (Item i : rule.consequent) out << ' ' << i.id;
  return out.str();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome golden_example() {
  const auto db = example_db();
  const std::vector<SequentialRule> expected{{{a}, {c}, {1, 2}, 12, 2, 2},
                                             {{a}, {c, g}, {1, 2}, 14, 2, 2},
                                             {{b}, {d, g}, {3}, 10, 1, 2},
                                             {{b, d}, {g}, {3}, 10, 1, 1}};
  const auto start = Clock::now();
  for (const auto& config : StrategyConfig::presets()) {
    const auto result = mine(db, 10, MinConfidence::parse("0.5"), config);
    if (result.rules != expected) return {false, config.name() + " returned " + std::to_string(result.rules.size()) + " rules"};
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= kGoldenSeconds) return {false, "took " + std::to_string(elapsed) + " s"};
  return {true, "4 rules under all presets in " + std::to_string(elapsed) + " s"};
}

Outcome elimination_trace() {
  const auto result = eliminate_unpromising_items(example_db(), 10, true);
  const std::vector<SeuTable> expected{
      {{a, 17}, {b, 19}, {c, 17}, {d, 10}, {e, 13}, {f, 5}, {g, 27}},
      {{a, 17}, {b, 19}, {c, 17}, {d, 10}, {e, 9}, {g, 27}},
      {{a, 16}, {b, 19}, {c, 16}, {d, 10}, {g, 26}},
  };
  const std::vector<std::vector<Item>> removed{{f}, {e}};
  if (result.removed_per_round != removed) return {false, "unexpected removal order"};
  if (result.seu_trace != expected) return {false, "SEU trace differs"};
  return {true, "f then e removed; final a:16 b:19 c:16 d:10 g:26"};
}

Outcome seed_table() {
  const auto seeds = generate_seed_rules(reduced_example_db(), 10, true);
  const std::pair<Item, Item> pairs[] = {{a, b}, {a, c}, {a, g}, {b, c}, {b, d}, {b, g}, {c, g}, {d, g}};
  const Utility seu[] = {9, 16, 16, 9, 10, 19, 7, 10};
  const bool eliminated[] = {true, false, false, true, false, false, true, false};
  if (seeds.size() != 8) return {false, std::to_string(seeds.size()) + " seeds"};
  for (std::size_t i = 0; i < 8; ++i) {
    if (seeds[i].antecedent != pairs[i].first || seeds[i].consequent != pairs[i].second || seeds[i].seu != seu[i] ||
        seeds[i].eliminated != eliminated[i]) {
      return {false, "seed r" + std::to_string(i + 1) + " differs"};
    }
  }
  return {true, "SEU 9/16/16/9/10/19/7/10, eliminated r1 r4 r7"};
}

Outcome bound_spot_values() {
  const auto db = example_db();
  const Utility l = leeu(db, items({a}), items({c}));
  const Utility r = reeu(db, items({a}), items({c}));
  const Utility rs = rersu(db, items({a}), items({c}), g);
  std::ostringstream detail;
  detail << "LEEU=" << l << " REEU=" << r << " RERSU=" << rs;
  return {l == 8 && r == 17 && rs == 17, detail.str()};
}

struct Setting {
  Utility minutil;
  MinConfidence minconf;
};

std::vector<Setting> settings_for(const QuantitativeSequenceDatabase& db) {
  std::vector<Setting> settings;
  for (const auto& [minutil, conf] : threshold_grid(db)) settings.push_back({minutil, MinConfidence::parse(conf)});
  return settings;
}

Outcome oracle_equivalence() {
  const auto start = Clock::now();
  std::uint64_t runs = 0, divergences = 0;
  std::string first;
  for (std::uint64_t seed = 1; seed <= kRandomDatabases; ++seed) {
    const auto db = random_db(seed);
    const auto occurring = enumerate_occurring_rules(db);
    for (const auto& setting : settings_for(db)) {
      const auto expected = filter_rules(occurring, setting.minutil, setting.minconf);
      for (const auto& config : StrategyConfig::presets()) {
        ++runs;
        if (mine(db, setting.minutil, setting.minconf, config).rules == expected) continue;
        if (divergences++ == 0) first = "seed " + std::to_string(seed) + " " + config.name();
      }
    }
  }
  const double elapsed = seconds_since(start);
  std::ostringstream detail;
  detail << runs << " runs on " << kRandomDatabases << " databases, " << divergences << " divergences, " << elapsed
         << " s";
  if (divergences > 0) detail << " (first: " << first << ")";
  return {divergences == 0 && elapsed < kOracleSuiteSeconds, detail.str()};
}

Outcome bound_soundness() {
  BoundAuditor auditor;
  for (std::uint64_t seed = 1; seed <= kRandomDatabases; ++seed) {
    const auto db = random_db(seed);
    for (const auto& setting : settings_for(db)) {
      for (const auto& config : {StrategyConfig::v2(), StrategyConfig::v4()}) {
        mine(db, setting.minutil, setting.minconf, config, &auditor);
      }
    }
  }
  std::ostringstream detail;
  detail << auditor.nodes << " nodes, " << auditor.checks << " checks, " << auditor.violations.size()
         << " violations";
  if (!auditor.violations.empty()) detail << " (first: " << auditor.violations.front() << ")";
  return {auditor.violations.empty() && auditor.checks > 0, detail.str()};
}

struct BudgetExceeded {};

// Counts expanded nodes and stops the search once the wall-clock budget runs out.
class ExpansionCounter : public MiningObserver {
 public:
  explicit ExpansionCounter(double budget_seconds) : deadline_(Clock::now() + to_duration(budget_seconds)) {}

  void on_node(const NodeVisit& visit) override {
    if (visit.growth == Growth::Seed) return;
    ++expansions;
    if ((expansions & 0xfff) == 0 && Clock::now() > deadline_) throw BudgetExceeded{};
  }

  std::uint64_t expansions = 0;

 private:
  static Clock::duration to_duration(double seconds) {
    return std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds));
  }
  Clock::time_point deadline_;
};

struct CountedRun {
  std::uint64_t expansions = 0;
  bool complete = true;  // otherwise expansions is a lower bound
};

CountedRun count_expansions(const QuantitativeSequenceDatabase& db, Utility minutil, StrategyConfig config) {
  ExpansionCounter counter(kEffectivenessBudgetSeconds);
  try {
    const auto result = mine(db, minutil, MinConfidence::parse(kProfileMinconf), config, &counter);
    return {result.stats.expansions, true};
  } catch (const BudgetExceeded&) {
    return {counter.expansions, false};
  }
}

Outcome pruning_effectiveness() {
  const auto db = generate(GeneratorParams::syn10k_profile(10000, kProfileSeed));
  const std::vector<StrategyConfig> chain{StrategyConfig::v4(), StrategyConfig::v2(), StrategyConfig::v1(),
                                          StrategyConfig::baseline()};
  std::ostringstream detail;
  bool pass = true;
  CountedRun lowest_v4, lowest_baseline;
  for (Utility minutil : kEffectivenessLadder) {
    std::vector<CountedRun> runs;
    for (const auto& config : chain) runs.push_back(count_expansions(db, minutil, config));
    detail << " minutil=" << minutil << ":";
    for (std::size_t i = 0; i < chain.size(); ++i) {
      detail << ' ' << chain[i].name() << '=' << (runs[i].complete ? "" : ">=") << runs[i].expansions;
    }
    // Only the most pruned variant of a pair must be exact; a truncated count
    // on the right-hand side is still a valid lower bound.
    for (std::size_t i = 0; i + 1 < runs.size(); ++i) {
      if (!runs[i].complete || runs[i].expansions > runs[i + 1].expansions) pass = false;
    }
    lowest_v4 = runs.front();
    lowest_baseline = runs.back();
  }
  if (!(lowest_v4.expansions < lowest_baseline.expansions)) pass = false;
  return {pass, "Syn10k profile, minconf " + std::string(kProfileMinconf) + ";" + detail.str()};
}

Outcome scalability_shape() {
  std::ostringstream detail;
  bool pass = true;
  std::vector<double> v4_seconds;
  for (std::uint64_t size : kScalingSizes) {
    const auto db = generate(GeneratorParams::syn10k_profile(size, kProfileSeed));
    std::map<std::string, std::size_t> counts;
    std::vector<SequentialRule> reference;
    bool first = true;
    for (const auto& config : StrategyConfig::presets()) {
      const auto start = Clock::now();
      const auto result = mine(db, kScalingMinutil, MinConfidence::parse(kProfileMinconf), config);
      if (config == StrategyConfig::v4()) v4_seconds.push_back(seconds_since(start));
      if (first) reference = result.rules;
      if (result.rules != reference) {
        pass = false;
        detail << ' ' << config.name() << " differs at " << size;
      }
      first = false;
    }
    detail << ' ' << size << ": " << reference.size() << " rules, v4 " << v4_seconds.back() << " s;";
  }
  for (std::size_t i = 1; i < kScalingSizes.size(); ++i) {
    const double ratio = static_cast<double>(kScalingSizes[i]) / static_cast<double>(kScalingSizes[i - 1]);
    if (v4_seconds[i] > kScalingSlack * ratio * v4_seconds[i - 1]) pass = false;
  }
  return {pass, "minutil " + std::to_string(kScalingMinutil) + ", minconf " + kProfileMinconf + ";" + detail.str()};
}

bool includes(const std::vector<SequentialRule>& larger, const std::vector<SequentialRule>& smaller) {
  return std::all_of(smaller.begin(), smaller.end(), [&](const SequentialRule& rule) {
    return std::find(larger.begin(), larger.end(), rule) != larger.end();
  });
}

Outcome monotonicity() {
  GeneratorParams params;
  params.num_sequences = 400;
  params.alphabet_size = 25;
  params.mean_itemsets_per_sequence = 4;
  params.mean_items_per_itemset = 1.5;
  params.seed = 11;
  const auto db = generate(params);
  const Utility total = db.total_utility();
  std::ostringstream detail;
  bool pass = true;

  std::vector<SequentialRule> previous;
  detail << " minutil ladder:";
  for (Utility divisor : {40, 60, 90, 130, 200}) {
    const auto rules = mine(db, total / divisor, MinConfidence::parse("0.3"), StrategyConfig::v4()).rules;
    if (!includes(rules, previous)) pass = false;
    detail << ' ' << rules.size();
    previous = rules;
  }
  previous.clear();
  detail << "; minconf ladder:";
  for (const char* conf : {"0.9", "0.7", "0.5", "0.3", "0.1", "0"}) {
    const auto rules = mine(db, total / 130, MinConfidence::parse(conf), StrategyConfig::v4()).rules;
    if (!includes(rules, previous)) pass = false;
    detail << ' ' << rules.size();
    previous = rules;
  }
  if (previous.empty()) pass = false;
  return {pass, detail.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"golden example", golden_example},
      {"elimination trace", elimination_trace},
      {"seed table", seed_table},
      {"bound spot values", bound_spot_values},
      {"oracle equivalence", oracle_equivalence},
      {"bound soundness", bound_soundness},
      {"pruning effectiveness", pruning_effectiveness},
      {"scalability shape", scalability_shape},
      {"monotonicity", monotonicity},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Outcome outcome;
    try {
      outcome = run();
    } catch (const std::exception& error) {
      outcome = {false, std::string("exception: ") + error.what()};
    }
    if (!outcome.pass) ++failures;
    std::cout << (outcome.pass ? "PASS " : "FAIL ") << index << ". " << name << ": " << outcome.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
