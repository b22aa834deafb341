#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "husr/miner.hpp"

namespace husr::testing {

/// Recomputes true utilities with the reference arithmetic and checks them
/// against every bound the miner reports.
class BoundAuditor : public MiningObserver {
 public:
  std::uint64_t nodes = 0;
  std::uint64_t checks = 0;
  std::vector<std::string> violations;

  void on_database(const QuantitativeSequenceDatabase& db) override { db_ = db; }

  void on_node(const NodeVisit& visit) override {
    ++nodes;
    const std::vector<Item> x(visit.antecedent.begin(), visit.antecedent.end());
    const std::vector<Item> y(visit.consequent.begin(), visit.consequent.end());
    if (rule_utility(x, y, *db_) != visit.utility) report("utility", x, y, visit.utility);
    for (Item i : db_->items()) {
      if (contains(x, i) || contains(y, i)) continue;
      const auto left = with(x, i);
      expect_le(rule_utility(left, y, *db_), visit.leeu, "LEEU", left, y);
      if (visit.growth == Growth::Left) continue;
      const auto right = with(y, i);
      expect_le(rule_utility(x, right, *db_), visit.reeu, "REEU", x, right);
      for (Item j : db_->items()) {
        if (j == i || contains(x, j) || contains(y, j)) continue;
        const auto both = with(x, j);
        expect_le(rule_utility(both, right, *db_), visit.reeu, "REEU(right-then-left)", both, right);
      }
    }
  }

  void on_bound_check(const BoundCheck& check) override {
    const std::vector<Item> x(check.antecedent.begin(), check.antecedent.end());
    std::vector<Item> y(check.consequent.begin(), check.consequent.end());
    std::vector<Item> sorted_x = x;
    std::sort(sorted_x.begin(), sorted_x.end());
    std::sort(y.begin(), y.end());
    expect_le(rule_utility(sorted_x, y, *db_), check.bound, check.kind == RunningBound::Lersu ? "LERSU" : "RERSU",
              sorted_x, y);
  }

 private:
  static bool contains(const std::vector<Item>& side, Item item) {
    return std::find(side.begin(), side.end(), item) != side.end();
  }
  static std::vector<Item> with(std::vector<Item> side, Item item) {
    side.insert(std::upper_bound(side.begin(), side.end(), item), item);
    return side;
  }

  void expect_le(Utility value, Utility bound, const char* name, const std::vector<Item>& x,
                 const std::vector<Item>& y) {
    ++checks;
    if (value > bound) report(name, x, y, value, bound);
  }

  void report(const char* name, const std::vector<Item>& x, const std::vector<Item>& y, Utility value,
              std::optional<Utility> bound = std::nullopt) {
    if (violations.size() >= 20) return;
    std::ostringstream out;
    out << name << " violated by";
    for (Item i : x) out << ' ' << i.id;
    out << " ==>";
    for (Item i : y) out << ' ' << i.id;
    out << ": " << value;
    if (bound) out << " > " << *bound;
    violations.push_back(out.str());
  }

  std::optional<QuantitativeSequenceDatabase> db_;
};

}  // namespace husr::testing
