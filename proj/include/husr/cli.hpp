#pragma once

// Command-line front end: mine / verify / bench / gen.
//
// Exit codes: 0 success, 1 verification divergence, 2 invalid flags or input.

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "husr/miner.hpp"
#include "husr/oracle.hpp"

namespace husr {

using MinerFn = std::function<MiningResult(const QuantitativeSequenceDatabase&, Utility, MinConfidence,
                                           StrategyConfig)>;

struct VerifyReport {
  bool ok = true;
  std::size_t oracle_rules = 0;
  /// "<variant>: <what differs>" for the first divergent rule of each failing variant.
  std::vector<std::string> divergences;
};

/// Runs every preset through `miner` and compares the rule sets (with all
/// measures) against the brute-force oracle. Throws AlphabetTooLarge.
VerifyReport verify_presets(const QuantitativeSequenceDatabase& db, Utility minutil, MinConfidence minconf,
                            const MinerFn& miner, const OracleOptions& options = {});
VerifyReport verify_presets(const QuantitativeSequenceDatabase& db, Utility minutil, MinConfidence minconf);

/// Rule-file text for the rules (canonical order).
std::string render_rules(const std::vector<SequentialRule>& rules);

/// "key=value" stats document.
std::string render_stats(const MiningStats& stats, const std::string& variant, Utility minutil,
                         const std::string& minconf);

struct CliHooks {
  /// Replaces the miner used by `verify`; tests use it to inject faults.
  MinerFn miner;
};

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const CliHooks& hooks = {});
int run_cli(int argc, char** argv);

}  // namespace husr
