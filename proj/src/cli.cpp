#include "husr/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "husr/datagen.hpp"
#include "husr/ingest.hpp"

namespace husr {

namespace {

MiningResult default_miner(const QuantitativeSequenceDatabase& db, Utility minutil, MinConfidence minconf,
                           StrategyConfig config) {
  return mine(db, minutil, minconf, config);
}

// Compares two canonical rule lists; empty string when identical.
std::string first_difference(const std::vector<SequentialRule>& expected, const std::vector<SequentialRule>& actual) {
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < expected.size() || j < actual.size()) {
    if (j == actual.size() || (i < expected.size() && canonical_less(expected[i], actual[j]))) {
      return "missing rule " + format_rule(expected[i]);
    }
    if (i == expected.size() || canonical_less(actual[j], expected[i])) {
      return "unexpected rule " + format_rule(actual[j]);
    }
    if (!(expected[i] == actual[j])) {
      return "rule " + format_rule(actual[j]) + " differs from oracle " + format_rule(expected[i]);
    }
    ++i;
    ++j;
  }
  return {};
}

}  // namespace

VerifyReport verify_presets(const QuantitativeSequenceDatabase& db, Utility minutil, MinConfidence minconf,
                            const MinerFn& miner, const OracleOptions& options) {
  VerifyReport report;
  const auto expected = enumerate_all_rules(db, minutil, minconf, options);
  report.oracle_rules = expected.size();
  for (const StrategyConfig& config : StrategyConfig::presets()) {
    std::vector<SequentialRule> actual = miner(db, minutil, minconf, config).rules;
    sort_canonical(actual);
    const std::string difference = first_difference(expected, actual);
    if (!difference.empty()) {
      report.ok = false;
      report.divergences.push_back(config.name() + ": " + difference);
    }
  }
  return report;
}

VerifyReport verify_presets(const QuantitativeSequenceDatabase& db, Utility minutil, MinConfidence minconf) {
  return verify_presets(db, minutil, minconf, default_miner);
}

std::string render_rules(const std::vector<SequentialRule>& rules) {
  std::ostringstream out;
  write_rules(rules, out);
  return out.str();
}

std::string render_stats(const MiningStats& stats, const std::string& variant, Utility minutil,
                         const std::string& minconf) {
  std::ostringstream out;
  out << "variant=" << variant << '\n'
      << "minutil=" << minutil << '\n'
      << "minconf=" << minconf << '\n'
      << "sequences=" << stats.sequences << '\n'
      << "items=" << stats.items << '\n'
      << "mined_sequences=" << stats.mined_sequences << '\n'
      << "mined_items=" << stats.mined_items << '\n'
      << "rules_found=" << stats.rules_found << '\n'
      << "seeds=" << stats.seeds << '\n'
      << "expansions=" << stats.expansions << '\n'
      << "expansion_calls=" << stats.expansion_calls << '\n'
      << "pruned_by_usrp=" << stats.pruned_by_usrp << '\n'
      << "pruned_by_reucp=" << stats.pruned_by_reucp << '\n'
      << "pruned_by_leeup=" << stats.pruned_by_leeup << '\n'
      << "pruned_by_reeup=" << stats.pruned_by_reeup << '\n'
      << "pruned_by_lersup=" << stats.pruned_by_lersup << '\n'
      << "pruned_by_rersup=" << stats.pruned_by_rersup << '\n'
      << "items_removed_uip=" << stats.items_removed_uip << '\n'
      << "items_removed_reurp=" << stats.items_removed_reurp << '\n'
      << "reucm_entries=" << stats.reucm_entries << '\n'
      << "peak_table_elements=" << stats.peak_table_elements << '\n'
      << "elapsed_ms=" << std::fixed << std::setprecision(3) << stats.elapsed_ms << '\n';
  return out.str();
}

namespace {

/// Flag validation failure; reported on stderr with exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open " + path + " for writing");
  file << text;
  if (!file) throw std::runtime_error("failed writing " + path);
}

MinConfidence parse_minconf(const std::string& text) {
  try {
    return MinConfidence::parse(text);
  } catch (const std::invalid_argument&) {
    throw UsageError("minconf must be in [0,1]");
  }
}

Utility check_minutil(Utility minutil) {
  if (minutil == 0) throw UsageError("minutil must be positive");
  return minutil;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    if (!part.empty()) parts.push_back(part);
  }
  return parts;
}

StrategyConfig parse_strategy(const std::string& text) {
  try {
    return StrategyConfig::parse(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

struct MineOptions {
  std::string input, utilities, minconf, strategy = "v4", output, stats;
  Utility minutil = 0;
};

int cmd_mine(const MineOptions& o, std::ostream& out) {
  const MinConfidence minconf = parse_minconf(o.minconf);
  const Utility minutil = check_minutil(o.minutil);
  const StrategyConfig config = parse_strategy(o.strategy);
  const auto db = load_database(o.input, o.utilities);
  const MiningResult result = mine(db, minutil, minconf, config);
  write_text(o.output, render_rules(result.rules));
  const std::string stats = render_stats(result.stats, config.name(), minutil, o.minconf);
  if (o.stats.empty()) {
    out << stats;
  } else {
    write_text(o.stats, stats);
  }
  return 0;
}

struct VerifyOptions {
  std::string input, utilities, minconf;
  Utility minutil = 0;
  std::size_t alphabet_limit = OracleOptions{}.alphabet_limit;
};

int cmd_verify(const VerifyOptions& o, const CliHooks& hooks, std::ostream& out, std::ostream& err) {
  const MinConfidence minconf = parse_minconf(o.minconf);
  const Utility minutil = check_minutil(o.minutil);
  const auto db = load_database(o.input, o.utilities);
  OracleOptions options;
  options.alphabet_limit = o.alphabet_limit;
  VerifyReport report;
  try {
    report = verify_presets(db, minutil, minconf, hooks.miner ? hooks.miner : MinerFn(default_miner), options);
  } catch (const AlphabetTooLarge& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  if (report.ok) {
    out << "ok: " << report.oracle_rules << " rules, all presets match the oracle\n";
    return 0;
  }
  for (const std::string& line : report.divergences) err << "divergence: " << line << '\n';
  return 1;
}

struct BenchOptions {
  std::string input, utilities, minconf, minutils, strategies = "baseline,v1,v2,v3,v4", output;
  unsigned repeat = 1;
};

int cmd_bench(const BenchOptions& o, std::ostream& out) {
  const MinConfidence minconf = parse_minconf(o.minconf);
  std::vector<Utility> minutils;
  for (const std::string& part : split_list(o.minutils)) {
    Utility value = 0;
    std::istringstream in(part);
    if (!(in >> value) || !in.eof()) throw UsageError("invalid minutil '" + part + "'");
    minutils.push_back(check_minutil(value));
  }
  if (minutils.empty()) throw UsageError("--minutil-list is empty");
  std::vector<StrategyConfig> configs;
  for (const std::string& name : split_list(o.strategies)) configs.push_back(parse_strategy(name));
  if (configs.empty()) throw UsageError("--strategies is empty");
  if (o.repeat == 0) throw UsageError("--repeat must be positive");

  const auto db = load_database(o.input, o.utilities);
  std::ostringstream table;
  table << "variant\tminutil\tminconf\trules_found\tseeds\texpansions\texpansion_calls\tpruned_by_usrp\t"
           "pruned_by_reucp\tpruned_by_leeup\tpruned_by_reeup\tpruned_by_lersup\tpruned_by_rersup\t"
           "items_removed_uip\titems_removed_reurp\treucm_entries\tpeak_table_elements\telapsed_ms\n";
  for (const StrategyConfig& config : configs) {
    for (Utility minutil : minutils) {
      std::vector<double> times;
      MiningStats stats;
      for (unsigned r = 0; r < o.repeat; ++r) {
        stats = mine(db, minutil, minconf, config).stats;
        times.push_back(stats.elapsed_ms);
      }
      std::nth_element(times.begin(), times.begin() + times.size() / 2, times.end());
      table << config.name() << '\t' << minutil << '\t' << o.minconf << '\t' << stats.rules_found << '\t'
            << stats.seeds << '\t' << stats.expansions << '\t' << stats.expansion_calls << '\t'
            << stats.pruned_by_usrp << '\t' << stats.pruned_by_reucp << '\t' << stats.pruned_by_leeup << '\t'
            << stats.pruned_by_reeup << '\t' << stats.pruned_by_lersup << '\t' << stats.pruned_by_rersup << '\t'
            << stats.items_removed_uip << '\t' << stats.items_removed_reurp << '\t' << stats.reucm_entries << '\t'
            << stats.peak_table_elements << '\t' << std::fixed << std::setprecision(3)
            << times[times.size() / 2] << '\n';
    }
  }
  if (o.output.empty()) {
    out << table.str();
  } else {
    write_text(o.output, table.str());
  }
  return 0;
}

struct GenOptions {
  GeneratorParams params;
  std::string output, utilities;
};

int cmd_gen(const GenOptions& o) {
  QuantitativeSequenceDatabase db;
  try {
    db = generate(o.params);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::ostringstream sequences;
  std::ostringstream utilities;
  write_database(db, sequences, utilities);
  write_text(o.output, sequences.str());
  write_text(o.utilities, utilities.str());
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const CliHooks& hooks) {
  CLI::App app{"High-utility sequential rule mining"};
  app.name("husr");
  app.require_subcommand(1);

  MineOptions mine_opts;
  auto* mine_cmd = app.add_subcommand("mine", "Mine high-utility sequential rules");
  mine_cmd->add_option("--input", mine_opts.input, "Sequence file")->required();
  mine_cmd->add_option("--utilities", mine_opts.utilities, "External utility file")->required();
  mine_cmd->add_option("--minutil", mine_opts.minutil, "Minimum rule utility")->required();
  mine_cmd->add_option("--minconf", mine_opts.minconf, "Minimum confidence in [0,1]")->required();
  mine_cmd->add_option("--strategy", mine_opts.strategy, "baseline|v1|v2|v3|v4|custom:<flags>");
  mine_cmd->add_option("--output", mine_opts.output, "Rule file to write")->required();
  mine_cmd->add_option("--stats", mine_opts.stats, "Stats file (stdout when omitted)");

  VerifyOptions verify_opts;
  auto* verify_cmd = app.add_subcommand("verify", "Check every preset against the brute-force oracle");
  verify_cmd->add_option("--input", verify_opts.input, "Sequence file")->required();
  verify_cmd->add_option("--utilities", verify_opts.utilities, "External utility file")->required();
  verify_cmd->add_option("--minutil", verify_opts.minutil, "Minimum rule utility")->required();
  verify_cmd->add_option("--minconf", verify_opts.minconf, "Minimum confidence in [0,1]")->required();
  verify_cmd->add_option("--alphabet-limit", verify_opts.alphabet_limit, "Largest alphabet the oracle accepts");

  BenchOptions bench_opts;
  auto* bench_cmd = app.add_subcommand("bench", "Run variants over a minutil ladder and tabulate counters");
  bench_cmd->add_option("--input", bench_opts.input, "Sequence file")->required();
  bench_cmd->add_option("--utilities", bench_opts.utilities, "External utility file")->required();
  bench_cmd->add_option("--minutil-list", bench_opts.minutils, "Comma separated minutil values")->required();
  bench_cmd->add_option("--minconf", bench_opts.minconf, "Minimum confidence in [0,1]")->required();
  bench_cmd->add_option("--strategies", bench_opts.strategies, "Comma separated strategy names");
  bench_cmd->add_option("--repeat", bench_opts.repeat, "Runs per cell; the median time is reported");
  bench_cmd->add_option("--output", bench_opts.output, "Table file (stdout when omitted)");

  GenOptions gen_opts;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic database");
  GeneratorParams& p = gen_opts.params;
  gen_cmd->add_option("--num-sequences", p.num_sequences, "Number of sequences");
  gen_cmd->add_option("--alphabet", p.alphabet_size, "Number of distinct item ids");
  gen_cmd->add_option("--mean-itemsets", p.mean_itemsets_per_sequence, "Mean itemsets per sequence");
  gen_cmd->add_option("--mean-items", p.mean_items_per_itemset, "Mean items per itemset");
  gen_cmd->add_option("--max-quantity", p.max_quantity, "Largest item quantity");
  gen_cmd->add_option("--max-utility", p.max_external_utility, "Largest external utility");
  gen_cmd->add_option("--skew", p.skew, "Item popularity exponent (0 = uniform)");
  gen_cmd->add_option("--seed", p.seed, "Random seed");
  gen_cmd->add_option("--output", gen_opts.output, "Sequence file to write")->required();
  gen_cmd->add_option("--utilities", gen_opts.utilities, "Utility file to write")->required();

  std::vector<const char*> argv{"husr"};
  for (const std::string& arg : args) argv.push_back(arg.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*mine_cmd) return cmd_mine(mine_opts, out);
    if (*verify_cmd) return cmd_verify(verify_opts, hooks, out, err);
    if (*bench_cmd) return cmd_bench(bench_opts, out);
    if (*gen_cmd) return cmd_gen(gen_opts);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const IngestError& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace husr
