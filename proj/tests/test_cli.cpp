#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <unistd.h>

#include "husr/cli.hpp"
#include "husr/ingest.hpp"
#include "support.hpp"

namespace husr {
namespace {

namespace fs = std::filesystem;
using namespace husr::testing;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("husr_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
    std::ofstream(path("seq.txt")) << example_sequences();
    std::ofstream(path("util.txt")) << example_utilities();
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int run(std::vector<std::string> args, const CliHooks& hooks = {}) {
    out_.str("");
    err_.str("");
    return run_cli(args, out_, err_, hooks);
  }

  std::vector<std::string> mine_args(const std::string& strategy, const std::string& output) {
    return {"mine",      "--input",      path("seq.txt"), "--utilities", path("util.txt"), "--minutil", "10",
            "--minconf", "0.5",          "--strategy",    strategy,      "--output",       path(output), "--stats",
            path(output + ".stats")};
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(CliTest, MineWritesExampleRules) {
  ASSERT_EQ(run(mine_args("v4", "v4.txt")), 0) << err_.str();
  EXPECT_EQ(read_file(path("v4.txt")),
            "1 ==> 3 #SUP: 2 #CONF: 1.0000 #UTIL: 12\n"
            "1 ==> 3 7 #SUP: 2 #CONF: 1.0000 #UTIL: 14\n"
            "2 ==> 4 7 #SUP: 1 #CONF: 0.5000 #UTIL: 10\n"
            "2 4 ==> 7 #SUP: 1 #CONF: 1.0000 #UTIL: 10\n");
  const std::string stats = read_file(path("v4.txt.stats"));
  for (const char* key : {"variant=v4\n", "minutil=10\n", "minconf=0.5\n", "sequences=4\n", "items=7\n",
                          "rules_found=4\n", "seeds=", "expansions=", "pruned_by_usrp=", "pruned_by_reucp=",
                          "pruned_by_leeup=", "pruned_by_reeup=", "pruned_by_lersup=", "pruned_by_rersup=",
                          "items_removed_reurp=1\n", "elapsed_ms="}) {
    EXPECT_NE(stats.find(key), std::string::npos) << key;
  }
}

TEST_F(CliTest, StatsToStdoutWithoutStatsFlag) {
  auto args = mine_args("baseline", "b.txt");
  args.resize(args.size() - 2);
  ASSERT_EQ(run(args), 0);
  EXPECT_NE(out_.str().find("variant=baseline"), std::string::npos);
}

TEST_F(CliTest, PresetsWriteIdenticalRuleFiles) {
  ASSERT_EQ(run(mine_args("baseline", "baseline.txt")), 0);
  ASSERT_EQ(run(mine_args("v4", "v4.txt")), 0);
  ASSERT_EQ(run(mine_args("custom:reucp,rersup", "custom.txt")), 0);
  EXPECT_EQ(read_file(path("baseline.txt")), read_file(path("v4.txt")));
  EXPECT_EQ(read_file(path("baseline.txt")), read_file(path("custom.txt")));
  EXPECT_NE(read_file(path("baseline.txt.stats")), read_file(path("v4.txt.stats")));
}

TEST_F(CliTest, FlagErrors) {
  auto args = mine_args("v4", "x.txt");
  args[8] = "1.5";
  EXPECT_EQ(run(args), 2);
  EXPECT_NE(err_.str().find("minconf must be in [0,1]"), std::string::npos);

  args = mine_args("v4", "x.txt");
  args[6] = "0";
  EXPECT_EQ(run(args), 2);
  EXPECT_EQ(run(mine_args("v7", "x.txt")), 2);
  EXPECT_EQ(run({"mine", "--input", path("seq.txt")}), 2);
  EXPECT_EQ(run({"frobnicate"}), 2);
  EXPECT_EQ(run({}), 2);
}

TEST_F(CliTest, InputErrorsReportKind) {
  std::ofstream(path("bad.txt")) << "1:1 1:2 -1 -2\n";
  auto args = mine_args("v4", "x.txt");
  args[2] = path("bad.txt");
  EXPECT_EQ(run(args), 2);
  EXPECT_NE(err_.str().find("DuplicateItemInSequence"), std::string::npos) << err_.str();
  args[2] = path("missing.txt");
  EXPECT_EQ(run(args), 2);
}

TEST_F(CliTest, VerifyPasses) {
  EXPECT_EQ(run({"verify", "--input", path("seq.txt"), "--utilities", path("util.txt"), "--minutil", "10",
                 "--minconf", "0.5"}),
            0)
      << err_.str();
}

TEST_F(CliTest, VerifyReportsCorruptedMiner) {
  CliHooks hooks;
  hooks.miner = [](const QuantitativeSequenceDatabase& db, Utility minutil, MinConfidence minconf,
                   StrategyConfig config) {
    auto result = mine(db, minutil, minconf, config);
    if (config == StrategyConfig::v2()) result.rules.pop_back();
    return result;
  };
  EXPECT_EQ(run({"verify", "--input", path("seq.txt"), "--utilities", path("util.txt"), "--minutil", "10",
                 "--minconf", "0.5"},
                hooks),
            1);
  EXPECT_NE(err_.str().find("v2: missing rule 2 4 ==> 7"), std::string::npos) << err_.str();
}

TEST_F(CliTest, VerifyAlphabetGuard) {
  std::ofstream seq(path("wide.txt"));
  std::ofstream util(path("wide_util.txt"));
  for (int id = 1; id <= 20; ++id) {
    seq << id << ":1 -1 ";
    util << id << " 1\n";
  }
  seq << "-2\n";
  seq.close();
  util.close();
  EXPECT_EQ(run({"verify", "--input", path("wide.txt"), "--utilities", path("wide_util.txt"), "--minutil", "1",
                 "--minconf", "0"}),
            2);
}

TEST_F(CliTest, BenchRows) {
  ASSERT_EQ(run({"bench", "--input", path("seq.txt"), "--utilities", path("util.txt"), "--minutil-list", "10",
                 "--minconf", "0.5", "--strategies", "v4"}),
            0)
      << err_.str();
  std::istringstream table(out_.str());
  std::string header, row, extra;
  std::getline(table, header);
  std::getline(table, row);
  EXPECT_FALSE(std::getline(table, extra));
  EXPECT_EQ(row.substr(0, 10), "v4\t10\t0.5\t");
}

TEST_F(CliTest, BenchRuleCountsAcrossPresetsAndThresholds) {
  ASSERT_EQ(run({"gen", "--num-sequences", "150", "--alphabet", "40", "--mean-itemsets", "3", "--mean-items", "1.5",
                 "--seed", "3", "--output", path("g.txt"), "--utilities", path("gu.txt")}),
            0);
  ASSERT_EQ(run({"bench", "--input", path("g.txt"), "--utilities", path("gu.txt"), "--minutil-list",
                 "400,200,100", "--minconf", "0.2", "--output", path("bench.tsv")}),
            0)
      << err_.str();
  std::istringstream table(read_file(path("bench.tsv")));
  std::string line;
  std::getline(table, line);
  std::map<std::string, std::vector<std::uint64_t>> counts;
  while (std::getline(table, line)) {
    std::istringstream fields(line);
    std::string variant, minutil, minconf;
    std::uint64_t rules = 0;
    fields >> variant >> minutil >> minconf >> rules;
    counts[variant].push_back(rules);
  }
  ASSERT_EQ(counts.size(), 5u);
  for (const auto& [variant, rules] : counts) {
    EXPECT_EQ(rules, counts["baseline"]) << variant;
    EXPECT_TRUE(std::is_sorted(rules.begin(), rules.end())) << variant;
  }
}

TEST_F(CliTest, GenWritesReingestableFiles) {
  const std::vector<std::string> args{"gen",    "--num-sequences", "100",          "--alphabet",
                                      "20",     "--seed",          "7",            "--output",
                                      path("a.txt"), "--utilities", path("au.txt")};
  ASSERT_EQ(run(args), 0) << err_.str();
  const auto db = load_database(path("a.txt"), path("au.txt"));
  EXPECT_EQ(db.size(), 100u);
  const std::string first = read_file(path("a.txt")) + read_file(path("au.txt"));
  ASSERT_EQ(run(args), 0);
  EXPECT_EQ(read_file(path("a.txt")) + read_file(path("au.txt")), first);
}

TEST_F(CliTest, GenRejectsZeroAlphabet) {
  EXPECT_EQ(run({"gen", "--alphabet", "0", "--output", path("z.txt"), "--utilities", path("zu.txt")}), 2);
}

TEST(RenderStats, KeyValueLines) {
  MiningStats stats;
  stats.rules_found = 3;
  const std::string text = render_stats(stats, "v1", 5, "0.25");
  EXPECT_EQ(text.substr(0, 30), "variant=v1\nminutil=5\nminconf=0");
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) EXPECT_NE(line.find('='), std::string::npos) << line;
}

}  // namespace
}  // namespace husr
