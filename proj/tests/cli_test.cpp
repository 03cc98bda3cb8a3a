#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "gtest/gtest.h"
#include "pdsp/bench.hpp"
#include "pdsp/instance_io.hpp"

namespace pdsp::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           (std::string("pdsp_cli_") +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    std::ofstream(dir_ / "tri.txt") << "3\n1 2 3.0\n1 3 4.0\n2 3 5.0\n";
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run_cli(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return run(args, out_, err_);
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(CliTest, SolveRunningExample) {
  EXPECT_EQ(run_cli({"solve", "--instance", path("tri.txt"), "--p", "2", "--mode", "single"}), 0);
  EXPECT_NE(out_.str().find("value      5\n"), std::string::npos) << out_.str();
  EXPECT_NE(out_.str().find("status     Optimal"), std::string::npos);
}

TEST_F(CliTest, SolveWritesJsonWithDiagnostics) {
  ASSERT_EQ(run_cli({"solve", "--instance", path("tri.txt"), "--p", "2", "--json",
                     path("r.json"), "--cut-strength", "--verify-cnd"}),
            0)
      << err_.str();
  std::ifstream in(path("r.json"));
  const auto doc = nlohmann::json::parse(in);
  EXPECT_EQ(doc["value"], 5.0);
  EXPECT_TRUE(doc["cut_strength"].is_array());
  EXPECT_TRUE(doc["cnd"]["is_cnd"].get<bool>());
}

TEST_F(CliTest, BruteForceRefusalExitsWithError) {
  ASSERT_EQ(run_cli({"gen", "--n", "2000", "--out-dir", dir_.string(), "--name", "big"}), 0);
  const std::string file = path("gkd_n2000_s2_p200_seed1.txt");
  EXPECT_EQ(run_cli({"solve", "--instance", file, "--mode", "brute"}), 1);
  EXPECT_NE(err_.str().find("refused"), std::string::npos) << err_.str();
}

TEST_F(CliTest, TimeLimitExitCode) {
  ASSERT_EQ(run_cli({"gen", "--n", "120", "--s", "12", "--p-rule", "explicit", "--p", "12",
                     "--out-dir", dir_.string()}),
            0);
  EXPECT_EQ(run_cli({"solve", "--instance", path("gkd_n120_s12_p12_seed1.txt"), "--p", "12",
                     "--time-limit", "0.05"}),
            2);
  EXPECT_NE(out_.str().find("TimeLimit"), std::string::npos);
}

TEST_F(CliTest, SingleAndMultiAgree) {
  ASSERT_EQ(run_cli({"gen", "--n", "30", "--seed", "42", "--out-dir", dir_.string()}), 0);
  const std::string file = path("gkd_n30_s2_p3_seed42.txt");
  auto value = [&](const std::string& mode) {
    EXPECT_EQ(run_cli({"solve", "--instance", file, "--mode", mode, "--json", path(mode + ".json")}),
              0);
    std::ifstream in(path(mode + ".json"));
    return nlohmann::json::parse(in)["value"].get<double>();
  };
  EXPECT_EQ(value("single"), value("multi"));
}

TEST_F(CliTest, GenWritesDeterministicSuite) {
  ASSERT_EQ(run_cli({"gen", "--n", "25", "--s", "2", "--count", "10", "--seed", "1", "--out-dir",
                     path("a")}),
            0);
  ASSERT_EQ(run_cli({"gen", "--n", "25", "--s", "2", "--count", "10", "--seed", "1", "--out-dir",
                     path("b")}),
            0);
  const Suite suite = read_suite(path("a/suite.json"));
  ASSERT_EQ(suite.entries.size(), 10u);
  for (const SuiteEntry& e : suite.entries) {
    EXPECT_EQ(e.spec.resolve_p(), 3u);
    std::ifstream fa(path("a/" + e.file));
    std::ifstream fb(path("b/" + e.file));
    std::stringstream sa;
    std::stringstream sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    EXPECT_EQ(sa.str(), sb.str());
    EXPECT_FALSE(sa.str().empty());
  }
}

TEST_F(CliTest, GenRejectsZeroDimension) {
  EXPECT_EQ(run_cli({"gen", "--n", "25", "--s", "0", "--out-dir", dir_.string()}), 1);
}

TEST_F(CliTest, BadFlagsExitWithUsage) {
  EXPECT_EQ(run_cli({"solve"}), 1);
  EXPECT_EQ(run_cli({"solve", "--instance", path("tri.txt"), "--mode", "cplex"}), 1);
  EXPECT_EQ(run_cli({"frobnicate"}), 1);
  EXPECT_EQ(run_cli({"solve", "--instance", path("missing.txt")}), 1);
}

TEST_F(CliTest, BenchWritesRowsAndAggregates) {
  ASSERT_EQ(run_cli({"gen", "--n", "20", "--count", "2", "--p-rule", "ceil10,2ceil10",
                     "--out-dir", path("suite")}),
            0);
  ASSERT_EQ(run_cli({"bench", "--suite", path("suite/suite.json"), "--modes", "single,f3",
                     "--time-limit", "5", "--csv", path("out/rows.csv")}),
            0)
      << err_.str();
  std::ifstream rows_file(path("out/rows.csv"));
  const auto rows = read_rows_csv(rows_file);
  EXPECT_EQ(rows.size(), 8u);
  EXPECT_TRUE(fs::exists(path("out/rows_by_n.csv")));
  EXPECT_TRUE(fs::exists(path("out/rows_by_cell.csv")));
}

}  // namespace
}  // namespace pdsp::cli
