#include "hyperdet/cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "hyperdet/hypergraph.hpp"

namespace hyperdet {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("hyperdet_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, GenCompleteAndDeterministic) {
  ASSERT_EQ(run({"gen", "--N", "5", "--m", "3", "--p0", "1.0", "--seed", "1", "--out", path("a")}).code, 0);
  ASSERT_EQ(run({"gen", "--N", "5", "--m", "3", "--p0", "1.0", "--seed", "1", "--out", path("b")}).code, 0);
  EXPECT_EQ(slurp(path("a")), slurp(path("b")));
  std::ifstream in(path("a"));
  EXPECT_EQ(read_edge_list(in).edge_count(), 10u);
  const auto r = run({"stat", "--test", "htdt", "--in", path("a")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["value"], 10.0);
}

TEST_F(CliTest, GenRoundTrip) {
  const auto r = run({"gen", "--N", "14", "--m", "3", "--p0", "0.3", "--n", "6", "--p1", "0.9",
                      "--seed", "42"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream first(r.out);
  const auto g = read_edge_list(first);
  std::ostringstream again;
  write_edge_list(again, g);
  EXPECT_EQ(again.str(), r.out);
  const std::vector<Vertex> planted{0, 1, 2, 3, 4, 5};
  EXPECT_GE(g.edges_within(planted), 10u);
}

TEST_F(CliTest, BadArityIsUsageError) {
  const auto r = run({"gen", "--N", "5", "--m", "1", "--p0", "0.5"});
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(r.err.empty());
  EXPECT_EQ(r.err.find('\n'), r.err.size() - 1);
}

TEST_F(CliTest, StatRecords) {
  {
    std::ofstream f(path("path.txt"));
    f << "# hypergraph N=3 m=2\n1 2\n2 3\n";
  }
  const auto r = run({"stat", "--test", "ht2pt", "--in", path("path.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rec = nlohmann::json::parse(r.out);
  EXPECT_NEAR(rec["value"].get<double>(), -1.224745, 1e-6);
  EXPECT_EQ(rec["name"], "HT2PT");
  EXPECT_FALSE(rec["degenerate"].get<bool>());
  EXPECT_TRUE(rec["aux"].contains("numerator"));
  EXPECT_EQ(run({"stat", "--test", "hst", "--in", path("path.txt")}).code, 2);
  EXPECT_EQ(run({"stat", "--test", "hst", "--n", "2", "--in", path("path.txt")}).code, 0);
  EXPECT_NE(run({"stat", "--test", "htdt", "--in", path("missing.txt")}).code, 0);
  {
    std::ofstream f(path("bad.txt"));
    f << "# hypergraph N=3 m=2\n1 2 3\n";
  }
  EXPECT_EQ(run({"stat", "--test", "htdt", "--in", path("bad.txt")}).code, 3);
}

TEST_F(CliTest, Boundary) {
  const auto r = run({"boundary", "--N", "100", "--m", "2", "--n", "10", "--p0", "0.1", "--p1", "0.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rec = nlohmann::json::parse(r.out);
  EXPECT_NEAR(rec["b1"].get<double>(), 1.2649, 1e-4);
  EXPECT_EQ(r.out.find('\n'), r.out.size() - 1);
  EXPECT_EQ(run({"boundary", "--N", "10", "--m", "2", "--n", "10", "--p0", "0.1", "--p1", "0.5"}).code, 2);
}

TEST_F(CliTest, RiskRejectsSentinelThreshold) {
  const std::vector<std::string> base{"risk", "--N", "12", "--m", "2", "--n", "4", "--p0", "0.2",
                                      "--p1", "0.8", "--test", "htdt", "--policy", "fixed"};
  auto with = [&](const std::string& t) {
    auto args = base;
    args.push_back("--threshold=" + t);
    return run(args);
  };
  EXPECT_EQ(with("-inf").code, 2);
  EXPECT_EQ(with("-1e308").code, 2);
  const auto ok = with("14");
  ASSERT_EQ(ok.code, 0) << ok.err;
  EXPECT_EQ(nlohmann::json::parse(ok.out)["threshold"], 14.0);
}

TEST_F(CliTest, RiskThreadInvariant) {
  const std::vector<std::string> base{"risk", "--N", "12", "--m", "3", "--n", "6", "--p0", "0.3",
                                      "--p1", "0.8", "--test", "hst", "--policy", "mc", "--cal-reps", "100",
                                      "--reps", "40", "--seed", "5", "--format", "csv"};
  auto one = base;
  one.insert(one.end(), {"--threads", "1"});
  auto four = base;
  four.insert(four.end(), {"--threads", "4"});
  const auto a = run(one), b = run(four);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, BudgetEnvironmentOverride) {
  ::setenv("HYPERDET_ENUM_BUDGET", "5", 1);
  const auto r = run({"risk", "--N", "12", "--m", "2", "--n", "5", "--p0", "0.3", "--p1", "0.8",
                      "--test", "hst", "--policy", "fixed", "--threshold", "8", "--reps", "5"});
  ::unsetenv("HYPERDET_ENUM_BUDGET");
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("budget"), std::string::npos) << r.err;
}

TEST_F(CliTest, SweepAndPlot) {
  {
    std::ofstream f(path("cfg.json"));
    f << R"({"fixed": {"N": 12, "m": 2, "n": 5, "p0": 0.2, "p1": 0.5},
             "axes": [{"name": "p1", "values": [0.3, 0.9]}],
             "test": "HTDT", "policy": {"kind": "MCQuantile", "alpha": 0.05, "reps": 100},
             "reps": 30, "seed": 3})";
  }
  ASSERT_EQ(run({"sweep", "--config", path("cfg.json"), "--out", path("a.csv")}).code, 0);
  ASSERT_EQ(run({"sweep", "--config", path("cfg.json"), "--threads", "2", "--out", path("b.csv")}).code, 0);
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
  const auto p = run({"plot", "--in", path("a.csv"), "--x", "p1", "--y", "N", "--value", "risk",
                      "--out", path("a.svg")});
  ASSERT_EQ(p.code, 0) << p.err;
  EXPECT_EQ(slurp(path("a.svg")).rfind("<svg", 0), 0u);
  EXPECT_EQ(run({"plot", "--in", path("a.csv"), "--x", "p1", "--y", "nope"}).code, 2);
  {
    std::ofstream f(path("bad.json"));
    f << R"({"fixed": {"N": 12, "m": 2, "n": 5, "p0": 0.2, "p1": 0.5}, "test": "HTDT", "reps": 3, "policy": {"kind": "MCQuantile", "alpha": 0.05, "reps": 100}, "extra": 1})";
  }
  EXPECT_EQ(run({"sweep", "--config", path("bad.json")}).code, 2);
}

TEST_F(CliTest, NoSubcommand) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

}  // namespace
}  // namespace hyperdet
