#include "cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tuttemc/generators.hpp"
#include "tuttemc/graph.hpp"

namespace tuttemc {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("tuttemc_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    k3_ = (dir_ / "k3.txt").string();
    write_graph_file(k3_, complete_graph(3));
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path dir_;
  std::string k3_;
};

TEST_F(CliTest, EstimateTutteOnUnitHyperbolaIsExact) {
  const auto r = run_cli({"estimate-tutte", "--graph", k3_, "--x", "2", "--y", "2", "--t", "50"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["estimate"].get<double>(), 8.0);
  EXPECT_TRUE(j.contains("seed"));
}

TEST_F(CliTest, ExactSpanningTreeCount) {
  const auto r = run_cli({"exact", "--graph", k3_, "--x", "1", "--y", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["value"], "3");
}

TEST_F(CliTest, ExactOtherQuantities) {
  auto r = run_cli({"exact", "--graph", k3_, "--quantity", "chromatic", "--colors", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["value"], "6");
  r = run_cli({"exact", "--graph", k3_, "--quantity", "z", "--p", "1/2", "--Q", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["value"], "7/2");
  r = run_cli({"exact", "--graph", k3_, "--quantity", "lambda", "--p", "0.5", "--Q", "2", "--edges", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["value"], "5/14");
}

TEST_F(CliTest, SamplerDomainViolationExitsTwo) {
  const auto r = run_cli({"estimate-tutte", "--graph", k3_, "--x", "2", "--y", "0.5", "--t", "10"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("y > 1"), std::string::npos) << r.err;
}

TEST_F(CliTest, ParseAndIoErrorsExitOne) {
  EXPECT_EQ(run_cli({"exact", "--graph", (dir_ / "missing.txt").string(), "--x", "1", "--y", "1"}).code, 1);
  std::ofstream(dir_ / "bad.txt") << "3 2\n0 1\n";
  EXPECT_EQ(run_cli({"exact", "--graph", (dir_ / "bad.txt").string(), "--x", "1", "--y", "1"}).code, 1);
  EXPECT_EQ(run_cli({"exact", "--graph", k3_, "--x", "one", "--y", "1"}).code, 1);
  EXPECT_EQ(run_cli({"no-such-command"}).code, 1);
}

TEST_F(CliTest, CsvOnlyForSweep) {
  auto r = run_cli({"estimate-z", "--graph", k3_, "--p", "0.5", "--Q", "2", "--t", "10", "--format", "csv"});
  EXPECT_EQ(r.code, 2);
  r = run_cli({"diagnose", "superdense-sweep", "--f", "0", "--p", "0.5", "--Q", "2", "--n-grid", "10,20",
               "--t", "100", "--seed", "1", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "n,estimate,rel_error");
  EXPECT_NE(r.err.find("seed: 1"), std::string::npos);
}

TEST_F(CliTest, GenerateRoundTrip) {
  const std::string path = (dir_ / "g.txt").string();
  const auto r = run_cli({"generate", "family", "--family", "sub:1", "--n", "30", "--seed", "4", "--out", path});
  ASSERT_EQ(r.code, 0) << r.err;
  SplitMix64 rng(4);
  const Graph expected = gen_family({Subdense{1.0}, 30}, rng);
  EXPECT_TRUE(same_edge_multiset(read_graph_file(path), expected));

  std::ifstream sidecar(path + ".json");
  const auto meta = nlohmann::json::parse(sidecar);
  EXPECT_EQ(meta["seed"], 4u);
  EXPECT_EQ(meta["n"], 30u);
  EXPECT_EQ(meta["m"], expected.num_edges());
  EXPECT_EQ(meta["min_degree"], min_degree(expected));

  const auto z = run_cli({"estimate-z", "--graph", path, "--p", "0.5", "--Q", "1", "--t", "10"});
  EXPECT_EQ(z.code, 0) << z.err;
}

TEST_F(CliTest, GeneratePlgRecordsDroppedCopy) {
  const std::string path = (dir_ / "plg.txt").string();
  const auto r = run_cli({"generate", "plg", "--alpha", "2", "--beta", "1", "--seed", "9", "--out", path});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto meta = nlohmann::json::parse(r.out);
  EXPECT_EQ(meta["family"], "plg");
  EXPECT_TRUE(meta.contains("dropped_copy"));
  EXPECT_EQ(read_graph_file(path).num_vertices(), 16u);
}

TEST_F(CliTest, SameSeedSameBytes) {
  const std::vector<std::string> args = {"estimate-tutte", "--graph", k3_, "--x", "3", "--y", "2",
                                         "--t", "5000", "--seed", "77"};
  auto threaded = args;
  threaded.insert(threaded.end(), {"--threads", "3"});
  const auto a = run_cli(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, run_cli(args).out);
  EXPECT_EQ(a.out, run_cli(threaded).out);
}

TEST_F(CliTest, SeedIsEchoedWhenDrawn) {
  const auto r = run_cli({"estimate-z", "--graph", k3_, "--p", "0.5", "--Q", "2", "--t", "10"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(nlohmann::json::parse(r.out)["seed"].is_number_unsigned());
}

TEST_F(CliTest, DiagnoseReports) {
  auto r = run_cli({"diagnose", "gstar", "--graph", k3_, "--c", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["gstar_components"], 1u);
  r = run_cli({"diagnose", "matching-z", "--n", "4", "--p", "1/2", "--Q", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["z"].get<double>(), 9.0);
  r = run_cli({"diagnose", "matching-z", "--n", "5", "--p", "1/2", "--Q", "2"});
  EXPECT_EQ(r.code, 2);
  r = run_cli({"diagnose", "plg", "--alpha", "6", "--beta", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(nlohmann::json::parse(r.out)["molloy_reed_closed"].is_number());
}

TEST_F(CliTest, BinaryRuns) {
  const std::string cmd = std::string(TUTTEMC_CLI_PATH) + " exact --graph " + k3_ +
                          " --x 2 --y 2 > " + (dir_ / "out.json").string();
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  std::ifstream in(dir_ / "out.json");
  EXPECT_EQ(nlohmann::json::parse(in)["value"], "8");
}

}  // namespace
}  // namespace tuttemc
