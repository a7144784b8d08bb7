#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "fixtures.hpp"
#include "hyperlet/counters.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + HYPERLET_CLI + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) {
    r.out.append(buf, got);
  }
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::vector<std::string>> csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      cells.push_back(cell);
    }
    rows.push_back(cells);
  }
  return rows;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("hyperlet_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  static std::string data(const std::string& name) { return fixture::data_path(name); }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, ExactToyPairs) {
  auto r = run("exact " + data("toy.hg") + " -k 2");
  ASSERT_EQ(r.code, 0);
  auto rows = csv(r.out);
  ASSERT_GE(rows.size(), 2u);
  EXPECT_EQ(rows[0].size(), 5u);
  double total = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    total += std::stod(rows[i][3]);
  }
  EXPECT_EQ(total, 13.0);
  auto meta_run = run("exact " + data("toy.hg") + " -k 2 --out " + path("e.csv") + " --meta " + path("e.json"));
  ASSERT_EQ(meta_run.code, 0);
  EXPECT_EQ(nlohmann::json::parse(slurp(path("e.json")))["total"], "13");
}

TEST_F(Cli, CountIsNormalized) {
  auto r = run("count " + data("toy.hg") + " -k 3 --samples 20000 --seed 7 --meta " + path("m.json"));
  ASSERT_EQ(r.code, 0);
  auto rows = csv(r.out);
  ASSERT_EQ(rows[0], (std::vector<std::string>{"key", "samples", "inv_sigma_sum", "colorful_estimate",
                                               "relative_frequency"}));
  double sum = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    ASSERT_EQ(rows[i].size(), 5u);
    sum += std::stod(rows[i][4]);
  }
  EXPECT_NEAR(sum, 1.0, 1e-12);
  auto meta = nlohmann::json::parse(slurp(path("m.json")));
  EXPECT_EQ(meta["k"], 3);
  EXPECT_EQ(meta["runs"].size(), 1u);
  EXPECT_EQ(meta["types"].size(), rows.size() - 1);
}

TEST_F(Cli, CountRunsAndUniform) {
  auto r = run("count " + data("toy.hg") + " -k 3 --samples 2000 --runs 3 --uniform --ie-extract");
  ASSERT_EQ(r.code, 0);
  double sum = 0;
  auto rows = csv(r.out);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    sum += std::stod(rows[i][4]);
  }
  EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST_F(Cli, ReduceClique) {
  ASSERT_EQ(run("reduce-clique " + data("k4.el") + " -k 4 --out " + path("r.hg")).code, 0);
  auto h = hyperlet::parse_hypergraph_file(path("r.hg"));
  EXPECT_EQ(h.graph.vertex_count(), 30u);
  auto meta = nlohmann::json::parse(slurp(path("r.hg.json")));
  EXPECT_EQ(meta["k_prime"], 30);
  EXPECT_EQ(meta["block_map"].size(), 4u);
  EXPECT_EQ(meta["edge_map"].size(), 6u);
}

TEST_F(Cli, VerdictExitCodes) {
  ASSERT_EQ(run("reduce-clique " + data("k4.el") + " -k 3 --out " + path("k4.hg")).code, 0);
  ASSERT_EQ(run("reduce-clique " + data("c5.el") + " -k 3 --out " + path("c5.hg")).code, 0);
  auto yes = run("ksh " + path("k4.hg") + " -k 12");
  EXPECT_EQ(yes.code, 0);
  EXPECT_EQ(nlohmann::json::parse(yes.out)["verdict"], "YES");
  auto no = run("ksh " + path("c5.hg") + " -k 12");
  EXPECT_EQ(no.code, 1);
  EXPECT_EQ(nlohmann::json::parse(no.out)["verdict"], "NO");

  std::ofstream(path("yes.ov")) << "10\n01\n11\n";
  std::ofstream(path("no.ov")) << "1 1\n0 1\n1 1\n";
  EXPECT_EQ(run("ov " + path("yes.ov")).code, 0);
  EXPECT_EQ(run("ov " + path("no.ov")).code, 1);
}

TEST_F(Cli, UsageAndModuleErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("count " + data("toy.hg") + " -k 3 --bogus").code, 2);
  EXPECT_EQ(run("count " + path("missing.hg") + " -k 3").code, 2);
  EXPECT_EQ(run("count " + data("toy.hg")).code, 2);
  EXPECT_EQ(run("count " + data("toy.hg") + " -k 3 --alpha wide").code, 2);
  EXPECT_EQ(run("count " + data("toy.hg") + " -k 3 --samples 0").code, 2);
  EXPECT_EQ(run("--help").code, 0);
  std::ofstream(path("bad.hg")) << "a b\n   \nc d\n";
  EXPECT_EQ(run("stats " + path("bad.hg")).code, 1);
  EXPECT_EQ(run("exact " + data("toy.hg") + " -k 3", "HM_BUDGET=1").code, 1);
  EXPECT_EQ(run("exact " + data("toy.hg") + " -k 3", "HM_BUDGET=100").code, 0);
}

TEST_F(Cli, DeterministicOutputs) {
  const std::string args = "count " + data("toy.hg") + " -k 3 --samples 5000 --seed 11";
  auto a = run(args);
  auto b = run(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, run("count " + data("toy.hg") + " -k 3 --samples 5000 --seed 12").out);

  ASSERT_EQ(run("gen-synthetic -n 200 -m 150 --seed 3 --out " + path("g1.hg")).code, 0);
  ASSERT_EQ(run("gen-synthetic -n 200 -m 150 --seed 3 --out " + path("g2.hg")).code, 0);
  EXPECT_EQ(slurp(path("g1.hg")), slurp(path("g2.hg")));

  ASSERT_EQ(run("build " + path("g1.hg") + " -k 4 --seed 5 --threads 1 --out " + path("t1.hmt")).code, 0);
  ASSERT_EQ(run("build " + path("g1.hg") + " -k 4 --seed 5 --threads 3 --out " + path("t3.hmt")).code, 0);
  EXPECT_EQ(slurp(path("t1.hmt")), slurp(path("t3.hmt")));
}

TEST_F(Cli, NaiveAndSplitTablesAgree) {
  ASSERT_EQ(run("gen-synthetic --model controlled -n 120 -m 80 --large-size 10 --seed 2 --out " +
                path("c.hg")).code, 0);
  ASSERT_EQ(run("build " + path("c.hg") + " -k 3 --seed 9 --out " + path("auto.hmt")).code, 0);
  ASSERT_EQ(run("build " + path("c.hg") + " -k 3 --seed 9 --alpha naive --out " + path("naive.hmt")).code, 0);
  ASSERT_EQ(run("build " + path("c.hg") + " -k 3 --seed 9 --alpha 0 --out " + path("zero.hmt")).code, 0);
  std::ifstream a(path("auto.hmt"), std::ios::binary), n(path("naive.hmt"), std::ios::binary),
      z(path("zero.hmt"), std::ios::binary);
  auto ta = hyperlet::load_counters(a);
  EXPECT_TRUE(ta.same_counts(hyperlet::load_counters(n)));
  EXPECT_TRUE(ta.same_counts(hyperlet::load_counters(z)));
}

TEST_F(Cli, SampleFromSavedTable) {
  const std::string base = "sample " + data("toy.hg") + " -k 3 --samples 3000 --seed 4";
  ASSERT_EQ(run("build " + data("toy.hg") + " -k 3 --seed 4 --out " + path("t.hmt")).code, 0);
  auto fresh = run(base + " --log " + path("log.csv"));
  auto reused = run(base + " --table " + path("t.hmt"));
  ASSERT_EQ(fresh.code, 0);
  EXPECT_EQ(fresh.out, reused.out);
  auto log = csv(slurp(path("log.csv")));
  EXPECT_EQ(log.size(), 3001u);
  EXPECT_EQ(log[0], (std::vector<std::string>{"index", "key", "sigma", "accepted"}));
  EXPECT_EQ(run(base + " -k 4 --table " + path("t.hmt")).code, 2);
}

TEST_F(Cli, CurveSplitStatsBench) {
  auto curve = run("curve " + data("toy.hg"));
  ASSERT_EQ(curve.code, 0);
  auto rows = csv(curve.out);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"alpha", "beta", "lower_cost", "upper_cost", "weighted"}));
  EXPECT_EQ(rows.size(), 5u);
  auto split = run("split " + data("toy.hg") + " --alpha 4 --lower-out " + path("lo.hg") +
                   " --upper-out " + path("up.hg"));
  ASSERT_EQ(split.code, 0);
  EXPECT_EQ(nlohmann::json::parse(split.out)["beta"], 1);
  EXPECT_EQ(hyperlet::parse_hypergraph_file(path("up.hg")).graph.edge_count(), 1u);
  auto stats = nlohmann::json::parse(run("stats " + data("toy.hg")).out);
  EXPECT_EQ(stats["gaifman_edges"], 13);
  auto bench = run("bench --sizes 40,80 -k 3");
  ASSERT_EQ(bench.code, 0);
  EXPECT_EQ(csv(bench.out).size(), 5u);
}
