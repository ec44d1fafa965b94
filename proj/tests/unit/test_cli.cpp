#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace mlc::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result mlc(std::vector<std::string> args) {
  args.insert(args.begin(), "mlc");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

std::map<std::string, std::string> key_values(const std::string& text) {
  std::map<std::string, std::string> kv;
  for (const auto& l : lines(text)) {
    const auto eq = l.find('=');
    if (eq != std::string::npos) kv[l.substr(0, eq)] = l.substr(eq + 1);
  }
  return kv;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("mlc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
    std::ofstream(dir_ / "paw.txt") << "0 1\n1 2\n0 2\n2 3\n";
    unsetenv("ML_KBAR");
  }
  void TearDown() override {
    fs::remove_all(dir_);
    unsetenv("ML_KBAR");
  }
  std::string path(const char* name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(Cli, Help) {
  const Result r = mlc({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("sweep"), std::string::npos);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(mlc({}).code, kValidationError);
  EXPECT_EQ(mlc({"frobnicate"}).code, kValidationError);
  EXPECT_EQ(mlc({"mlfun", "--alpha", "0.5"}).code, kValidationError);
  EXPECT_EQ(mlc({"mlfun", "--alpha", "-1", "--z", "1"}).code, kValidationError);
  EXPECT_EQ(mlc({"params", "--alpha", "0.5"}).code, kValidationError);
  const Result missing = mlc({"centrality", "--graph", path("nope.mtx"), "--output", path("o.csv")});
  EXPECT_EQ(missing.code, kValidationError);
  EXPECT_EQ(std::count(missing.err.begin(), missing.err.end(), '\n'), 1);
  EXPECT_EQ(mlc({"sweep", "--graph", path("paw.txt"), "--alpha", "0:1", "--gamma", "0.1:1:3", "--output", path("s.csv")})
                .code,
            kValidationError);
}

TEST_F(Cli, Mlfun) {
  const Result r = mlc({"mlfun", "--alpha", "0.5", "--z", "-3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(std::stod(r.out), std::exp(9.0) * std::erfc(3.0), 1e-15);
  const Result g = mlc({"mlfun", "--alpha", "1", "--z", "2", "--gamma", "0.5"});
  EXPECT_NEAR(std::stod(g.out), std::exp(1.0), 1e-14);
}

TEST_F(Cli, Params) {
  const Result r = mlc({"params", "--alpha", "0.5", "--rho", "2", "--gamma", "0.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto kv = key_values(r.out);
  EXPECT_NEAR(std::stod(kv.at("mu")), std::sqrt(M_PI) / 2, 1e-15);
  EXPECT_EQ(kv.at("limiting"), "monotone");
  EXPECT_EQ(kv.at("admissible"), "true");
  EXPECT_EQ(key_values(mlc({"params", "--alpha", "0.5", "--rho", "2", "--gamma", "0.9"}).out).at("admissible"),
            "false");
  const auto paw = key_values(mlc({"params", "--alpha", "1", "--graph", path("paw.txt")}).out);
  EXPECT_NEAR(std::stod(paw.at("rho")), 2.1700864866260323, 1e-9);
}

TEST_F(Cli, KbarEnvironment) {
  const auto base = key_values(mlc({"params", "--alpha", "0.1", "--rho", "50"}).out);
  setenv("ML_KBAR", "30", 1);
  const auto low = key_values(mlc({"params", "--alpha", "0.1", "--rho", "50"}).out);
  EXPECT_EQ(low.at("kbar"), "30");
  EXPECT_LT(std::stod(low.at("mu")), std::stod(base.at("mu")));
  setenv("ML_KBAR", "12x", 1);
  EXPECT_EQ(mlc({"params", "--alpha", "0.1", "--rho", "50"}).code, kValidationError);
  setenv("ML_KBAR", "0", 1);
  EXPECT_EQ(mlc({"params", "--alpha", "0.1", "--rho", "50"}).code, kValidationError);
}

TEST_F(Cli, CentralityCsvAndStats) {
  const Result r = mlc({"centrality", "--graph", path("paw.txt"), "--measure", "subgraph", "--alpha", "1", "--gamma",
                        "0.5", "--output", path("c.csv"), "--stats", path("c.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto l = lines(slurp(path("c.csv")));
  ASSERT_EQ(l.size(), 6u);
  EXPECT_EQ(l[0][0], '#');
  EXPECT_EQ(l[1], "node,score");
  EXPECT_EQ(l[2].rfind("0,", 0), 0u);
  const std::string json = slurp(path("c.json"));
  EXPECT_NE(json.find("\"n\": 4"), std::string::npos);
  EXPECT_NE(json.find("\"m\": 4"), std::string::npos);
}

TEST_F(Cli, CentralityOverflowIsComputeFailure) {
  const Result r = mlc({"centrality", "--graph", path("paw.txt"), "--measure", "total", "--alpha", "0.1", "--gamma",
                        "1e3", "--output", path("c.csv")});
  EXPECT_EQ(r.code, kComputeFailure);
  EXPECT_NE(r.err.find("alpha = 0.1"), std::string::npos);
  EXPECT_NE(r.err.find("gamma = 1000"), std::string::npos);
}

TEST_F(Cli, SweepWritesGridAndMuSidecar) {
  const Result r = mlc({"sweep", "--graph", path("paw.txt"), "--alpha", "0.5:1:3", "--gamma", "0.1:100:4", "--output",
                        path("s.csv"), "--threads", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto grid = lines(slurp(path("s.csv")));
  ASSERT_EQ(grid.size(), 2u + 12u);
  EXPECT_EQ(grid[1], "alpha,gamma,tau,finite");
  bool saw_nan = false;
  for (std::size_t k = 2; k < grid.size(); ++k) saw_nan = saw_nan || grid[k].find(",nan,0") != std::string::npos;
  EXPECT_TRUE(saw_nan);
  const auto mu = lines(slurp(path("s_mu.csv")));
  ASSERT_EQ(mu.size(), 5u);
  EXPECT_EQ(mu[1], "alpha,mu");
}

TEST_F(Cli, RerunsAreByteIdentical) {
  auto sweep = [&](const char* out, const char* threads) {
    EXPECT_EQ(mlc({"sweep", "--graph", path("paw.txt"), "--alpha", "0:1:5", "--gamma", "0.05:0.4:6", "--output",
                   path(out), "--threads", threads})
                  .code,
              0);
    return slurp(path(out));
  };
  EXPECT_EQ(sweep("a.csv", "1"), sweep("b.csv", "3"));
  auto tree = [&](const char* out) {
    EXPECT_EQ(mlc({"temporal", "--scenario", "tree", "--seed", "7", "--alpha", "0.5", "--gamma", "0.5", "--b",
                   "0.01", "--output", path(out)})
                  .code,
              0);
    return slurp(path(out));
  };
  EXPECT_EQ(tree("t1.csv"), tree("t2.csv"));
}

TEST_F(Cli, TemporalScheduleRoundTrip) {
  ASSERT_EQ(mlc({"temporal", "--scenario", "phone", "--gamma", "0.9", "--b", "0.1", "--output", path("p.csv"),
                 "--write-schedule", path("p.sched")})
                .code,
            0);
  const auto traj = lines(slurp(path("p.csv")));
  EXPECT_EQ(traj[0][0], '#');
  EXPECT_EQ(traj[1], "t,node,broadcast,receive");
  ASSERT_EQ(mlc({"temporal", "--schedule", path("p.sched"), "--gamma", "0.9", "--b", "0.1", "--output",
                 path("q.csv")})
                .code,
            0);
  const auto again = lines(slurp(path("q.csv")));
  ASSERT_EQ(again.size(), traj.size());
  for (std::size_t k = 1; k < traj.size(); ++k) EXPECT_EQ(again[k], traj[k]);
  EXPECT_EQ(mlc({"temporal", "--output", path("r.csv")}).code, kValidationError);
  EXPECT_EQ(mlc({"temporal", "--scenario", "phone", "--schedule", path("p.sched"), "--output", path("r.csv")}).code,
            kValidationError);
}

}  // namespace
}  // namespace mlc::cli
