#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

namespace {

namespace fs = std::filesystem;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("hyperroute_cli_" +
            std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  // Exit status of the CLI; stdout goes to `stdout_`.
  int Run(const std::string& args) {
    std::string cmd = std::string(HYPERROUTE_CLI) + " " + args + " > " +
                      Path("stdout") + " 2> " + Path("stderr");
    int raw = std::system(cmd.c_str());
    stdout_ = Read("stdout");
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  }

  std::string Read(const std::string& name) const {
    std::ifstream in(Path(name));
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  void Write(const std::string& name, const std::string& text) const {
    std::ofstream(Path(name)) << text;
  }

  fs::path dir_;
  std::string stdout_;
};

TEST_F(Cli, GenIsDeterministic) {
  ASSERT_EQ(Run("--seed 7 gen --family random-regular --n 12 --degree 4 -o " +
                Path("a.g")), 0);
  ASSERT_EQ(Run("--seed 7 gen --family random-regular --n 12 --degree 4 -o " +
                Path("b.g")), 0);
  EXPECT_EQ(Read("a.g"), Read("b.g"));
  EXPECT_EQ(Read("a.g").substr(0, 6), "12 24\n");
}

TEST_F(Cli, GenBadFamily) {
  EXPECT_EQ(Run("gen --family petersen --n 10"), 3);
}

TEST_F(Cli, MatchExitCodes) {
  Write("ok.h", "2 2 2 1\n0 1 0\n1 1 1\n");
  ASSERT_EQ(Run("match -i " + Path("ok.h") + " -o " + Path("ok.m")), 0);
  EXPECT_EQ(Read("ok.m"), "0\n1\n");

  Write("stuck.h", "2 1 1 1\n0 1 0\n");
  EXPECT_EQ(Run("match -i " + Path("stuck.h")), 2);

  Write("bad.h", "2 1 1 1\n0 1 5\n");
  EXPECT_EQ(Run("match -i " + Path("bad.h")), 3);
  EXPECT_EQ(Run("match -i " + Path("missing.h")), 3);
  EXPECT_EQ(Run("match -i " + Path("ok.h") + " --mu 2"), 3);
}

TEST_F(Cli, MatchTrace) {
  Write("ok.h", "1 1 1 1\n0 1 0\n");
  ASSERT_EQ(Run("match -i " + Path("ok.h") + " --trace -"), 0);
  EXPECT_EQ(stdout_.substr(0, 6), "1 0 1 ");
  EXPECT_NE(stdout_.find("collapse"), std::string::npos);
}

TEST_F(Cli, RouteVerifyAndTamper) {
  ASSERT_EQ(Run("gen --family complete --n 6 -o " + Path("k6.g")), 0);
  Write("k6.d", "0 1\n2 3\n4 5\n");
  ASSERT_EQ(Run("route -g " + Path("k6.g") + " -d " + Path("k6.d") +
                " --relaxed --r 3 --delta 2 -o " + Path("k6.s")), 0);
  ASSERT_EQ(Run("verify -g " + Path("k6.g") + " -d " + Path("k6.d") + " -s " +
                Path("k6.s") + " --r 3"), 0);
  EXPECT_EQ(stdout_, "ok\n");

  Write("tampered.s", "0 2 1\n2 0 3\n4 5\n");
  EXPECT_EQ(Run("verify -g " + Path("k6.g") + " -d " + Path("k6.d") + " -s " +
                Path("tampered.s")), 1);
  EXPECT_EQ(stdout_.substr(0, 10), "violation:");
}

TEST_F(Cli, RouteOverrideNeedsRelaxed) {
  ASSERT_EQ(Run("gen --family complete --n 4 -o " + Path("k4.g")), 0);
  Write("k4.d", "0 1\n");
  EXPECT_EQ(Run("route -g " + Path("k4.g") + " -d " + Path("k4.d") + " --r 2"), 3);
}

TEST_F(Cli, RouteFailureIsExitTwo) {
  Write("p.g", "3 2\n0 1\n1 2\n");
  Write("p.d", "0 2\n0 2\n");
  EXPECT_EQ(Run("route -g " + Path("p.g") + " -d " + Path("p.d") +
                " --relaxed --r 2 --delta 1"), 2);
}

TEST_F(Cli, SplitAndVerify) {
  ASSERT_EQ(Run("gen --family complete --n 12 -o " + Path("k12.g")), 0);
  ASSERT_EQ(Run("split -g " + Path("k12.g") + " --k 2 --prefix " + Path("part") +
                " --summary " + Path("summary")), 0);
  EXPECT_TRUE(fs::exists(Path("part.1.graph")));
  EXPECT_TRUE(fs::exists(Path("part.2.graph")));
  EXPECT_EQ(Read("summary").substr(0, 2), "1 ");
  ASSERT_EQ(Run("verify -g " + Path("k12.g") + " --k 2 --split-prefix " +
                Path("part")), 0);
  EXPECT_NE(stdout_.find("ok\n"), std::string::npos);
  // The same edge in both parts.
  fs::copy_file(Path("part.1.graph"), Path("part.2.graph"),
                fs::copy_options::overwrite_existing);
  EXPECT_EQ(Run("verify -g " + Path("k12.g") + " --k 2 --split-prefix " +
                Path("part")), 1);
}

TEST_F(Cli, BenchRows) {
  ASSERT_EQ(Run("bench --families complete,hypercube --sizes 8 --oracle both "
                "--no-timing -o " + Path("bench.csv")), 0);
  std::string csv = Read("bench.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "family,n,k,oracle,iters,wall_ms,status");
  int rows = 0;
  for (char c : csv) rows += c == '\n';
  EXPECT_EQ(rows, 5);
  EXPECT_NE(csv.find("complete,8,1,bfs,"), std::string::npos);
  EXPECT_NE(csv.find(",-,"), std::string::npos);
}

TEST_F(Cli, Replay) {
  ASSERT_EQ(Run("--seed 3 --manifest " + Path("gen.json") +
                " gen --family random-regular --n 10 --degree 4 -o " + Path("g")),
            0);
  ASSERT_TRUE(fs::exists(Path("gen.json")));
  ASSERT_EQ(Run("replay " + Path("gen.json")), 0);
  EXPECT_EQ(stdout_, "replay: identical\n");
}

TEST_F(Cli, ReplayDetectsChangedInput) {
  Write("ok.h", "1 1 1 1\n0 1 0\n");
  ASSERT_EQ(Run("--manifest " + Path("m.json") + " match -i " + Path("ok.h") +
                " -o " + Path("ok.m")), 0);
  ASSERT_EQ(Run("replay " + Path("m.json")), 0);
  Write("ok.h", "1 2 1 1\n0 1 1\n");
  EXPECT_EQ(Run("replay " + Path("m.json")), 3);
}

}  // namespace
