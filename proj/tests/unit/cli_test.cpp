#include "sunlab/report.hpp"
#include "sunlab/session.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using namespace sunlab;

namespace {

struct CliResult {
  int code;
  std::string out;
};

CliResult run(const std::string& args) {
  const std::string cmd = std::string(SUNLAB_BIN) + " " + args + " 2>/dev/null";
  FILE* p = ::popen(cmd.c_str(), "r");
  CliResult r{-1, {}};
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = ::pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() / ("sunlab-cli-" + std::to_string(::getpid()) + "-" +
                                       ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }
  std::string q(const fs::path& p) const { return "'" + p.string() + "'"; }
  fs::path dir;
};

}  // namespace

TEST_F(Cli, ScheduleIsDeterministic) {
  const CliResult a = run("schedule --condition cp-fvf --seed 42");
  const CliResult b = run("schedule --condition cp-fvf --seed 42");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const Json j = Json::parse(a.out);
  EXPECT_EQ(j.at("trials").size(), 24u);
  EXPECT_EQ(j, to_json(generate_schedule(Condition::cp_fvf, 42)));
  ASSERT_EQ(run("schedule --condition cp-fvf --seed 42 --out " + q(dir / "s.json")).code, 0);
  EXPECT_EQ(slurp(dir / "s.json"), a.out);
}

TEST_F(Cli, ScheduleErrors) {
  EXPECT_EQ(run("schedule --condition bogus --seed 1").code, 1);
  EXPECT_EQ(run("schedule --condition cp-fvf").code, 1);
  EXPECT_EQ(run("schedule --condition cp-fvf --seed 1 --out /nonexistent-dir/x/s.json").code, 2);
}

TEST_F(Cli, SimulateAnalyzeReport) {
  ASSERT_EQ(run("simulate --agent cp-fvf --participants 2 --seed 5 --out-dir " + q(dir / "a")).code, 0);
  ASSERT_EQ(run("simulate --agent sp-simpvl --participants 2 --seed 5 --out-dir " + q(dir / "a")).code, 0);
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(dir / "a")) {
    ++files;
    EXPECT_NO_THROW(parse(slurp(e.path())));
  }
  EXPECT_EQ(files, 4u);

  ASSERT_EQ(run("analyze " + q(dir / "a") + " --no-timestamp --out " + q(dir / "r1.json")).code, 0);
  ASSERT_EQ(run("analyze " + q(dir / "a") + " --no-timestamp --out " + q(dir / "r2.json")).code, 0);
  EXPECT_EQ(slurp(dir / "r1.json"), slurp(dir / "r2.json"));
  EXPECT_TRUE(fs::exists(dir / "r1.trials.csv"));
  EXPECT_TRUE(fs::exists(dir / "r1.aggregates.csv"));
  const Json j = Json::parse(slurp(dir / "r1.json"));
  EXPECT_EQ(j.at("sessions"), 4);
  EXPECT_FALSE(j.contains("generated_at"));

  const CliResult rep = run("report " + q(dir / "r1.json") + " --plot " + q(dir / "svg"));
  ASSERT_EQ(rep.code, 0);
  EXPECT_NE(rep.out.find("IP"), std::string::npos);
  EXPECT_FALSE(fs::is_empty(dir / "svg"));
}

TEST_F(Cli, SimulateIsReproducible) {
  ASSERT_EQ(run("simulate --agent sp-pvl --participants 1 --seed 9 --out-dir " + q(dir / "x")).code, 0);
  ASSERT_EQ(run("simulate --agent sp-pvl --participants 1 --seed 9 --out-dir " + q(dir / "y")).code, 0);
  const auto name = fs::directory_iterator(dir / "x")->path().filename();
  EXPECT_EQ(slurp(dir / "x" / name), slurp(dir / "y" / name));
}

TEST_F(Cli, EdgeCases) {
  EXPECT_EQ(run("simulate --agent cp-fvf --participants 0 --out-dir " + q(dir / "z")).code, 0);
  EXPECT_EQ(run("simulate --agent nobody --participants 1 --out-dir " + q(dir / "z")).code, 1);
  EXPECT_EQ(run("analyze " + q(dir) + " --out " + q(dir / "r.json")).code, 1);
  std::ofstream(dir / "bad.session.json") << "{}";
  EXPECT_EQ(run("analyze " + q(dir) + " --strict --out " + q(dir / "r.json")).code, 1);
}
