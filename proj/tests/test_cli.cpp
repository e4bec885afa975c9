#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

/// Runs the kmh binary with `args`, capturing stdout and stderr.
RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(KMH_CLI_PATH) + " " + args + " 2>&1";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  // One directory per test: ctest may run the discovered tests in parallel.
  std::filesystem::path tmp = std::filesystem::temp_directory_path() /
                              ("kmh_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
  void SetUp() override { std::filesystem::create_directories(tmp); }
  void TearDown() override { std::filesystem::remove_all(tmp); }
};

}  // namespace

TEST_F(CliTest, PresetListing) {
  auto r = run_cli("presets");
  EXPECT_EQ(r.code, 0);
  for (const char* name : {"sl3", "affine-sl2", "right-angled", "case7"}) EXPECT_NE(r.out.find(name), std::string::npos);
}

TEST_F(CliTest, DatumCheckReportsCommonKernel) {
  auto r = run_cli("datum-check --preset affine-sl2");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("(0,1,0)"), std::string::npos) << r.out;
}

TEST_F(CliTest, RegularReportForRegularCharacter) {
  auto json = tmp / "sl3.json", dot = tmp / "sl3.dot";
  auto r = run_cli("regular-report --preset sl3 --json " + json.string() + " --dot " + dot.string());
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(std::filesystem::exists(json));
  std::ifstream in(dot);
  std::string text((std::istreambuf_iterator<char>(in)), {});
  EXPECT_NE(text.find("graph"), std::string::npos);
}

TEST_F(CliTest, RegularReportRejectsNonRegularCharacter) {
  auto r = run_cli("regular-report --preset case5");
  EXPECT_EQ(r.code, 1) << r.out;
}

TEST_F(CliTest, UcReport) {
  auto r = run_cli("uc-report --preset case7");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(run_cli("uc-report --preset sl3").code, 1);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run_cli("").code, 2);
  EXPECT_EQ(run_cli("no-such-command").code, 2);
  EXPECT_EQ(run_cli("accept --only bogus").code, 2);
  EXPECT_EQ(run_cli("datum-check --preset no-such-preset").code, 2);
}

TEST_F(CliTest, DatumFiles) {
  const std::string good = R"({"A": [[2, -1], [-1, 2]], "rankY": 2, "pairing": [[2, -1], [-1, 2]],
                               "coroots": [[1, 0], [0, 1]], "sigma": {"s1": "2", "s2": "2"}})";
  // Same datum with α2(α1∨) = −2 while a12 = −1.
  const std::string bad = R"({"A": [[2, -1], [-1, 2]], "rankY": 2, "pairing": [[2, -1], [-2, 2]],
                              "coroots": [[1, 0], [0, 1]], "sigma": {"s1": "2", "s2": "2"}})";
  std::ofstream(tmp / "good.json") << good;
  std::ofstream(tmp / "bad.json") << bad;
  std::ofstream(tmp / "broken.json") << "{ not json";
  EXPECT_EQ(run_cli("datum-check --datum " + (tmp / "good.json").string()).code, 0);
  auto r = run_cli("datum-check --datum " + (tmp / "bad.json").string());
  EXPECT_EQ(r.code, 1) << r.out;
  EXPECT_NE(r.out.find("a_12 = -1"), std::string::npos) << r.out;
  EXPECT_EQ(run_cli("datum-check --datum " + (tmp / "broken.json").string()).code, 2);
  EXPECT_EQ(run_cli("datum-check --datum " + (tmp / "missing.json").string()).code, 2);
}

TEST_F(CliTest, AcceptSingleCriterion) {
  auto r = run_cli("accept --only dihedral");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
}
