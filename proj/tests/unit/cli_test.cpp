#include "qtensor/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

namespace qtensor {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qtensor_cli_" +
            std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  int run(const std::vector<std::string>& args) {
    out_.str("");
    err_.str("");
    return run_cli(args, out_, err_);
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

constexpr const char* kEx32 = "tensor 3 2\n1 2 2 1\n2 2 2 1\n2 1 2 -1\n";
constexpr const char* kEx31 = "tensor 4 2\n1 1 2 2 1\n2 2 2 2 1\n2 1 1 2 -1\n";

TEST_F(CliTest, SolveFindsCaseTwoSolution) {
  const std::string f = write("c2.txt", std::string(kEx32) + "q -4 1\n");
  EXPECT_EQ(run({"solve", f}), kExitOk) << err_.str();
  EXPECT_NE(out_.str().find("SOLVED"), std::string::npos);
  EXPECT_NE(out_.str().find("(2.5,2)"), std::string::npos) << out_.str();
}

TEST_F(CliTest, SolveZeroTensorExitCodes) {
  const std::string ok = write("ok.txt", "tensor 3 2\nq 1 1\n");
  EXPECT_EQ(run({"solve", ok}), kExitOk);
  EXPECT_NE(out_.str().find("(0,0)"), std::string::npos);

  const std::string none = write("none.txt", "tensor 3 2\nq -1 0\n");
  EXPECT_EQ(run({"solve", none}), kExitCertifiedNoSolution);
  EXPECT_NE(out_.str().find("NO-SOLUTION-CERTIFIED"), std::string::npos);
}

TEST_F(CliTest, SolveParseErrorNamesLine) {
  const std::string bad = write("bad.txt", "tensor 3 2\n1 1 5 1\nq 1 1\n");
  EXPECT_EQ(run({"solve", bad}), kExitInputError);
  EXPECT_NE(err_.str().find(":2:"), std::string::npos) << err_.str();
}

TEST_F(CliTest, SolveMachineOutputIsReproducible) {
  const std::string f = write("c5.txt", std::string(kEx32) + "q -4 -1\n");
  run({"solve", f, "--machine", "--seed", "9"});
  const std::string first = out_.str();
  run({"solve", f, "--machine", "--seed", "9"});
  EXPECT_EQ(out_.str(), first);
  EXPECT_EQ(first.rfind("status=SOLVED", 0), 0u) << first;
}

TEST_F(CliTest, ClassifyExampleVerdicts) {
  const std::string f = write("ex31.tensor", kEx31);
  EXPECT_EQ(run({"classify", f, "--classes", "R0,Q,P0,copositive"}), kExitOk)
      << err_.str();
  const std::string s = out_.str();
  EXPECT_NE(s.find("R0 FALSIFIED x=(1,0)"), std::string::npos) << s;
  EXPECT_NE(s.find("Q UNFALSIFIED"), std::string::npos) << s;
  EXPECT_NE(s.find("P0 UNFALSIFIED"), std::string::npos) << s;
  EXPECT_NE(s.find("copositive UNFALSIFIED"), std::string::npos) << s;
}

TEST_F(CliTest, ClassifyCertifiedAndPairWitness) {
  const std::string f41 = write("ex41.tensor", "tensor 3 2\n1 1 1 1\n2 2 2 1\n");
  EXPECT_EQ(run({"classify", f41, "--classes", "nonnegative,Q"}), kExitOk);
  EXPECT_NE(out_.str().find("nonnegative CERTIFIED"), std::string::npos);
  EXPECT_NE(out_.str().find("Q CERTIFIED"), std::string::npos);

  const std::string f34 = write("ex34.tensor", "tensor 4 2\n1 1 2 2 1\n2 1 2 2 1\n");
  EXPECT_EQ(run({"classify", f34, "--classes", "SP0"}), kExitOk);
  EXPECT_NE(out_.str().find("SP0 FALSIFIED x="), std::string::npos);
  EXPECT_NE(out_.str().find(" y="), std::string::npos);
}

TEST_F(CliTest, ClassifyRejectsUnknownClass) {
  const std::string f = write("t.tensor", kEx31);
  EXPECT_EQ(run({"classify", f, "--classes", "Z9"}), kExitInputError);
  EXPECT_NE(err_.str().find("Z9"), std::string::npos);
}

TEST_F(CliTest, InfoShowsComponents) {
  const std::string f = write("ex33.tensor", "tensor 3 3\n1 2 2 1\n");
  EXPECT_EQ(run({"info", f}), kExitOk);
  const std::string s = out_.str();
  EXPECT_NE(s.find("component 1: x2^2"), std::string::npos) << s;
  EXPECT_NE(s.find("component 2: 0"), std::string::npos) << s;
  EXPECT_NE(s.find("component 3: 0"), std::string::npos) << s;
  EXPECT_NE(s.find("nonnegative yes"), std::string::npos) << s;
}

TEST_F(CliTest, HarnessSuitesAndErrors) {
  EXPECT_EQ(run({"harness", "theorem41", "--trials", "20", "--seed", "42"}), kExitOk)
      << out_.str();
  EXPECT_EQ(run({"harness", "section5"}), kExitOk) << out_.str();
  EXPECT_EQ(run({"harness", "theorem31"}), kExitOk) << out_.str();
  EXPECT_EQ(run({"harness", "theorem32"}), kExitOk) << out_.str();
  EXPECT_EQ(run({"harness", "nosuch"}), kExitInputError);
  EXPECT_NE(err_.str().find("nosuch"), std::string::npos);
}

TEST_F(CliTest, CorpusVerifyAndExport) {
  const std::string out_dir = (dir_ / "export").string();
  EXPECT_EQ(run({"corpus-verify", "--export", out_dir, "--machine"}), kExitOk);
  EXPECT_NE(out_.str().find("failed=0 disputed=1"), std::string::npos) << out_.str();
  EXPECT_TRUE(fs::exists(fs::path(out_dir) / "expected.tsv"));
  EXPECT_TRUE(fs::exists(fs::path(out_dir) / "example-4.2.tensor"));
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}), kExitInputError);
  EXPECT_EQ(run({"frobnicate"}), kExitInputError);
  const std::string f = write("t.tensor", kEx31);
  EXPECT_EQ(run({"classify", f, "--bogus"}), kExitInputError);
  EXPECT_EQ(run({"solve", f, "--samples", "0"}), kExitInputError);
  EXPECT_EQ(run({"--help"}), kExitOk);
  EXPECT_NE(out_.str().find("classify"), std::string::npos);
}

}  // namespace
}  // namespace qtensor
