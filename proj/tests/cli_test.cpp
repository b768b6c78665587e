#include "anomod/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace anomod::cli {
namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

TEST(CliTest, VerifyPassingTargetExitsZero) {
  CliRun r = invoke({"verify", "agw"});
  EXPECT_EQ(r.code, kPass) << r.err;
  EXPECT_NE(r.out.find("[PASS] agw"), std::string::npos);
}

TEST(CliTest, VerifyWithExplicitRanks) {
  CliRun r = invoke({"verify", "gs", "--ranks", "m=32,n=0", "--xi", "trivial"});
  EXPECT_EQ(r.code, kPass) << r.err;
}

TEST(CliTest, HypothesisMismatchIsAnError) {
  CliRun r = invoke({"verify", "gs", "--ranks", "symbolic", "--xi", "generic"});
  EXPECT_EQ(r.code, kError);
  EXPECT_NE(r.err.find("error"), std::string::npos);
}

TEST(CliTest, UnknownSubcommandAndTargetAreErrors) {
  EXPECT_EQ(invoke({"frobnicate"}).code, kError);
  EXPECT_EQ(invoke({"verify", "nonsense"}).code, kError);
  EXPECT_EQ(invoke({}).code, kError);
  EXPECT_EQ(invoke({"verify", "agw", "--format", "yaml"}).code, kError);
}

TEST(CliTest, VerifyAllRejectsRankOverrides) {
  EXPECT_EQ(invoke({"verify", "all", "--ranks", "m=4,n=2"}).code, kError);
}

TEST(CliTest, JsonIsDeterministicWithoutTiming) {
  CliRun a = invoke({"verify", "remark", "--format", "json", "--no-timing"});
  CliRun b = invoke({"verify", "remark", "--format", "json", "--no-timing"});
  ASSERT_EQ(a.code, kPass) << a.err;
  EXPECT_EQ(a.out, b.out);
  auto doc = nlohmann::json::parse(a.out);
  EXPECT_EQ(doc["summary"]["failed"], 0);
  EXPECT_EQ(doc["reports"][0]["residual_terms"], 0);
  EXPECT_FALSE(doc["reports"][0].contains("elapsed_ms"));
}

TEST(CliTest, ExpandTheta2ShowsClosedForms) {
  CliRun r = invoke({"expand", "theta2", "--q-order", "6"});
  EXPECT_EQ(r.code, kPass) << r.err;
  EXPECT_NE(r.out.find("B1 = "), std::string::npos);
  EXPECT_NE(r.out.find("matches"), std::string::npos);
  EXPECT_NE(r.out.find("q^5/2:"), std::string::npos);
  EXPECT_EQ(r.out.find("q^6/2:"), std::string::npos);
}

TEST(CliTest, ExpandTheta1NeedsConcreteRanks) {
  EXPECT_EQ(invoke({"expand", "theta1"}).code, kError);
  EXPECT_EQ(invoke({"expand", "theta1", "--ranks", "m=4,n=2", "--q-order", "4"}).code, kPass);
}

TEST(CliTest, ExpandGenusJson) {
  CliRun r = invoke({"expand", "ahat", "--format", "json"});
  ASSERT_EQ(r.code, kPass) << r.err;
  auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["components"][1]["degree"], 4);
  EXPECT_EQ(doc["components"][1]["value"], "-1/24*p1T");
}

TEST(CliTest, DecomposeP2) {
  CliRun r = invoke({"decompose", "p2", "--q-order", "6", "--format", "json"});
  ASSERT_EQ(r.code, kPass) << r.err;
  auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["residual_terms"], 0);
}

TEST(CliTest, OutFileReceivesReport) {
  auto path = std::filesystem::temp_directory_path() / "anomod_cli_test_report.json";
  std::filesystem::remove(path);
  CliRun r = invoke({"verify", "agw", "--format", "json", "--out", path.string()});
  ASSERT_EQ(r.code, kPass) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  auto doc = nlohmann::json::parse(buf.str());
  EXPECT_EQ(doc["summary"]["total"], 1);
  std::filesystem::remove(path);
}

TEST(CliTest, NumericTransforms) {
  CliRun r = invoke({"numeric", "transforms", "--tau", "0,1"});
  EXPECT_EQ(r.code, kPass) << r.err;
  EXPECT_NE(r.out.find("E2.fixed-point"), std::string::npos);
}

TEST(CliTest, BadTauIsAnError) {
  EXPECT_EQ(invoke({"numeric", "transforms", "--tau", "0.1,-1"}).code, kError);
  EXPECT_EQ(invoke({"numeric", "transforms", "--tau", "abc"}).code, kError);
}

TEST(CliTest, TinyToleranceFailsHonestly) {
  CliRun r = invoke({"numeric", "transforms", "--e2-tol", "1e-30", "--tol", "1e-30"});
  EXPECT_EQ(r.code, kFail);
}

TEST(CliTest, NumericTheta4) {
  EXPECT_EQ(invoke({"numeric", "theta4"}).code, kPass);
}

TEST(CliTest, QOrderBelowMinimumIsAnError) {
  EXPECT_EQ(invoke({"expand", "theta2", "--q-order", "3"}).code, kError);
}

TEST(CliTest, SelfTestPasses) {
  CliRun r = invoke({"self-test", "--format", "json", "--no-timing"});
  EXPECT_EQ(r.code, kPass) << r.err;
  auto doc = nlohmann::json::parse(r.out);
  EXPECT_GE(doc["summary"]["total"].get<int>(), 8);
}

TEST(CliTest, HelpExitsZero) {
  CliRun r = invoke({"--help"});
  EXPECT_EQ(r.code, kPass);
  EXPECT_NE(r.out.find("verify"), std::string::npos);
}

}  // namespace
}  // namespace anomod::cli
