#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "ohno/cli.hpp"

using namespace ohno;
using cli::RunConfig;

namespace {

struct Outcome {
  int status;
  std::string out;
  std::string err;
};

Outcome run_args(std::vector<const char*> args) {
  args.insert(args.begin(), "ohno_cli");
  RunConfig cfg;
  std::ostringstream out, err;
  if (auto stop = cli::parse(static_cast<int>(args.size()), args.data(), cfg, out, err)) return {*stop, out.str(), err.str()};
  const int status = cli::run(cfg, out, err);
  return {status, out.str(), err.str()};
}

}  // namespace

TEST(Cli, EvalJson) {
  const Outcome o = run_args({"eval", "--index", "1,2", "--s", "0.5", "--method", "auto"});
  ASSERT_EQ(o.status, 0) << o.err;
  const auto j = json::parse(o.out);
  EXPECT_NEAR(j["result"]["value"]["re"].get<double>(), 1.1267338673170566464, 1e-9);
  EXPECT_EQ(j["result"]["method"], "series");
  EXPECT_EQ(j["config"]["max_terms"], SeriesOptions{}.max_terms);
}

TEST(Cli, DualAndRegion) {
  Outcome o = run_args({"dual", "--index", "2,3", "--format", "text"});
  EXPECT_EQ(o.status, 0);
  EXPECT_EQ(o.out, "1,2,2\n");
  o = run_args({"region", "--index", "2,3"});
  ASSERT_EQ(o.status, 0);
  const auto j = json::parse(o.out);
  EXPECT_EQ(j["region"]["abscissa"].get<double>(), -3.0);
  EXPECT_EQ(j["region"]["slack"].size(), 2u);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_args({"frobnicate"}).status, 1);
  EXPECT_EQ(run_args({"eval", "--index", "2,1", "--s", "0.5"}).status, 1);
  EXPECT_EQ(run_args({"eval", "--index", "2,x"}).status, 1);
  EXPECT_EQ(run_args({"eval", "--index", "2,3", "--s", "1+"}).status, 1);
  EXPECT_EQ(run_args({"suite", "nope"}).status, 1);
  EXPECT_EQ(run_args({"eval", "--index", "2,3", "--format", "xml"}).status, 1);
  EXPECT_EQ(run_args({"eval", "--index", "2,3", "--method", "magic"}).status, 1);
  EXPECT_EQ(run_args({"verify", "--relation", "zero", "--index", "2,3"}).status, 1);
  EXPECT_EQ(run_args({"lemma-check", "--t", "0.5,0.2"}).status, 1);
  EXPECT_EQ(run_args({"eval", "--no-such-flag"}).status, 1);
  const Outcome o = run_args({"eval", "--index", "2,1"});
  EXPECT_NE(o.err.find("admissible"), std::string::npos) << o.err;
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(run_args({"--help"}).status, 0); }

TEST(Cli, DomainErrorExitsTwo) {
  const Outcome o = run_args({"eval", "--index", "2,3", "--s", "-5"});
  EXPECT_EQ(o.status, 2);
  EXPECT_NE(o.err.find("Re(s)"), std::string::npos) << o.err;
}

TEST(Cli, VerificationFailureExitsThree) {
  // I_(2,3)(-2) is -zeta(3), so the forced-zero check fails
  const Outcome z = run_args({"verify", "--relation", "zero", "--index", "2,3", "--n", "-2"});
  EXPECT_EQ(z.status, 3);
}

TEST(Cli, SuiteOutputIsByteStable) {
  const Outcome a = run_args({"suite", "sum-formula"});
  const Outcome b = run_args({"suite", "sum-formula"});
  ASSERT_EQ(a.status, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto j = json::parse(a.out);
  EXPECT_EQ(j["summary"]["total"], 36);
  EXPECT_EQ(j["summary"]["failed"], 0);
}

TEST(Cli, CsvAndTextFormats) {
  const Outcome csv = run_args({"suite", "linear", "--format", "csv"});
  EXPECT_EQ(csv.status, 0);
  EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')), kReportCsvHeader);
  const Outcome text = run_args({"suite", "linear", "--format", "text"});
  EXPECT_NE(text.out.find("summary: total 4, passed 4, failed 0"), std::string::npos) << text.out;
}

TEST(Cli, EnvironmentOverridesDefaultsAndFlagsWin) {
  ::setenv("OHNO_MAX_TERMS", "123456", 1);
  Outcome o = run_args({"region", "--index", "2,3"});
  EXPECT_EQ(json::parse(o.out)["config"]["max_terms"], 123456);
  o = run_args({"region", "--index", "2,3", "--max-terms", "7777"});
  EXPECT_EQ(json::parse(o.out)["config"]["max_terms"], 7777);
  ::setenv("OHNO_MAX_TERMS", "lots", 1);
  EXPECT_EQ(run_args({"region", "--index", "2,3"}).status, 1);
  ::unsetenv("OHNO_MAX_TERMS");
}

TEST(Cli, ExpIntegralCheck) {
  Outcome o = run_args({"lemma-check", "--c", "0.5,1.5", "--s", "0.3+0.2i"});
  EXPECT_EQ(o.status, 0) << o.err;
  o = run_args({"lemma-check", "--t", "0.1,0.4,0.5,0.8"});
  EXPECT_EQ(o.status, 0) << o.err;
  EXPECT_EQ(json::parse(o.out)["reports"].size(), 3u);
}

TEST(Cli, WritesOutFile) {
  const std::string path = ::testing::TempDir() + "ohno_cli_out.json";
  const Outcome o = run_args({"dual", "--index", "2,3", "--out", path.c_str()});
  EXPECT_EQ(o.status, 0);
  EXPECT_TRUE(o.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(json::parse(ss.str())["dual"], "1,2,2");
}
