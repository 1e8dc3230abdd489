#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include <unistd.h>

#include "json.hpp"
#include "support/process.hpp"

namespace {

using proc::cli;
using proc::quote;
using proc::run;

bool contains(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

TEST(CliCheck, FeasibleTrefoil) {
  const auto r = run(cli("check --gauss O1U2O3U1O2U3 --cuts F:0,3"));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, "feasible\ncuts: F:0,3 (2 dancers)\nwitness: U1 O1 U2 O2 U3 O3\n");
}

TEST(CliCheck, TwistedUnknot) {
  const auto r = run(cli("check --gauss O1U1 --cuts F:1"));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_TRUE(contains(r.out, "feasible"));
}

TEST(CliCheck, InfeasiblePrintsBlame) {
  const auto r = run(cli("check --gauss O1U2O3U1O2U3 --cuts F:0"));
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_TRUE(contains(r.out, "infeasible"));
  EXPECT_TRUE(contains(r.out, "blame cycle: "));
  EXPECT_TRUE(contains(r.out, " -> "));
}

TEST(CliCheck, InputErrors) {
  EXPECT_EQ(run(cli("check --gauss O1 --cuts F:0")).exit_code, 2);
  EXPECT_EQ(run(cli("check --gauss O1U1 --cuts F:7")).exit_code, 2);
  EXPECT_EQ(run(cli("check --gauss O1U1")).exit_code, 2);
  EXPECT_EQ(run(cli("check --gauss O1U1 --pd X --cuts F:0")).exit_code, 2);
  EXPECT_EQ(run(cli("frobnicate")).exit_code, 2);
  EXPECT_EQ(run(cli("")).exit_code, 2);
}

TEST(CliCheck, Json) {
  const auto r = run(cli("check --gauss O1U2O3U1O2U3 --cuts F:0,3 --format json"));
  ASSERT_EQ(r.exit_code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["feasible"], true);
  EXPECT_EQ(j["dancers"], 2);
}

TEST(CliMin, Examples) {
  auto r = run(cli("min --gauss O1U2O3U1O2U3"));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, "min_dancers: 2\nwitness: F:0,3\n");
  r = run(cli("min --pd " + quote("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)")));
  EXPECT_TRUE(contains(r.out, "min_dancers: 2"));
  r = run(cli("min --gauss ''"));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, "min_dancers: 1\nwitness: F:0\n");
  r = run(cli("min --braid " + quote("n=2; 1 1 1") + " --oracle --format json"));
  ASSERT_EQ(r.exit_code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["min_dancers"], 2);
  EXPECT_EQ(j["strategy"], "naive");
}

TEST(CliMin, OracleAgrees) {
  for (const char* g : {"O1U1", "O1U2O3U1O2U3", "O1U2O3O4U1O2U3U4", "U1O2U3O4O1U2O3U4"}) {
    const auto a = run(cli(std::string("min --gauss ") + g));
    const auto b = run(cli(std::string("min --oracle --gauss ") + g));
    EXPECT_EQ(a.exit_code, 0) << g;
    EXPECT_EQ(a.out, b.out) << g;
  }
}

TEST(CliSchedule, OneDancerPerStrand) {
  const auto r = run(cli("schedule --braid " + quote("n=2; 1 1 1") + " --theorem3"));
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_TRUE(contains(r.out, "A [gap 0]:"));
  EXPECT_TRUE(contains(r.out, "B [gap "));
  EXPECT_FALSE(contains(r.out, "C ["));
}

TEST(CliSchedule, TextTimeline) {
  const auto r = run(cli("schedule --gauss O1U2O3U1O2U3 --cuts F:0,3"));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, "A [gap 0]: |O1@1 U2@2 |O3@5\nB [gap 3]: U1@0 |O2@3 U3@4\n");
}

TEST(CliSchedule, SvgAndJson) {
  const auto svg = run(cli("schedule --braid " + quote("n=2; 1 1 1") + " --theorem3 --format svg"));
  EXPECT_EQ(svg.exit_code, 0);
  EXPECT_TRUE(contains(svg.out, "<svg"));
  EXPECT_EQ(run(cli("schedule --gauss O1U2O3U1O2U3 --cuts F:0,3 --format svg")).exit_code, 2);
  const auto j = run(cli("schedule --gauss O1U2O3U1O2U3 --cuts F:0,3 --format json"));
  ASSERT_EQ(j.exit_code, 0);
  EXPECT_EQ(nlohmann::json::parse(j.out)["wait_count"], 3);
}

TEST(CliSchedule, Errors) {
  EXPECT_EQ(run(cli("schedule --gauss O1U2O3U1O2U3 --cuts F:0")).exit_code, 1);
  EXPECT_EQ(run(cli("schedule --gauss O1U2O3U1O2U3 --theorem3")).exit_code, 2);
  EXPECT_EQ(run(cli("schedule --braid " + quote("n=2; 1 1") + " --theorem3")).exit_code, 1);
}

TEST(CliConvert, Examples) {
  auto r = run(cli("convert --braid " + quote("n=2; 1 1 1") + " --to gauss"));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, "U1O2U3O1U2O3\n");
  r = run(cli("convert --pd " + quote("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)") + " --to gauss"));
  EXPECT_EQ(r.out, "U1O2U3O1U2O3\n");
  r = run(cli("convert --braid " + quote("n=2;s1 S1 1") + " --to braid --format json"));
  EXPECT_EQ(nlohmann::json::parse(r.out)["value"], "n=2; 1 -1 1");
  EXPECT_EQ(run(cli("convert --braid " + quote("n=2; 1 1") + " --to gauss")).exit_code, 1);
  EXPECT_EQ(run(cli("convert --gauss O1U1 --to pd")).exit_code, 2);
}

class CliCensus : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() / ("dancekit_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::filesystem::path dir_;
};

TEST_F(CliCensus, BundledTablePasses) {
  const auto out = dir_ / "out";
  const auto r = run(cli("census --jobs 4 --out " + quote(out.string())));
  EXPECT_EQ(r.exit_code, 0) << r.out;
  EXPECT_TRUE(contains(r.out, "census: 36 records, 0 check failures"));
  EXPECT_TRUE(contains(r.out, "8_15: da in [2, 3]"));
  EXPECT_TRUE(std::filesystem::exists(out / "census_report.json"));
  EXPECT_TRUE(std::filesystem::exists(out / "census_report.csv"));
}

TEST_F(CliCensus, MissingFile) {
  EXPECT_EQ(run(cli("census --file " + quote((dir_ / "nope.csv").string()))).exit_code, 2);
}

TEST_F(CliCensus, StrictRejectsMalformedRow) {
  const auto path = dir_ / "bad.csv";
  std::ofstream(path) << "name,pd,braid,crossing_number,braid_index,bridge_index,alternating,nontrivial\n"
                         "3_1,,n=2; 1 1 1,3,2,2,true,true\n"
                         "oops,,n=2; 1 1 1,x,2,2,true,true\n";
  EXPECT_EQ(run(cli("census --strict --file " + quote(path.string()))).exit_code, 2);
  const auto lenient = run(cli("census --file " + quote(path.string())));
  EXPECT_EQ(lenient.exit_code, 0);
  EXPECT_TRUE(contains(lenient.out, "census: 1 records"));
}

TEST_F(CliCensus, EnvironmentOverride) {
  const auto path = dir_ / "one.csv";
  std::ofstream(path) << "name,pd,braid,crossing_number,braid_index,bridge_index,alternating,nontrivial\n"
                         "5_1,,n=2; 1 1 1 1 1,5,2,2,true,true\n";
  const auto r = run("DANCEKIT_CENSUS=" + quote(path.string()) + " " + cli("census --format json"));
  ASSERT_EQ(r.exit_code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["summary"]["records"], 1);
  EXPECT_EQ(j["knots"][0]["da_exact"], 2);
}

TEST_F(CliCensus, EmptyTable) {
  const auto path = dir_ / "empty.csv";
  std::ofstream(path) << "name,pd,braid,crossing_number,braid_index,bridge_index,alternating,nontrivial\n";
  const auto r = run(cli("census --file " + quote(path.string())));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_TRUE(contains(r.out, "census: 0 records"));
}

}  // namespace
