#include "support.hpp"

#include "lbl/cli.hpp"

#include <gtest/gtest.h>

using lbl::testing::fixture_path;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args, const std::string &input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = lbl::cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

} // namespace

TEST(Cli, Distance) {
  auto r = run({"distance", fixture_path("tripod.json"), "--from", "chart_12:5", "--to",
                "chart_12:-4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "9\n");
  r = run({"distance", fixture_path("tripod.json"), "--from", "chart_12:5", "--to",
           "chart_13:-3", "--scale", "3/2"});
  EXPECT_EQ(r.out, "12\n");
}

TEST(Cli, DistanceUndefinedExitsOne) {
  auto r = run({"distance", fixture_path("two_apartments_A2.json"), "--from", "A:1,0",
                "--to", "B:1,1"});
  EXPECT_EQ(r.code, 1);
}

TEST(Cli, ReadsStdin) {
  std::string text = lbl::testing::read_file(fixture_path("tripod.json"));
  auto r = run({"distance", "-", "--from", "chart_12:5", "--to", "chart_13:-3"}, text);
  EXPECT_EQ(r.out, "8\n");
}

TEST(Cli, Retract) {
  auto r = run({"retract", fixture_path("tripod.json"), "--center", "chart_12:0", "--point",
                "chart_13:-4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "(-4)\n");
}

TEST(Cli, Residue) {
  auto r = run({"residue", fixture_path("tripod.json"), "--point", "chart_12:0", "--format",
                "json"});
  ASSERT_EQ(r.code, 0);
  auto j = lbl::json::parse(r.out);
  EXPECT_EQ(j["chambers"].size(), 3u);
  EXPECT_EQ(j["pairs_without_apartment"], 0);
}

TEST(Cli, CheckAllExitCodes) {
  EXPECT_EQ(run({"check-all", fixture_path("tripod.json"), "--probes", "500"}).code, 0);
  auto r = run({"check-all", fixture_path("glued_triangle.json"), "--probes", "500"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("TI         FAIL"), std::string::npos) << r.out;
}

TEST(Cli, CheckOneCondition) {
  auto r = run({"check", fixture_path("glued_triangle.json"), "--condition", "TI", "--format",
                "json"});
  EXPECT_EQ(r.code, 1);
  auto j = lbl::json::parse(r.out);
  EXPECT_EQ(j["conditions"][0]["verdict"], "FAIL");
  EXPECT_EQ(run({"check", fixture_path("tripod.json"), "--condition", "ZZ"}).code, 2);
}

TEST(Cli, JsonIsDeterministic) {
  std::vector<std::string> args{"check-all", fixture_path("two_apartments_A2.json"),
                                "--format", "json", "--seed", "5", "--probes", "300"};
  EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Cli, CounterexampleRoundTrips) {
  auto r = run({"counterexample", "--type", "A1", "--sides", "10", "2", "2"});
  ASSERT_EQ(r.code, 0);
  auto s = lbl::io::parse_atlas(r.out);
  EXPECT_EQ(s.chart_count(), 3u);
  EXPECT_EQ(run({"counterexample", "--sides", "4", "2", "2"}).code, 2);
}

TEST(Cli, Admissible) {
  auto r = run({"admissible", fixture_path("glued_triangle.json"), "--lambda", "10"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("T2 PASS"), std::string::npos);
  EXPECT_EQ(run({"admissible", fixture_path("tripod.json")}).code, 2);
}

TEST(Cli, Extend) {
  auto r = run({"extend", fixture_path("two_apartments_A2.json"), "--rounds", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto s = lbl::io::parse_atlas(r.out);
  EXPECT_EQ(s.lambda_level, 1u);
  EXPECT_GT(s.chart_count(), 2u);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"distance", fixture_path("tripod.json")}).code, 2);
  EXPECT_EQ(run({"distance", "/nonexistent.json", "--from", "a:1", "--to", "a:2"}).code, 2);
  auto r = run({"distance", fixture_path("tripod.json"), "--from", "nope:1", "--to",
                "chart_12:0"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("unknown chart"), std::string::npos);
  EXPECT_EQ(run({"--help"}).code, 0);
}
