#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "vos/cli.hpp"

using namespace vos;
using vos::cli::run;
using vos::cli::Status;

namespace {

cli::CommandResult json_run(std::vector<std::string> args) {
  args.insert(args.begin(), "--format=json");
  return run(args);
}

std::string temp_config(const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / ("vos_cli_test_" + std::to_string(std::rand()) + ".conf");
  std::ofstream(path) << body;
  return path.string();
}

}  // namespace

TEST(Cli, Examples) {
  EXPECT_EQ(run({"count", "64"}).output, "512\n");
  const auto check = run({"check", "101011100011"});
  EXPECT_EQ(check.status, Status::ok);
  EXPECT_EQ(check.output, "very_odd=true A=(7,3,3,1,3,3,3,1,1,1,1,1)\n");
  EXPECT_EQ(run({"tableau", "value", "(2/3 2/15 8/5)"}).output, "601\n");
  EXPECT_EQ(run({"tableau", "value", "2/3", "2/15", "8/5"}).output, "601\n");
}

TEST(Cli, JsonPayloads) {
  const auto c = json_run({"check", "101011100011"});
  EXPECT_EQ(c.payload["very_odd"], true);
  EXPECT_EQ(c.payload["A"], cli::json::parse("[7,3,3,1,3,3,3,1,1,1,1,1]"));
  EXPECT_EQ(cli::json::parse(c.output), c.payload);

  EXPECT_EQ(json_run({"i2", "161"}).payload["value"], 9);
  EXPECT_EQ(json_run({"i2", "5", "--q", "4"}).payload["value"], 3);
  EXPECT_EQ(json_run({"stufe", "7"}).payload["level"], 4);
  EXPECT_EQ(json_run({"rank", "--q", "2", "--d", "5"}).payload["rank"], 2);
  EXPECT_EQ(json_run({"prime", "3511"}).payload["in_Pm_prime"], false);
  EXPECT_EQ(json_run({"pm", "2", "--x", "100"}).payload["primes"], cli::json::parse("[7,23,47,71,79]"));
  EXPECT_EQ(json_run({"wieferich", "--x", "4000"}).payload["primes"], cli::json::parse("[1093,3511]"));
  EXPECT_EQ(json_run({"tableau", "of", "161"}).payload["tableau"], "(2/1 2/1)");
  EXPECT_EQ(json_run({"tableau", "realize", "(2/1 2/1)", "--bound", "100"}).payload["realizations"][0]["primes"], cli::json::parse("[7,23]"));
  EXPECT_EQ(json_run({"density", "pm", "2"}).payload["density"], cli::json::parse("0.186977907"));
  EXPECT_EQ(json_run({"density", "artin"}).payload["A"], cli::json::parse("0.373955814"));
  EXPECT_EQ(json_run({"density", "thm3", "--e", "1", "--a", "1", "--f", "3"}).payload["density"],
            cli::json::parse("0.074791163"));
  const auto census = json_run({"census", "--x", "64", "--values", "2,4"});
  EXPECT_EQ(census.payload["counts"]["N"], 12);
  EXPECT_EQ(census.payload["counts"]["St4"], 11);
  const auto code = json_run({"code", "12", "--min-distance"});
  EXPECT_EQ(code.payload["min_distance"], 8);
  EXPECT_EQ(code.payload["weight_enumerator"]["8"], 759);
  const auto ds = json_run({"ds-verify", "--n", "7", "--set", "1,2,4"});
  EXPECT_EQ(ds.payload["lambda"], 1);
  EXPECT_EQ(ds.payload["sequence"], "1101");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"count", "64"}).exit_code(), 0);
  EXPECT_EQ(run({"bogus"}).exit_code(), 2);
  EXPECT_EQ(run({}).exit_code(), 2);
  EXPECT_EQ(run({"count", "0"}).exit_code(), 2);
  EXPECT_EQ(run({"check", "10a"}).exit_code(), 2);
  EXPECT_EQ(run({"i2", "10"}).exit_code(), 2);
  EXPECT_EQ(run({"--format=xml", "count", "4"}).exit_code(), 2);
  EXPECT_EQ(run({"enumerate", "64", "--cap", "10"}).exit_code(), 3);
  EXPECT_EQ(run({"tableau", "realize", "(2/5 38/5)", "--bound", "1000"}).exit_code(), 3);
  EXPECT_EQ(run({"pm", "2"}).exit_code(), 2);
  const auto ds = json_run({"ds-verify", "--n", "5", "--set", "0,1"});
  EXPECT_EQ(ds.exit_code(), 2);
  EXPECT_EQ(ds.payload["residue"], 2);
  EXPECT_EQ(ds.payload["status"], "domain_error");
  EXPECT_EQ(run({"--help"}).exit_code(), 0);
}

TEST(Cli, EnumerateRoundTripsThroughCheck) {
  for (u64 n = 1; n <= 22; ++n) {
    const auto e = json_run({"enumerate", std::to_string(n)});
    ASSERT_EQ(e.status, Status::ok);
    ASSERT_EQ(e.payload["count"], e.payload["sequences"].size());
    for (const auto& s : e.payload["sequences"])
      ASSERT_EQ(json_run({"check", s.get<std::string>()}).payload["very_odd"], true) << s;
  }
}

TEST(Cli, Deterministic) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"enumerate", "37"}, {"code", "40"}, {"census", "--x", "5000", "--values", "2,4,8"}, {"tableau", "enumerate", "601"}}) {
    EXPECT_EQ(json_run(args).output, json_run(args).output);
  }
}

TEST(Cli, CsvAndText) {
  EXPECT_EQ(run({"--format=csv", "enumerate", "4"}).output, "sequence\n1101\n1011\n");
  const auto pm = run({"--format=csv", "pm", "2", "--x", "50"}).output;
  EXPECT_EQ(pm, "p\n7\n23\n47\n");
  EXPECT_FALSE(run({"--format=csv", "census", "--x", "100"}).output.empty());
  EXPECT_EQ(run({"enumerate", "2"}).output, "");
}

TEST(Cli, ConfigFileSuppliesDefaults) {
  const auto path = temp_config("# bounds\nx = 100\ncap=10\n");
  EXPECT_EQ(json_run({"--config", path, "pm", "2"}).payload["primes"], cli::json::parse("[7,23,47,71,79]"));
  EXPECT_EQ(json_run({"--config", path, "pm", "2", "--x", "30"}).payload["primes"], cli::json::parse("[7,23]"));
  EXPECT_EQ(run({"--config", path, "enumerate", "64"}).exit_code(), 3);
  std::filesystem::remove(path);
  const auto bad = temp_config("colour=blue\n");
  EXPECT_EQ(run({"--config", bad, "count", "4"}).exit_code(), 2);
  std::filesystem::remove(bad);
  EXPECT_EQ(run({"--config", "/nonexistent/vos.conf", "count", "4"}).exit_code(), 2);
}
