#include "cli.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "pstar/io.hpp"

namespace pstar::cli {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "pstar");
  std::ostringstream out, err;
  const int code = dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(PSTAR_DATA_DIR) + "/" + name; }

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("pstar_cli_test_" + name)).string();
}

TEST(Cli, StatsOnFixtureFile) {
  const Outcome r = run({"stats", data("florentine.adj")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "{\"edges\":20,\"two_stars\":47,\"triangles\":3}\n");
  EXPECT_EQ(run({"stats", "florentine"}).out, r.out);
}

TEST(Cli, StatsOnEdgeList) {
  const std::string path = temp_path("path.edges");
  io::write_file(path, "0 1\n1 2\n");
  const Outcome r = run({"stats", path, "--format", "edges", "--n", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "{\"edges\":2,\"two_stars\":1,\"triangles\":0}\n");
  std::filesystem::remove(path);
}

TEST(Cli, PhaseHighAndLow) {
  const Outcome high = run({"phase", "--theta", "-1.6", "--theta2", "-0.011111", "--theta3", "0.111111", "--n", "18"});
  EXPECT_EQ(high.code, 0);
  EXPECT_EQ(high.out.rfind("HIGH, p*≈0.1666", 0), 0u) << high.out;

  const Outcome low = run({"phase", "--theta1", "-0.1", "--theta2", "-0.23", "--theta3", "0.97", "--n", "18"});
  EXPECT_EQ(low.code, 0);
  EXPECT_EQ(low.out.rfind("LOW", 0), 0u) << low.out;

  const Outcome json = run({"phase", "--theta1", "-0.1", "--theta2", "-0.23", "--theta3", "0.97", "--n", "18", "--json"});
  EXPECT_EQ(nlohmann::json::parse(json.out)["fixed_points"].size(), 3u);

  const Outcome ham = run({"phase", "--hamiltonian", "--theta1", "1.6", "--theta2", "0.011111", "--theta3", "0.111111",
                       "--n", "18"});
  EXPECT_EQ(ham.out, high.out);
}

TEST(Cli, StrictExitsTwoOutsideHighPhase) {
  EXPECT_EQ(run({"--strict", "phase", "--theta1", "-0.1", "--theta2", "-0.23", "--theta3", "0.97", "--n", "18"}).code,
            2);
  EXPECT_EQ(run({"--strict", "phase", "--theta1", "-1.6", "--n", "18"}).code, 0);
}

TEST(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"stats", temp_path("does_not_exist")}).code, 1);
  const std::string bad = temp_path("bad.adj");
  io::write_file(bad, "0 1\n0 0\n");
  const Outcome r = run({"stats", bad});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("error"), std::string::npos);
  std::filesystem::remove(bad);
  EXPECT_EQ(run({"estimate", "--method", "bogus", "--graph", "florentine"}).code, 1);
  EXPECT_EQ(run({"oracle", "moments", "--n", "9"}).code, 1);
}

TEST(Cli, EstimateMeanFieldFlorentine) {
  const Outcome r = run({"estimate", "--method", "mf", "--graph", data("florentine.adj"), "--iters", "100000", "--gamma",
                     "1e-4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["method"], "MF_MLLE");
  EXPECT_NEAR(j["theta_star"][0].get<double>(), -1.5553, 0.05);
  EXPECT_NEAR(j["theta_star"][1].get<double>(), -0.0293, 0.05);
  EXPECT_NEAR(j["theta_star"][2].get<double>(), 0.2106, 0.05);
  EXPECT_EQ(j["phase"]["phase"], "HIGH");
}

TEST(Cli, EstimateWritesTraceAndResultFiles) {
  const std::string trace = temp_path("trace.csv"), out = temp_path("result.json");
  const Outcome r = run({"estimate", "--method", "mple", "--graph", "florentine", "--iters", "50", "--gamma", "1e-3",
                     "--trace", trace, "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string csv = io::read_file(trace);
  EXPECT_EQ(csv.rfind("iter,theta1", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 51);
  EXPECT_EQ(nlohmann::json::parse(io::read_file(out))["iterations"], 50);
  std::filesystem::remove(trace);
  std::filesystem::remove(out);
}

TEST(Cli, EstimateFromMomentsAndSamples) {
  const Outcome m = run({"estimate", "--method", "exact", "--moments", "1.5,0.9,0.2", "--n", "3", "--iters", "200000",
                     "--gamma", "0.2", "--grad-tol", "1e-10"});
  ASSERT_EQ(m.code, 0) << m.err;
  EXPECT_NEAR(nlohmann::json::parse(m.out)["theta_star"][0].get<double>(), -std::log(2.0), 1e-7);

  const std::string samples = temp_path("samples.jsonl");
  ASSERT_EQ(run({"sample", "--theta1", "-1.6", "--theta2", "-0.02", "--theta3", "0.2", "--n", "10", "--num", "50",
                 "--out", samples})
                .code,
            0);
  const Outcome s = run({"estimate", "--method", "mf", "--samples", samples, "--iters", "100", "--gamma", "1e-2"});
  EXPECT_EQ(s.code, 0) << s.err;
  EXPECT_EQ(nlohmann::json::parse(s.out)["iterations"], 100);
  std::filesystem::remove(samples);
}

TEST(Cli, IdenticalArgumentsGiveIdenticalResults) {
  const std::vector<std::string> args{"--seed", "11", "sample", "--theta1", "-1.6", "--n", "8", "--num", "20"};
  const Outcome a = run(args), b = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);

  const std::vector<std::string> est{"estimate", "--method", "mple", "--graph", "florentine", "--iters", "300"};
  auto strip = [](std::string s) {
    auto j = nlohmann::json::parse(s);
    j.erase("total_time_ms");
    return j.dump();
  };
  EXPECT_EQ(strip(run(est).out), strip(run(est).out));
}

TEST(Cli, SeedFromEnvironmentAndFlagPrecedence) {
  const std::vector<std::string> tail{"sample", "--theta1", "-1", "--n", "6", "--num", "10"};
  auto with_seed = [&](const std::string& s) {
    std::vector<std::string> a{"--seed", s};
    a.insert(a.end(), tail.begin(), tail.end());
    return run(a).out;
  };
  ::setenv("PSTAR_SEED", "77", 1);
  const std::string from_env = run(tail).out;
  std::vector<std::string> explicit_args{"--seed", "5"};
  explicit_args.insert(explicit_args.end(), tail.begin(), tail.end());
  const std::string flag_wins = run(explicit_args).out;
  ::unsetenv("PSTAR_SEED");
  EXPECT_EQ(from_env, with_seed("77"));
  EXPECT_EQ(flag_wins, with_seed("5"));
  EXPECT_NE(from_env, flag_wins);
}

TEST(Cli, RunLogRecordsCommand) {
  const std::string log = temp_path("runs.jsonl");
  std::filesystem::remove(log);
  ASSERT_EQ(run({"--log", log, "--seed", "4", "stats", "florentine"}).code, 0);
  const auto j = nlohmann::json::parse(io::read_file(log));
  EXPECT_EQ(j["seed"], 4);
  EXPECT_NE(j["command"].get<std::string>().find("stats florentine"), std::string::npos);
  std::filesystem::remove(log);
}

TEST(Cli, OracleSubcommands) {
  const Outcome m = run({"oracle", "moments", "--n", "3"});
  ASSERT_EQ(m.code, 0) << m.err;
  const Outcome p = run({"oracle", "partition", "--n", "3"});
  ASSERT_EQ(p.code, 0) << p.err;
  const Outcome d = run({"oracle", "distribution", "--n", "2", "--theta1", "0"});
  ASSERT_EQ(d.code, 0) << d.err;
  EXPECT_FALSE(m.out.empty());
  EXPECT_FALSE(p.out.empty());
  EXPECT_FALSE(d.out.empty());
}

TEST(Cli, ReproduceFlorentine) {
  const Outcome r = run({"reproduce", "florentine"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("-1.55"), std::string::npos);
  EXPECT_NE(r.out.find("-1.62"), std::string::npos);
}

}  // namespace
}  // namespace pstar::cli
