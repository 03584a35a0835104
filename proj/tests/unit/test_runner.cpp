#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <json.hpp>

#include "curvcompat/runner.hpp"

namespace cli = curvcompat::cli;
using json = nlohmann::json;

TEST(RunnerConfig, ParsesFullDocument) {
  const auto cfg = cli::parse_config(R"({
    "seed": 7, "trials": 3, "suites": ["algebra-core", "lovelock"],
    "fixtures": [{"id": "sphere", "params": {"n": 2, "r": 2.0}, "probes": [[0.5, 0.1]]},
                 {"id": "robertson_walker", "params": {"a": "exp"}}],
    "tolerances": {"rel_geometry": 1e-6, "strict_algebra": 1e-11}
  })");
  EXPECT_EQ(cfg.seed, 7u);
  EXPECT_EQ(cfg.trials, 3);
  ASSERT_EQ(cfg.fixtures.size(), 2u);
  EXPECT_EQ(std::get<double>(cfg.fixtures[0].params.at("r")), 2.0);
  ASSERT_TRUE(cfg.fixtures[0].probes.has_value());
  EXPECT_EQ(std::get<std::string>(cfg.fixtures[1].params.at("a")), "exp");
  EXPECT_EQ(cfg.tol.base.rel_geometry, 1e-6);
  EXPECT_EQ(cfg.tol.base.rel_algebra, 1e-10);
  EXPECT_EQ(cfg.tol.strict_algebra, 1e-11);
}

TEST(RunnerConfig, Errors) {
  EXPECT_THROW(cli::parse_config("{"), cli::ConfigError);
  EXPECT_THROW(cli::parse_config("[]"), cli::ConfigError);
  EXPECT_THROW(cli::parse_config(R"({"fixtures": []})"), cli::ConfigError);
  EXPECT_THROW(cli::parse_config(R"({"suites": [], "extra": 1})"), cli::ConfigError);
  EXPECT_THROW(cli::parse_config(R"({"suites": [], "trials": 0})"), cli::ConfigError);
  EXPECT_THROW(cli::parse_config(R"({"suites": [], "seed": -1})"), cli::ConfigError);
  EXPECT_THROW(cli::parse_config(R"({"suites": [], "tolerances": {"rel_algebra": -1}})"),
               cli::ConfigError);
  EXPECT_THROW(cli::parse_config(R"({"suites": [], "fixtures": [{"params": {}}]})"), cli::ConfigError);
  EXPECT_THROW(cli::parse_config(R"({"suites": [], "fixtures": [{"id": "sphere", "params": {"n": [2]}}]})"),
               cli::ConfigError);
  EXPECT_THROW(cli::load_config("/nonexistent/config.json"), cli::ConfigError);
}

TEST(RunnerConfig, UnknownSuiteMessageNamesTheId) {
  try {
    cli::parse_config(R"({"suites": ["algebra-core", "bogus-suite"]})");
    FAIL() << "expected ConfigError";
  } catch (const cli::ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("bogus-suite"), std::string::npos);
  }
}

TEST(RunnerConfig, KnownSuites) {
  const auto& s = cli::known_suites();
  EXPECT_EQ(s.size(), 8u);
  EXPECT_NE(std::find(s.begin(), s.end(), "constant-curvature"), s.end());
}

TEST(RunnerSeed, Precedence) {
  cli::RunConfig cfg;
  EXPECT_EQ(cli::resolve_seed(std::nullopt, cfg, nullptr), 42u);
  EXPECT_EQ(cli::resolve_seed(std::nullopt, cfg, "9"), 9u);
  cfg.seed = 5;
  EXPECT_EQ(cli::resolve_seed(std::nullopt, cfg, "9"), 5u);
  EXPECT_EQ(cli::resolve_seed(3u, cfg, "9"), 3u);
  cfg.seed.reset();
  EXPECT_THROW(cli::resolve_seed(std::nullopt, cfg, "abc"), cli::ConfigError);
}

TEST(RunnerReport, SeventeenDigitsAndNullForNaN) {
  EXPECT_EQ(cli::format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(cli::format_number(std::numeric_limits<double>::quiet_NaN()), "null");
  cli::CheckReport r;
  r.check_id = "suite/name";
  r.paper_anchor = "anchor \"quoted\"";
  r.fixture_id = "random";
  r.residual = 1e-13;
  r.tolerance = 1e-12;
  r.pass = true;
  r.elapsed_ms = 1.5;
  const auto j = json::parse(cli::to_json_line(r));
  EXPECT_EQ(j["check_id"], "suite/name");
  EXPECT_EQ(j["paper_anchor"], "anchor \"quoted\"");
  EXPECT_TRUE(j["point"].is_null());
  EXPECT_EQ(j["pass"], true);
  EXPECT_EQ(j["expected_fail"], false);
  EXPECT_TRUE(j.contains("elapsed_ms"));
  EXPECT_FALSE(json::parse(cli::to_json_line(r, false)).contains("elapsed_ms"));
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys.size(), 9u);
}

TEST(RunnerReport, OkSemantics) {
  cli::CheckReport r;
  r.residual = 0.5;
  r.tolerance = 1e-3;
  r.pass = false;
  EXPECT_FALSE(r.ok());
  r.expected_fail = true;
  EXPECT_TRUE(r.ok());
  r.residual = std::numeric_limits<double>::quiet_NaN();
  EXPECT_FALSE(r.ok());
}

TEST(RunnerRun, AlgebraCorePassesWithSeed42) {
  const auto cfg = cli::parse_config(R"({"suites": ["algebra-core"], "trials": 20})");
  const auto res = cli::run(cfg, 42);
  EXPECT_EQ(res.exit_code, 0);
  EXPECT_FALSE(res.reports.empty());
  for (const auto& r : res.reports) {
    EXPECT_TRUE(r.pass) << r.check_id;
    EXPECT_GE(r.residual, 0.0);
    EXPECT_EQ(r.pass, r.residual <= r.tolerance);
  }
}

TEST(RunnerRun, SchwarzschildConstantCurvatureWitness) {
  const auto cfg = cli::parse_config(
      R"({"suites": ["constant-curvature"], "fixtures": [{"id": "schwarzschild"}]})");
  const auto res = cli::run(cfg, 42);
  EXPECT_EQ(res.exit_code, 0);
  ASSERT_EQ(res.reports.size(), 1u);
  EXPECT_TRUE(res.reports[0].expected_fail);
  EXPECT_FALSE(res.reports[0].pass);
  EXPECT_GT(res.reports[0].residual, 1e-3);
  EXPECT_TRUE(res.reports[0].point.has_value());
}

TEST(RunnerRun, FilterAndFixtureErrors) {
  const auto cfg = cli::parse_config(
      R"({"suites": ["algebra-core", "catalog-sanity"], "trials": 2, "fixtures": [{"id": "minkowski"}]})");
  const auto only = cli::run(cfg, 1, std::string("catalog-sanity"));
  for (const auto& r : only.reports) EXPECT_EQ(r.check_id.rfind("catalog-sanity/", 0), 0u);
  EXPECT_THROW(cli::run(cfg, 1, std::string("nope")), cli::ConfigError);

  const auto bad = cli::parse_config(R"({"suites": ["lovelock"], "fixtures": [{"id": "kerr"}]})");
  EXPECT_THROW(cli::run(bad, 1), curvcompat::FixtureError);
  const auto bad_probe = cli::parse_config(
      R"({"suites": ["lovelock"], "fixtures": [{"id": "sphere", "probes": [[0.0, 0.3]]}]})");
  EXPECT_THROW(cli::run(bad_probe, 1), curvcompat::FixtureError);
}

TEST(RunnerRun, DeterministicAcrossRunsAndSeedSensitive) {
  const auto cfg = cli::parse_config(
      R"({"suites": ["jordan-closure", "maps"], "trials": 5, "fixtures": [{"id": "perturbed_flat"}]})");
  const auto body = [&](std::uint64_t seed) {
    std::string out;
    for (const auto& r : cli::run(cfg, seed).reports) out += cli::to_json_line(r, false) + "\n";
    return out;
  };
  EXPECT_EQ(body(3), body(3));
  EXPECT_NE(body(3), body(4));
}
