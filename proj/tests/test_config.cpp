#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "zsg/config.hpp"
#include "zsg/report.hpp"

using namespace zsg;
using nlohmann::json;

namespace {

json minimal_oligopoly_config() {
  return json::parse(R"({
    "family": "oligopoly",
    "params": {"a": 10, "b": 0.5, "cA": 2, "cC": 1}
  })");
}

}  // namespace

TEST_CASE("minimal config parses with documented defaults") {
  RunConfig config = parse_config(minimal_oligopoly_config());
  CHECK(config.family == "oligopoly");
  CHECK(config.groups.m == 3);
  CHECK(config.groups.n == 2);
  CHECK(config.solver.method == SolveMethod::both);
  CHECK(config.solver.damping == 0.5);
  CHECK(config.solver.fp_tol == 1e-6);
  CHECK(config.solver.max_iter == 500);
  CHECK_FALSE(config.solver.start.has_value());
  CHECK(config.verify.nash_to_saddle);
  CHECK(config.verify.saddle_to_nash);
  CHECK_FALSE(config.verify.diagnostics);
  CHECK(config.report.format == ReportFormat::json);
  CHECK(config.report.path == "-");
  CHECK(config.seed == kDefaultSeed);

  const auto& p = std::get<OligopolyParams>(config.params);
  CHECK(p.a == 10.0);
  CHECK(p.c1 == 2.0);
  CHECK(effective_space1(config).hi == 10.0);
}

TEST_CASE("family-invalid parameters surface the field name") {
  json doc = minimal_oligopoly_config();
  doc["params"]["b"] = 1.5;
  try {
    parse_config(doc);
    FAIL("should reject b = 1.5");
  } catch (const config_error& err) {
    std::string what = err.what();
    CHECK(what.find("params") != std::string::npos);
    CHECK(what.find("b") != std::string::npos);
  }
}

TEST_CASE("unknown keys and families are rejected") {
  json doc = minimal_oligopoly_config();
  doc["surprise"] = 1;
  CHECK_THROWS_AS(parse_config(doc), config_error);

  doc = minimal_oligopoly_config();
  doc["family"] = "bertrand";
  CHECK_THROWS_AS(parse_config(doc), config_error);

  doc = minimal_oligopoly_config();
  doc["solver"] = {{"method", "annealing"}};
  CHECK_THROWS_AS(parse_config(doc), config_error);

  doc = minimal_oligopoly_config();
  doc["solver"] = {{"damping", 0.0}};
  CHECK_THROWS_AS(parse_config(doc), config_error);
}

TEST_CASE("custom expression syntax errors carry the offset") {
  json doc = json::parse(R"({
    "family": "custom_expr",
    "intervals": {"group1": [0, 10], "group2": [0, 10]},
    "params": {
      "payoff1": "x1 +* y1",
      "payoff2": "(10 - y1 - y2)*y1"
    }
  })");
  try {
    parse_config(doc);
    FAIL("should reject the expression");
  } catch (const parse_error& err) {
    CHECK(err.offset() == 4);
  }
}

TEST_CASE("custom family builds a playable zero-sum game") {
  json doc = json::parse(R"({
    "family": "custom_expr",
    "groups": {"m": 3, "n": 2},
    "intervals": {"group1": [0, 10], "group2": [0, 10]},
    "params": {
      "payoff1": "(a - x1 - x2 - x3 - b*y1 - b*y2)*x1 - cA*x1",
      "payoff2": "(a - y1 - y2 - b*x1 - b*x2 - b*x3)*y1 - cC*y1",
      "constants": {"a": 10, "b": 0.5, "cA": 2, "cC": 1}
    }
  })");
  RunConfig config = parse_config(doc);
  GroupedGame game = build_game(config);
  StrategyProfile prof = StrategyProfile::symmetric(game.groups(), 1.0, 2.0);
  prof.g1[0] = 3.0;
  CHECK(check_group_zero_sum(game, prof, 1e-9).within_tol);
  CHECK(check_group_symmetry(game, prof, 0, 2, 1e-9));

  // Asymmetric rival usage is rejected at build time.
  json bad = doc;
  bad["params"]["payoff1"] = "(a - x1 - 2*x2 - x3)*x1";
  CHECK_THROWS_AS(build_game(parse_config(bad)), construction_error);
}

TEST_CASE("expression clone agrees with the built-in oligopoly oracle") {
  json doc = json::parse(R"({
    "family": "custom_expr",
    "intervals": {"group1": [0, 10], "group2": [0, 10]},
    "params": {
      "payoff1": "(a - x1 - x2 - x3 - b*y1 - b*y2)*x1 - cA*x1",
      "payoff2": "(a - y1 - y2 - b*x1 - b*x2 - b*x3)*y1 - cC*y1",
      "constants": {"a": 10, "b": 0.5, "cA": 2, "cC": 1}
    }
  })");
  GroupedGame custom = build_game(parse_config(doc));
  OligopolyParams params;
  params.a = 10.0;
  params.b = 0.5;
  params.c1 = 2.0;
  params.c2 = 1.0;
  GroupedGame builtin = build_oligopoly_game(params);

  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int s = 0; s < 200; ++s) {
    StrategyProfile prof;
    prof.g1 = {u(rng), u(rng), u(rng)};
    prof.g2 = {u(rng), u(rng)};
    for (int i = 0; i < 5; ++i) {
      CHECK(custom.payoff(i, prof) ==
            doctest::Approx(builtin.payoff(i, prof)).epsilon(1e-12));
    }
  }
}

TEST_CASE("load_config reports missing files and bad JSON") {
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), config_error);

  auto path = std::filesystem::temp_directory_path() / "zsg_bad_config.json";
  {
    std::ofstream out(path);
    out << "{ not json";
  }
  CHECK_THROWS_AS(load_config(path), config_error);
  std::filesystem::remove(path);
}

TEST_CASE("run produces a report that round-trips through JSON") {
  RunConfig config = parse_config(minimal_oligopoly_config());
  RunReport report = run(config);
  CHECK(report.exit_code == 0);
  REQUIRE(report.closed_form_delta.has_value());
  CHECK(*report.closed_form_delta <= 1e-4);

  std::ostringstream out;
  emit_report(report, ReportFormat::json, out);
  json parsed = json::parse(out.str());
  CHECK(json(report.to_json()) == parsed);

  // Full precision serialization: the closed-form output appears with all
  // 17 significant digits.
  CHECK(out.str().find("1.5555555555555556") != std::string::npos);
  CHECK(out.str().find("3.3333333333333335") != std::string::npos);
}

TEST_CASE("identical configs produce byte-identical reports") {
  RunConfig config = parse_config(minimal_oligopoly_config());
  std::ostringstream first;
  emit_report(run(config), ReportFormat::json, first);
  std::ostringstream second;
  emit_report(run(config), ReportFormat::json, second);
  CHECK(first.str() == second.str());
}

TEST_CASE("csv emission is a header plus one matching row") {
  RunConfig config = parse_config(minimal_oligopoly_config());
  RunReport report = run(config);
  std::ostringstream out;
  emit_report(report, ReportFormat::csv, out);
  std::istringstream lines(out.str());
  std::string header, row, extra;
  REQUIRE(std::getline(lines, header));
  REQUIRE(std::getline(lines, row));
  CHECK_FALSE(std::getline(lines, extra));

  CHECK(header ==
        "schema_version,toolkit_version,exit_code,status,family,"
        "fp_converged,fp_iterations,fp_residual,br_converged,br_iterations,"
        "br_residual,s1,s2,is_nash,max_deviation_gap,saddle_gap_g1,"
        "saddle_gap_g2,coincident_g1,coincident_g2,cf_s1,cf_s2,cf_price1,"
        "cf_price2,cf_delta,elapsed_ms");

  auto count_cells = [](const std::string& line) {
    return 1 + std::count(line.begin(), line.end(), ',');
  };
  CHECK(count_cells(header) == count_cells(row));
}

TEST_CASE("verify-only runs flag perturbed points") {
  RunConfig config = parse_config(minimal_oligopoly_config());
  config.verify.point = SymmetricPoint{14.0 / 9.0 + 0.5, 10.0 / 3.0};
  RunReport report = run(config);
  CHECK(report.exit_code == kExitVerificationFailed);
  CHECK(report.status == "verification-failed");

  config.verify.point = SymmetricPoint{14.0 / 9.0, 10.0 / 3.0};
  RunReport good = run(config);
  CHECK(good.exit_code == kExitOk);
  REQUIRE(good.equilibrium.has_value());
  CHECK(good.equilibrium->is_nash);
}

TEST_CASE("non-convergence surfaces as exit code 2") {
  RunConfig config = parse_config(minimal_oligopoly_config());
  config.solver.max_iter = 1;
  config.solver.start = SymmetricPoint{9.0, 9.0};
  RunReport report = run(config);
  CHECK(report.exit_code == kExitNotConverged);
  CHECK(report.status == "not-converged");
  REQUIRE(report.fixed_point.has_value());
  CHECK_FALSE(report.fixed_point->converged);
}

TEST_CASE("timings stay out of the report unless requested") {
  RunConfig config = parse_config(minimal_oligopoly_config());
  RunReport quiet = run(config);
  CHECK(quiet.timings_ms.empty());
  config.report.include_timings = true;
  RunReport timed = run(config);
  CHECK_FALSE(timed.timings_ms.empty());
  CHECK(timed.to_json().contains("timings_ms"));
}
