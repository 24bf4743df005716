#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "zsg/config.hpp"
#include "zsg/report.hpp"
#include "zsg/selftest.hpp"

namespace {

struct CommonOptions {
  std::string config_path;
  std::optional<std::string> out_path;
  std::optional<std::string> format;
  std::optional<std::string> method;
  std::optional<std::uint64_t> seed;
  bool verbose = false;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool config_required) {
  auto* config =
      cmd->add_option("--config", opts.config_path, "JSON config file");
  if (config_required) config->required();
  cmd->add_option("--out", opts.out_path, "report destination (default '-')");
  cmd->add_option("--format", opts.format, "report format: json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--method", opts.method,
                  "solver: maximin-fp|best-response|both")
      ->check(CLI::IsMember({"maximin-fp", "best-response", "both"}));
  cmd->add_option("--seed", opts.seed, "seed for sweeps and diagnostics");
  cmd->add_flag("--verbose", opts.verbose,
                "stream per-iteration residuals to stderr");
}

void apply_overrides(zsg::RunConfig& config, const CommonOptions& opts) {
  if (opts.out_path) config.report.path = *opts.out_path;
  if (opts.format) {
    config.report.format = *opts.format == "csv" ? zsg::ReportFormat::csv
                                                 : zsg::ReportFormat::json;
  }
  if (opts.method) {
    if (*opts.method == "maximin-fp") {
      config.solver.method = zsg::SolveMethod::maximin_fp;
    } else if (*opts.method == "best-response") {
      config.solver.method = zsg::SolveMethod::best_response;
    } else {
      config.solver.method = zsg::SolveMethod::both;
    }
  }
  if (opts.seed) config.seed = *opts.seed;
  // Overrides land in the echoed config so reports stay reproducible from
  // their own "config" block.
  config.echo["report"]["path"] = config.report.path;
  config.echo["report"]["format"] =
      config.report.format == zsg::ReportFormat::csv ? "csv" : "json";
  if (opts.method) config.echo["solver"]["method"] = *opts.method;
  if (opts.seed) config.echo["seed"] = *opts.seed;
}

int run_and_emit(zsg::RunConfig& config, bool verbose) {
  config.verbose = verbose;
  zsg::RunReport report = zsg::run(config);
  zsg::write_report(report, config.report);
  return report.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-group zero-sum game solver and verification toolkit"};
  app.require_subcommand(1);

  CommonOptions solve_opts;
  CLI::App* solve = app.add_subcommand(
      "solve", "solve for the symmetric equilibrium and verify it");
  add_common(solve, solve_opts, true);

  CommonOptions verify_opts;
  double verify_s1 = 0.0;
  double verify_s2 = 0.0;
  CLI::App* verify = app.add_subcommand(
      "verify", "check a user-supplied symmetric profile");
  add_common(verify, verify_opts, true);
  auto* s1_opt = verify->add_option("--s1", verify_s1,
                                    "group-1 strategy of the checked point");
  auto* s2_opt = verify->add_option("--s2", verify_s2,
                                    "group-2 strategy of the checked point");

  CommonOptions olig_opts;
  double a = 10.0, b = 0.5, cA = 2.0, cC = 1.0;
  int m = 3, n = 2;
  CLI::App* oligopoly = app.add_subcommand(
      "oligopoly", "closed-form equilibrium for the built-in oligopoly");
  oligopoly->add_option("--a", a, "demand intercept")->required();
  oligopoly->add_option("--b", b, "cross-group substitutability")->required();
  oligopoly->add_option("--cA", cA, "group-1 marginal cost")->required();
  oligopoly->add_option("--cC", cC, "group-2 marginal cost")->required();
  oligopoly->add_option("--m", m, "group-1 size (default 3)");
  oligopoly->add_option("--n", n, "group-2 size (default 2)");
  oligopoly->add_option("--out", olig_opts.out_path, "destination");

  CLI::App* selftest =
      app.add_subcommand("selftest", "run the acceptance checklist");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    // CLI11 returns 0 for --help; anything else is a usage error.
    return code == 0 ? 0 : zsg::kExitUsage;
  }

  try {
    if (solve->parsed()) {
      zsg::RunConfig config = zsg::load_config(solve_opts.config_path);
      apply_overrides(config, solve_opts);
      return run_and_emit(config, solve_opts.verbose);
    }

    if (verify->parsed()) {
      zsg::RunConfig config = zsg::load_config(verify_opts.config_path);
      apply_overrides(config, verify_opts);
      if (s1_opt->count() || s2_opt->count()) {
        if (!(s1_opt->count() && s2_opt->count())) {
          std::cerr << "verify: --s1 and --s2 must be given together\n";
          return zsg::kExitUsage;
        }
        config.verify.point = zsg::SymmetricPoint{verify_s1, verify_s2};
        config.echo["verify"]["point"] =
            nlohmann::ordered_json::array({verify_s1, verify_s2});
      }
      if (!config.verify.point) {
        std::cerr << "verify: no point given (use --s1/--s2 or "
                     "verify.point in the config)\n";
        return zsg::kExitUsage;
      }
      return run_and_emit(config, verify_opts.verbose);
    }

    if (oligopoly->parsed()) {
      zsg::OligopolyParams params;
      params.a = a;
      params.b = b;
      params.c1 = cA;
      params.c2 = cC;
      params.groups = zsg::GroupSpec{m, n};
      zsg::ClosedFormEquilibrium eq = zsg::closed_form_equilibrium(params);
      nlohmann::ordered_json out;
      out["family"] = "oligopoly";
      out["params"] = {{"a", a}, {"b", b}, {"cA", cA}, {"cC", cC},
                       {"m", m}, {"n", n}};
      out["point"] = nlohmann::ordered_json::array({eq.point.s1, eq.point.s2});
      out["price1"] = eq.price1;
      out["price2"] = eq.price2;
      if (olig_opts.out_path && *olig_opts.out_path != "-") {
        std::ofstream file(*olig_opts.out_path);
        if (!file) {
          std::cerr << "cannot open " << *olig_opts.out_path << "\n";
          return zsg::kExitUsage;
        }
        zsg::write_json(file, out);
      } else {
        zsg::write_json(std::cout, out);
      }
      return zsg::kExitOk;
    }

    if (selftest->parsed()) {
      zsg::SelftestResult result = zsg::run_selftest(std::cout);
      return result.ok() ? zsg::kExitOk : zsg::kExitVerificationFailed;
    }
  } catch (const zsg::config_error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return zsg::kExitUsage;
  } catch (const zsg::construction_error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return zsg::kExitUsage;
  } catch (const zsg::parse_error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return zsg::kExitUsage;
  } catch (const zsg::error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return zsg::kExitUsage;
  }
  return zsg::kExitUsage;
}
