#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

#include "zsg/equilibrium_types.hpp"
#include "zsg/expr.hpp"
#include "zsg/game.hpp"
#include "zsg/oligopoly.hpp"
#include "zsg/quadratic.hpp"

namespace zsg {

inline constexpr int kConfigSchemaVersion = 1;
inline constexpr std::uint64_t kDefaultSeed = 20250810;

// User-defined family: one absolute-payoff template per group, written in
// the expression language. In the group-1 template x1 is the player's own
// strategy, x2..xm are its in-group rivals in ascending player order and
// y1..yn are the group-2 strategies; the group-2 template uses y1 as own,
// y2..yn as rivals and x1..xm for the other group. The toolkit subtracts
// the averaged rival payoffs, so the resulting game is zero-sum in each
// group by construction. Rival variables must enter symmetrically; this
// is checked on sampled profiles when the game is built.
struct CustomExprParams {
  std::string payoff1_source;
  std::string payoff2_source;
  std::map<std::string, double> constants;
};

GroupedGame build_custom_game(const CustomExprParams& params,
                              const GroupSpec& groups, Interval space1,
                              Interval space2);

enum class SolveMethod { maximin_fp, best_response, both };
enum class ReportFormat { json, csv };

struct SolverSettings {
  SolveMethod method = SolveMethod::both;
  double damping = 0.5;
  double fp_tol = 1e-6;
  double opt_tol = 1e-8;
  int max_iter = 500;
  std::optional<SymmetricPoint> start;  // default: interval midpoints
};

struct VerifySettings {
  bool nash_to_saddle = true;   // equilibrium implies coinciding saddle
  bool saddle_to_nash = true;   // coinciding saddle implies equilibrium
  bool diagnostics = false;     // quasi-concavity shape sampling
  double dev_tol = 1e-4;
  double arg_tol = 1e-4;
  bool check_all_players = false;
  int diagnostic_samples = 32;
  std::optional<SymmetricPoint> point;  // for verify-only runs
};

struct ReportSettings {
  std::string path = "-";  // "-" writes to stdout
  ReportFormat format = ReportFormat::json;
  bool include_timings = false;  // timings break byte-determinism
};

struct RunConfig {
  std::string family;  // "oligopoly" | "quadratic_saddle" | "custom_expr"
  std::variant<OligopolyParams, QuadraticSaddleParams, CustomExprParams>
      params;
  GroupSpec groups{3, 2};
  std::optional<Interval> space1;  // default chosen per family
  std::optional<Interval> space2;
  SolverSettings solver;
  VerifySettings verify;
  ReportSettings report;
  std::uint64_t seed = kDefaultSeed;
  bool verbose = false;  // CLI flag, streams solver residuals to stderr
  nlohmann::ordered_json echo;  // normalized config, echoed into reports
};

// Parses and validates a config document. Error messages carry the JSON
// path of the offending field. Custom-expression payoffs are parsed here,
// so expression syntax errors surface at load time.
RunConfig parse_config(const nlohmann::json& doc);

// Reads the file (throws config_error for missing/unreadable/malformed
// input) and forwards to parse_config.
RunConfig load_config(const std::filesystem::path& path);

// Instantiates the configured game family.
GroupedGame build_game(const RunConfig& config);

// Strategy intervals actually used for the configured family.
Interval effective_space1(const RunConfig& config);
Interval effective_space2(const RunConfig& config);

}  // namespace zsg
