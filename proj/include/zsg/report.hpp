#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "zsg/config.hpp"
#include "zsg/equilibrium_types.hpp"
#include "zsg/oligopoly.hpp"

namespace zsg {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kToolkitVersion = "0.1.0";

// Process exit codes, also stored in the report.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNotConverged = 2;
inline constexpr int kExitVerificationFailed = 3;

struct SolveSummary {
  std::string method;
  bool converged = false;
  int iterations = 0;
  double residual = 0.0;
  SymmetricPoint point;
};

// Full machine-readable outcome of one run. Field order in the JSON
// rendering follows docs/report-format.md.
struct RunReport {
  int schema_version = kReportSchemaVersion;
  std::string toolkit_version = kToolkitVersion;
  int exit_code = kExitOk;
  std::string status;  // "ok" | "not-converged" | "verification-failed"
  nlohmann::ordered_json config_echo;
  std::optional<SolveSummary> fixed_point;
  std::optional<SolveSummary> best_response;
  std::optional<double> solver_agreement;  // max |fp - br| componentwise
  std::optional<EquilibriumReport> equilibrium;
  std::optional<std::string> verification_error;
  std::optional<ClosedFormEquilibrium> closed_form;
  std::optional<double> closed_form_delta;  // max |solver - closed form|
  std::optional<ShapeDiagnostic> diagnostics;
  std::vector<std::pair<std::string, double>> timings_ms;  // optional

  nlohmann::ordered_json to_json() const;

  // Flat one-row summary. Header and row stay in column lockstep; the
  // column list is documented in docs/report-format.md.
  static std::string csv_header();
  std::string csv_row() const;
};

// Serializes with every floating-point number printed to 17 significant
// digits, which round-trips doubles exactly.
void write_json(std::ostream& out, const nlohmann::ordered_json& doc,
                int indent = 2);

// Writes the report in the requested format to `out`.
void emit_report(const RunReport& report, ReportFormat format,
                 std::ostream& out);

// Writes to settings.path ("-" means stdout). Throws config_error on I/O
// failure.
void write_report(const RunReport& report, const ReportSettings& settings);

// Runs the configured solve/verify pipeline. Solver non-convergence and
// verification failures are encoded in the report's exit_code, not
// thrown; config and usage problems throw config_error.
RunReport run(const RunConfig& config);

}  // namespace zsg
