#include <chrono>
#include <cmath>
#include <iostream>

#include "zsg/equilibrium.hpp"
#include "zsg/report.hpp"

namespace zsg {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

SolveSummary summarize(const std::string& method,
                       const FixedPointTrace& trace) {
  SolveSummary s;
  s.method = method;
  s.converged = trace.converged;
  s.iterations = trace.iterations;
  s.residual = trace.residual;
  s.point = trace.last();
  return s;
}

}  // namespace

RunReport run(const RunConfig& config) {
  RunReport report;
  report.config_echo = config.echo;

  const auto t_total = Clock::now();
  GroupedGame game = build_game(config);
  const Interval box1 = effective_space1(config);
  const Interval box2 = effective_space2(config);

  const SymmetricPoint start = config.solver.start.value_or(
      SymmetricPoint{box1.midpoint(), box2.midpoint()});
  const SolverSettings& solver = config.solver;
  const VerifySettings& verify = config.verify;

  const bool verify_only = verify.point.has_value();
  bool solvers_converged = true;
  std::optional<FixedPointTrace> fp_trace;
  std::optional<FixedPointTrace> br_trace;

  IterationObserver observer;
  const char* observed_method = "";
  if (config.verbose) {
    observer = [&observed_method](int iteration, double residual) {
      std::cerr << observed_method << " iteration " << iteration
                << " residual " << residual << "\n";
    };
  }

  if (!verify_only) {
    if (solver.method != SolveMethod::best_response) {
      auto t0 = Clock::now();
      observed_method = "maximin-fp";
      fp_trace = solve_fixed_point(game, start, solver.damping, solver.fp_tol,
                                   solver.max_iter, solver.opt_tol, observer);
      report.timings_ms.emplace_back("solve_fixed_point", ms_since(t0));
      report.fixed_point = summarize("maximin-fp", *fp_trace);
      solvers_converged = solvers_converged && fp_trace->converged;
    }
    if (solver.method != SolveMethod::maximin_fp) {
      auto t0 = Clock::now();
      observed_method = "best-response";
      br_trace = solve_best_response(game, start, solver.damping,
                                     solver.fp_tol, solver.max_iter,
                                     solver.opt_tol, observer);
      report.timings_ms.emplace_back("solve_best_response", ms_since(t0));
      report.best_response = summarize("best-response", *br_trace);
      solvers_converged = solvers_converged && br_trace->converged;
    }
    if (fp_trace && br_trace && fp_trace->converged && br_trace->converged) {
      report.solver_agreement =
          std::max(std::abs(fp_trace->last().s1 - br_trace->last().s1),
                   std::abs(fp_trace->last().s2 - br_trace->last().s2));
    }
  }

  // The point every verification runs at. A best-response limit is
  // preferred because the equilibrium-to-saddle check hypothesizes a Nash
  // point.
  SymmetricPoint point = start;
  if (verify_only) {
    point = *verify.point;
  } else if (br_trace && br_trace->converged) {
    point = br_trace->last();
  } else if (fp_trace && fp_trace->converged) {
    point = fp_trace->last();
  }

  bool verification_requested =
      verify_only || verify.nash_to_saddle || verify.saddle_to_nash;
  bool verification_failed = false;

  if (solvers_converged || verify_only) {
    auto t0 = Clock::now();
    try {
      if (verify.saddle_to_nash && !verify_only) {
        const FixedPointTrace& trace = fp_trace    ? *fp_trace
                                       : br_trace  ? *br_trace
                                                   : throw trace_error(
                                                         "no solver trace");
        report.equilibrium = verify_nash_from_saddle(
            game, trace, verify.dev_tol, solver.opt_tol,
            verify.check_all_players);
        verification_failed =
            verification_failed || !report.equilibrium->is_nash;
      }
      if (verify.nash_to_saddle) {
        report.equilibrium =
            verify_saddle_from_nash(game, point, verify.arg_tol,
                                    solver.opt_tol,
                                    verify.check_all_players);
        verification_failed = verification_failed ||
                              !report.equilibrium->is_nash ||
                              !report.equilibrium->coincidence_g1 ||
                              !report.equilibrium->coincidence_g2;
      } else if (verify_only || !report.equilibrium) {
        report.equilibrium = nash_check(game, point, verify.dev_tol,
                                        solver.opt_tol,
                                        verify.check_all_players);
        if (verification_requested) {
          verification_failed =
              verification_failed || !report.equilibrium->is_nash;
        }
      }
    } catch (const hypothesis_error& err) {
      report.verification_error = err.what();
      verification_failed = true;
    } catch (const coincidence_error& err) {
      report.verification_error = err.what();
      verification_failed = true;
    } catch (const trace_error& err) {
      report.verification_error = err.what();
      verification_failed = true;
    }
    report.timings_ms.emplace_back("verification", ms_since(t0));
  }

  if (verify.diagnostics) {
    auto t0 = Clock::now();
    const int mid = game.groups().m;
    ShapeDiagnostic d1 =
        quasiconcavity_diagnostic(pair_slice(game, 0, 1, point), box1, box1,
                                  verify.diagnostic_samples, config.seed);
    ShapeDiagnostic d2 = quasiconcavity_diagnostic(
        pair_slice(game, mid, mid + 1, point), box2, box2,
        verify.diagnostic_samples, config.seed + 1);
    ShapeDiagnostic merged;
    merged.samples = d1.samples + d2.samples;
    merged.x_violations = d1.x_violations + d2.x_violations;
    merged.y_violations = d1.y_violations + d2.y_violations;
    merged.witnesses = d1.witnesses;
    merged.witnesses.insert(merged.witnesses.end(), d2.witnesses.begin(),
                            d2.witnesses.end());
    report.diagnostics = merged;
    report.timings_ms.emplace_back("diagnostics", ms_since(t0));
  }

  if (const auto* p = std::get_if<OligopolyParams>(&config.params)) {
    report.closed_form = closed_form_equilibrium(*p);
    double delta = 0.0;
    bool any = false;
    auto track = [&](const SymmetricPoint& sp) {
      delta = std::max(
          {delta, std::abs(sp.s1 - report.closed_form->point.s1),
           std::abs(sp.s2 - report.closed_form->point.s2)});
      any = true;
    };
    if (fp_trace && fp_trace->converged) track(fp_trace->last());
    if (br_trace && br_trace->converged) track(br_trace->last());
    if (verify_only) track(point);
    if (any) report.closed_form_delta = delta;
  }

  report.timings_ms.emplace_back("total", ms_since(t_total));
  if (!config.report.include_timings) report.timings_ms.clear();

  if (!solvers_converged) {
    report.exit_code = kExitNotConverged;
    report.status = "not-converged";
  } else if (verification_failed) {
    report.exit_code = kExitVerificationFailed;
    report.status = "verification-failed";
  } else {
    report.exit_code = kExitOk;
    report.status = "ok";
  }
  return report;
}

}  // namespace zsg
