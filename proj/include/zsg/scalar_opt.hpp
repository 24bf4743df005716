#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "zsg/game.hpp"

namespace zsg {

using Objective1D = std::function<double(double)>;
using Objective2D = std::function<double(double, double)>;

// Number of initial grid cells used to bracket an optimum before the
// golden-section refinement.
inline constexpr int kDefaultGridCells = 64;

// Outcome of a one-dimensional or nested optimization. `value` is the
// objective evaluated at `arg`; `evaluations` counts oracle calls.
struct OptResult {
  double arg = 0.0;
  double value = 0.0;
  long evaluations = 0;
};

// Result of running maximin and minimax on the same objective.
// gap = minimax_value - maximin_value; weak duality keeps it >= -eps.
// inner_min_at_maximin is the y location minimizing f(maximin_arg, .).
// coincident is meaningful only when X and Y are the same interval; it
// reports |maximin_arg - minimax_arg| <= coincidence_tol.
struct SaddleResult {
  double maximin_value = 0.0;
  double minimax_value = 0.0;
  double maximin_arg = 0.0;
  double minimax_arg = 0.0;
  double inner_min_at_maximin = 0.0;
  double gap = 0.0;
  bool coincident = false;
  long evaluations = 0;
};

// Maximizes f over box: coarse uniform grid scan to bracket, then
// golden-section refinement until the bracket width is <= tol. Reliable
// for quasi-concave objectives; ties break toward the smallest arg.
// Throws numeric_error when f returns a non-finite value.
OptResult argmax_interval(const Objective1D& f, const Interval& box,
                          double tol, int grid_cells = kDefaultGridCells);

// Dual of argmax_interval (tie-break toward the smallest arg as well).
OptResult argmin_interval(const Objective1D& f, const Interval& box,
                          double tol, int grid_cells = kDefaultGridCells);

// max over x in X of (min over y in Y of f(x, y)). Inner minimizations run
// at tol/10 so their value noise stays below the outer convergence test.
// `evaluations` counts f calls across all inner solves.
OptResult maximin(const Objective2D& f, const Interval& X, const Interval& Y,
                  double tol, int grid_cells = kDefaultGridCells);

// min over y in Y of (max over x in X of f(x, y)).
OptResult minimax(const Objective2D& f, const Interval& X, const Interval& Y,
                  double tol, int grid_cells = kDefaultGridCells);

// Runs both maximin and minimax and assembles a SaddleResult.
SaddleResult saddle_check(const Objective2D& f, const Interval& X,
                          const Interval& Y, double tol = 1e-8,
                          double coincidence_tol = 1e-4,
                          int grid_cells = kDefaultGridCells);

// One unimodality violation found by the shape diagnostic: on the line
// where `fixed` was held constant, the objective at grid points a < b < c
// took values fa, fb, fc forming an interior dip (or bump for the
// quasi-convex direction).
struct ShapeWitness {
  bool in_x = true;  // true: f(., fixed) scanned in x; false: f(fixed, .)
  double fixed = 0.0;
  double a = 0.0, b = 0.0, c = 0.0;
  double fa = 0.0, fb = 0.0, fc = 0.0;
};

struct ShapeDiagnostic {
  int samples = 0;
  int x_violations = 0;  // lines where f(., y) has an interior local minimum
  int y_violations = 0;  // lines where f(x, .) has an interior local maximum
  std::vector<ShapeWitness> witnesses;

  bool clean() const { return x_violations == 0 && y_violations == 0; }
};

// Samples random lines and scans each on a grid for violations of
// quasi-concavity in x and quasi-convexity in y. Advisory only; never
// blocks solving. Deterministic for a fixed seed.
ShapeDiagnostic quasiconcavity_diagnostic(const Objective2D& f,
                                          const Interval& X, const Interval& Y,
                                          int samples,
                                          std::uint64_t seed = 20240801,
                                          int grid_cells = 32);

}  // namespace zsg
