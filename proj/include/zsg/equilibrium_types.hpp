#pragma once

#include <optional>
#include <vector>

#include "zsg/scalar_opt.hpp"

namespace zsg {

// A symmetric-in-group strategy point: every group-1 player plays s1,
// every group-2 player plays s2.
struct SymmetricPoint {
  double s1 = 0.0;
  double s2 = 0.0;

  bool operator==(const SymmetricPoint&) const = default;
};

// Record of a damped fixed-point iteration. `iterates` holds the start
// point and every damped step; `residual` is max(|T(p).s1 - p.s1|,
// |T(p).s2 - p.s2|) at the final iterate. converged implies
// residual <= the configured tolerance. Non-convergence is data, not an
// error.
struct FixedPointTrace {
  std::vector<SymmetricPoint> iterates;
  bool converged = false;
  double residual = 0.0;
  int iterations = 0;

  const SymmetricPoint& last() const { return iterates.back(); }
};

// Verification output at a candidate symmetric point.
//
// deviation_gaps[i] is the best payoff improvement player i can reach by a
// unilateral deviation (can be slightly negative from optimizer
// tolerance). is_nash means every gap is within the deviation tolerance.
//
// saddle_g1 / saddle_g2 are the maximin/minimax results on the in-group
// two-player slices through the point (group 1: players 0 and 1 varying,
// payoff of player 0; group 2: players m and m+1, payoff of player m).
// coincidence_g1 / coincidence_g2 report whether both slice args agree
// with the point's component within the arg tolerance.
//
// info_g1 / info_g2 are the same checks run on the slices the equivalence
// does not rely on (player 1's payoff over (s_1, s_0) and player m+1's
// payoff over (s_{m+1}, s_m)); they are reported, never asserted.
struct EquilibriumReport {
  SymmetricPoint point;
  std::vector<double> deviation_gaps;
  std::vector<double> payoffs;
  bool is_nash = false;
  std::optional<SaddleResult> saddle_g1;
  std::optional<SaddleResult> saddle_g2;
  bool coincidence_g1 = false;
  bool coincidence_g2 = false;
  std::optional<SaddleResult> info_g1;
  std::optional<SaddleResult> info_g2;

  double max_deviation_gap() const {
    double worst = 0.0;
    for (double g : deviation_gaps) worst = g > worst ? g : worst;
    return worst;
  }
};

}  // namespace zsg
