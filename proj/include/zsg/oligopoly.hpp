#pragma once

#include "zsg/equilibrium_types.hpp"
#include "zsg/game.hpp"

namespace zsg {

// Linear-demand Cournot oligopoly with two groups in which every firm
// maximizes its profit relative to its in-group rivals.
//
// Group-1 inverse demand:  a - (sum of group-1 outputs) - b * (sum of
// group-2 outputs); group 2 symmetrically. Firm costs are linear: c1 for
// every group-1 firm, c2 for every group-2 firm. A firm's payoff is its
// absolute profit minus the average of its in-group rivals' absolute
// profits, which makes each group's payoffs sum to zero identically.
struct OligopolyParams {
  double a = 10.0;   // demand intercept
  double b = 0.5;    // cross-group substitutability, 0 <= b < 1
  double c1 = 2.0;   // group-1 marginal cost
  double c2 = 1.0;   // group-2 marginal cost
  GroupSpec groups{3, 2};

  // Throws construction_error naming the violated invariant:
  // 0 <= b < 1, c1 < a, c2 < a, both closed-form outputs >= 0,
  // and m >= 2, n >= 2.
  void validate() const;
};

struct ClosedFormEquilibrium {
  SymmetricPoint point;  // per-firm outputs (group 1, group 2)
  double price1 = 0.0;   // group-1 good price at the equilibrium (= c1)
  double price2 = 0.0;   // group-2 good price (= c2)
};

// Builds the game with strategy intervals [0, cap] for both groups.
// Requires cap to exceed both closed-form outputs. The overload without a
// cap uses cap = a (outputs above a force a negative price).
GroupedGame build_oligopoly_game(const OligopolyParams& params, double cap);
GroupedGame build_oligopoly_game(const OligopolyParams& params);

// Per-firm equilibrium outputs under quantity-setting behavior:
//   s1 = (b*c2 - c1 - a*b + a) / (m * (1 - b) * (1 + b))
//   s2 = (b*c1 - c2 - a*b + a) / (n * (1 - b) * (1 + b))
// The prices of both goods equal the marginal costs. The general (m, n)
// denominators are validated against the first-order conditions
//   a - m*s1 - n*b*s2 = c1   and   a - n*s2 - m*b*s1 = c2.
ClosedFormEquilibrium closed_form_equilibrium(const OligopolyParams& params);

// First-order-condition residuals at a candidate symmetric point; both are
// zero at the closed-form equilibrium. Kept public as an independent check
// on the closed forms.
struct FocResiduals {
  double group1 = 0.0;  // a - m*s1 - n*b*s2 - c1
  double group2 = 0.0;  // a - n*s2 - m*b*s1 - c2
};
FocResiduals foc_residuals(const OligopolyParams& params, SymmetricPoint p);

// Closed-form maximin and minimax strategies for the in-group pairs.
// All coincide with the corresponding equilibrium output.
struct PairStrategies {
  double maximin = 0.0;
  double minimax = 0.0;
};
struct SaddleStrategies {
  PairStrategies g1_first_second;  // group-1 players 0 and 1
  PairStrategies g1_first_last;    // group-1 players 0 and m-1
  PairStrategies g2_first_second;  // group-2 players 0 and 1
};
SaddleStrategies closed_form_saddle_strategies(const OligopolyParams& params);

}  // namespace zsg
