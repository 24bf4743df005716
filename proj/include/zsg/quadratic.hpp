#pragma once

#include "zsg/equilibrium_types.hpp"
#include "zsg/game.hpp"

namespace zsg {

// Built-in quadratic family with an analytic equilibrium, used as a
// second ground-truth oracle next to the oligopoly family.
//
// Absolute payoffs before relativization:
//   group-1 player i:  -alpha * (x_i - x0)^2 - gamma * x_i * (sum of y)
//   group-2 player k:  -beta  * (y_k - y0)^2 - delta * y_k * (sum of x)
// Each player's payoff is its absolute payoff minus the average of its
// in-group rivals' absolute payoffs, so both groups are zero-sum by
// construction. Because a player's absolute payoff never involves its
// own-group rivals, the symmetric equilibrium solves the linear system
//   s1 + (gamma * n / (2 alpha)) s2 = x0
//   (delta * m / (2 beta)) s1 + s2 = y0.
struct QuadraticSaddleParams {
  double alpha = 1.0;  // own curvature, group 1 (> 0)
  double beta = 1.0;   // own curvature, group 2 (> 0)
  double gamma = 0.0;  // response of group-1 payoffs to group-2 strategies
  double delta = 0.0;  // response of group-2 payoffs to group-1 strategies
  double x0 = 0.0;     // group-1 bliss point
  double y0 = 0.0;     // group-2 bliss point
  GroupSpec groups{3, 2};
  Interval space1{-4.0, 4.0};
  Interval space2{-4.0, 4.0};

  // alpha > 0, beta > 0, the coupling must leave the linear system
  // non-singular, and the analytic equilibrium must lie inside the boxes.
  void validate() const;
};

GroupedGame build_quadratic_game(const QuadraticSaddleParams& params);

// Solves the 2x2 linear system above.
SymmetricPoint quadratic_equilibrium(const QuadraticSaddleParams& params);

}  // namespace zsg
