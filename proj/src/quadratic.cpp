#include "zsg/quadratic.hpp"

#include <cmath>
#include <string>

namespace zsg {

namespace {

double coupling_determinant(const QuadraticSaddleParams& p) {
  return 1.0 - (p.gamma * p.groups.n / (2.0 * p.alpha)) *
                   (p.delta * p.groups.m / (2.0 * p.beta));
}

}  // namespace

void QuadraticSaddleParams::validate() const {
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(gamma) ||
      !std::isfinite(delta) || !std::isfinite(x0) || !std::isfinite(y0)) {
    throw construction_error("quadratic family parameters must be finite");
  }
  if (groups.m < 2 || groups.n < 2) {
    throw construction_error("group sizes must satisfy m >= 2 and n >= 2");
  }
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw construction_error("curvatures must satisfy alpha > 0 and beta > 0");
  }
  if (std::abs(coupling_determinant(*this)) < 1e-9) {
    throw construction_error(
        "cross-group coupling makes the equilibrium system singular");
  }
  SymmetricPoint eq = quadratic_equilibrium(*this);
  if (!space1.contains(eq.s1) || !space2.contains(eq.s2)) {
    throw construction_error("analytic equilibrium (" + std::to_string(eq.s1) +
                             ", " + std::to_string(eq.s2) +
                             ") lies outside the strategy boxes");
  }
}

SymmetricPoint quadratic_equilibrium(const QuadraticSaddleParams& p) {
  // [ 1   g ] [s1]   [x0]        g = gamma * n / (2 alpha)
  // [ d   1 ] [s2] = [y0]        d = delta * m / (2 beta)
  const double g = p.gamma * p.groups.n / (2.0 * p.alpha);
  const double d = p.delta * p.groups.m / (2.0 * p.beta);
  const double det = 1.0 - g * d;
  return {(p.x0 - g * p.y0) / det, (p.y0 - d * p.x0) / det};
}

GroupedGame build_quadratic_game(const QuadraticSaddleParams& params) {
  params.validate();

  const QuadraticSaddleParams p = params;
  PayoffFn payoff = [p](int player, const StrategyProfile& prof) {
    double sum1 = 0.0;
    for (double x : prof.g1) sum1 += x;
    double sum2 = 0.0;
    for (double y : prof.g2) sum2 += y;

    auto absolute1 = [&](int i) {
      double x = prof.g1[static_cast<std::size_t>(i)];
      return -p.alpha * (x - p.x0) * (x - p.x0) - p.gamma * x * sum2;
    };
    auto absolute2 = [&](int k) {
      double y = prof.g2[static_cast<std::size_t>(k)];
      return -p.beta * (y - p.y0) * (y - p.y0) - p.delta * y * sum1;
    };

    if (player < p.groups.m) {
      double rivals = 0.0;
      for (int j = 0; j < p.groups.m; ++j) {
        if (j != player) rivals += absolute1(j);
      }
      return absolute1(player) - rivals / (p.groups.m - 1);
    }
    const int k = player - p.groups.m;
    double rivals = 0.0;
    for (int j = 0; j < p.groups.n; ++j) {
      if (j != k) rivals += absolute2(j);
    }
    return absolute2(k) - rivals / (p.groups.n - 1);
  };

  return GroupedGame(params.groups, params.space1, params.space2,
                     std::move(payoff));
}

}  // namespace zsg
