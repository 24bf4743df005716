#pragma once

#include <cmath>
#include <random>
#include <stdexcept>
#include <variant>

#include "zsg/expr.hpp"
#include "zsg/game.hpp"
#include "zsg/scalar_opt.hpp"

namespace zsg::testing {

// Dense-grid nested optimization, independent of the production
// grid+golden-section path. Slow but simple; used as the oracle for
// maximin/minimax results.
struct BruteForceResult {
  double arg = 0.0;
  double value = 0.0;
};

template <typename F>
BruteForceResult brute_force_maximin(F&& f, const Interval& X,
                                     const Interval& Y, int grid = 400) {
  BruteForceResult best{X.lo, -1e300};
  for (int i = 0; i <= grid; ++i) {
    double x = X.lo + (X.hi - X.lo) * i / grid;
    double worst = 1e300;
    for (int j = 0; j <= grid; ++j) {
      double y = Y.lo + (Y.hi - Y.lo) * j / grid;
      worst = std::min(worst, f(x, y));
    }
    if (worst > best.value) {
      best = {x, worst};
    }
  }
  return best;
}

template <typename F>
BruteForceResult brute_force_minimax(F&& f, const Interval& X,
                                     const Interval& Y, int grid = 400) {
  BruteForceResult best{Y.lo, 1e300};
  for (int j = 0; j <= grid; ++j) {
    double y = Y.lo + (Y.hi - Y.lo) * j / grid;
    double most = -1e300;
    for (int i = 0; i <= grid; ++i) {
      double x = X.lo + (X.hi - X.lo) * i / grid;
      most = std::max(most, f(x, y));
    }
    if (most < best.value) {
      best = {y, most};
    }
  }
  return best;
}

template <typename F>
double brute_force_argmax(F&& f, const Interval& X, int grid = 4000) {
  double best_arg = X.lo;
  double best_val = -1e300;
  for (int i = 0; i <= grid; ++i) {
    double x = X.lo + (X.hi - X.lo) * i / grid;
    double v = f(x);
    if (v > best_val) {
      best_val = v;
      best_arg = x;
    }
  }
  return best_arg;
}

// Reference expression evaluator: a direct walk over the generated tree,
// independent of the parser/printer path under test.
inline double reference_eval(const ExprNode& node,
                             const StrategyProfile& prof) {
  if (const auto* lit = std::get_if<Literal>(&node.value)) {
    return lit->value;
  }
  if (const auto* var = std::get_if<Var>(&node.value)) {
    return var->group == 1 ? prof.g1[static_cast<std::size_t>(var->index)]
                           : prof.g2[static_cast<std::size_t>(var->index)];
  }
  if (const auto* neg = std::get_if<Negate>(&node.value)) {
    return -reference_eval(*neg->child, prof);
  }
  const auto& bin = std::get<Binary>(node.value);
  double lhs = reference_eval(*bin.lhs, prof);
  double rhs = reference_eval(*bin.rhs, prof);
  switch (bin.op) {
    case BinaryOp::add:
      return lhs + rhs;
    case BinaryOp::sub:
      return lhs - rhs;
    case BinaryOp::mul:
      return lhs * rhs;
    case BinaryOp::div:
      if (rhs == 0.0) throw std::domain_error("division by zero");
      return lhs / rhs;
    case BinaryOp::pow:
      return std::pow(lhs, rhs);
  }
  return 0.0;
}

inline StrategyProfile random_profile(std::mt19937_64& rng,
                                      const GroupSpec& groups,
                                      const Interval& box1,
                                      const Interval& box2) {
  std::uniform_real_distribution<double> u1(box1.lo, box1.hi);
  std::uniform_real_distribution<double> u2(box2.lo, box2.hi);
  StrategyProfile prof;
  prof.g1.resize(static_cast<std::size_t>(groups.m));
  prof.g2.resize(static_cast<std::size_t>(groups.n));
  for (double& x : prof.g1) x = u1(rng);
  for (double& y : prof.g2) y = u2(rng);
  return prof;
}

}  // namespace zsg::testing
