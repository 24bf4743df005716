#include "zsg/sweep.hpp"

#include <cmath>
#include <random>

namespace zsg {

SymmetricPoint QuadraticSlice::stationary_point() const {
  const double det = -4.0 * axx * byy - cxy * cxy;
  return {(-px * 2.0 * byy + cxy * qy) / det,
          (2.0 * axx * qy + cxy * px) / det};
}

std::vector<OligopolyParams> sample_oligopoly_params(int count,
                                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ua(5.0, 15.0);
  std::uniform_real_distribution<double> ub(0.05, 0.9);
  std::uniform_real_distribution<double> ucost(0.05, 0.6);

  std::vector<OligopolyParams> draws;
  draws.reserve(static_cast<std::size_t>(count));
  while (static_cast<int>(draws.size()) < count) {
    OligopolyParams p;
    p.a = ua(rng);
    p.b = ub(rng);
    p.c1 = ucost(rng) * p.a;
    p.c2 = ucost(rng) * p.a;
    try {
      p.validate();
    } catch (const construction_error&) {
      continue;
    }
    SymmetricPoint cf = closed_form_equilibrium(p).point;
    // Strictly interior outputs with headroom under the default cap a.
    if (cf.s1 < 0.05 || cf.s2 < 0.05 || cf.s1 > 0.9 * p.a ||
        cf.s2 > 0.9 * p.a) {
      continue;
    }
    draws.push_back(p);
  }
  return draws;
}

std::vector<QuadraticSlice> sample_quadratic_slices(int count,
                                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> curvature(0.5, 2.0);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> linear(-0.5, 0.5);

  std::vector<QuadraticSlice> draws;
  draws.reserve(static_cast<std::size_t>(count));
  while (static_cast<int>(draws.size()) < count) {
    QuadraticSlice s;
    s.axx = curvature(rng);
    s.byy = curvature(rng);
    s.cxy = unit(rng) * 1.8 * std::sqrt(s.axx * s.byy);
    s.px = linear(rng);
    s.qy = linear(rng);
    SymmetricPoint st = s.stationary_point();
    if (std::abs(st.s1) > 2.5 || std::abs(st.s2) > 2.5) continue;
    draws.push_back(s);
  }
  return draws;
}

namespace {

ExprNodePtr sample_node(std::mt19937_64& rng, const GroupSpec& groups,
                        int depth) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> literal(0.0, 4.0);
  auto leaf = [&]() -> ExprNodePtr {
    if (unit(rng) < 0.5) {
      return std::make_shared<const ExprNode>(
          ExprNode{Literal{literal(rng)}});
    }
    bool group1 = unit(rng) < 0.5;
    int size = group1 ? groups.m : groups.n;
    std::uniform_int_distribution<int> pick(0, size - 1);
    return std::make_shared<const ExprNode>(
        ExprNode{Var{group1 ? 1 : 2, pick(rng)}});
  };
  if (depth <= 0) return leaf();

  double roll = unit(rng);
  if (roll < 0.30) return leaf();
  if (roll < 0.45) {
    return std::make_shared<const ExprNode>(
        ExprNode{Negate{sample_node(rng, groups, depth - 1)}});
  }
  BinaryOp op;
  if (roll < 0.60) {
    op = BinaryOp::add;
  } else if (roll < 0.75) {
    op = BinaryOp::sub;
  } else if (roll < 0.88) {
    op = BinaryOp::mul;
  } else if (roll < 0.95) {
    op = BinaryOp::div;
  } else {
    op = BinaryOp::pow;
  }
  ExprNodePtr lhs = sample_node(rng, groups, depth - 1);
  ExprNodePtr rhs = sample_node(rng, groups, depth - 1);
  return std::make_shared<const ExprNode>(
      ExprNode{Binary{op, std::move(lhs), std::move(rhs)}});
}

}  // namespace

Expr sample_expression(std::mt19937_64& rng, const GroupSpec& groups,
                       int max_depth) {
  return Expr(sample_node(rng, groups, max_depth), groups);
}

}  // namespace zsg
