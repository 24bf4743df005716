#include "zsg/oligopoly.hpp"

#include <cmath>
#include <string>

namespace zsg {

namespace {

SymmetricPoint closed_form_point(const OligopolyParams& p) {
  const double denom = (1.0 - p.b) * (1.0 + p.b);
  return {(p.b * p.c2 - p.c1 - p.a * p.b + p.a) / (p.groups.m * denom),
          (p.b * p.c1 - p.c2 - p.a * p.b + p.a) / (p.groups.n * denom)};
}

}  // namespace

void OligopolyParams::validate() const {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c1) ||
      !std::isfinite(c2)) {
    throw construction_error("oligopoly parameters must be finite");
  }
  if (groups.m < 2 || groups.n < 2) {
    throw construction_error("group sizes must satisfy m >= 2 and n >= 2");
  }
  if (!(b >= 0.0 && b < 1.0)) {
    throw construction_error(
        "substitutability must satisfy 0 <= b < 1, got b = " +
        std::to_string(b));
  }
  if (!(c1 < a)) {
    throw construction_error("group-1 cost must satisfy c1 < a");
  }
  if (!(c2 < a)) {
    throw construction_error("group-2 cost must satisfy c2 < a");
  }
  SymmetricPoint cf = closed_form_point(*this);
  if (cf.s1 < 0.0 || cf.s2 < 0.0) {
    throw construction_error(
        "closed-form outputs must be nonnegative, got (" +
        std::to_string(cf.s1) + ", " + std::to_string(cf.s2) + ")");
  }
}

GroupedGame build_oligopoly_game(const OligopolyParams& params, double cap) {
  params.validate();
  SymmetricPoint cf = closed_form_point(params);
  if (!(cap > cf.s1 && cap > cf.s2)) {
    throw construction_error(
        "strategy cap " + std::to_string(cap) +
        " must exceed both closed-form outputs (" + std::to_string(cf.s1) +
        ", " + std::to_string(cf.s2) + ")");
  }

  const OligopolyParams p = params;
  PayoffFn payoff = [p](int player, const StrategyProfile& prof) {
    double sum1 = 0.0;
    for (double x : prof.g1) sum1 += x;
    double sum2 = 0.0;
    for (double y : prof.g2) sum2 += y;

    const double price1 = p.a - sum1 - p.b * sum2;
    const double price2 = p.a - sum2 - p.b * sum1;

    if (player < p.groups.m) {
      const double margin = price1 - p.c1;
      const double own = margin * prof.g1[static_cast<std::size_t>(player)];
      double rivals = 0.0;
      for (int j = 0; j < p.groups.m; ++j) {
        if (j == player) continue;
        rivals += margin * prof.g1[static_cast<std::size_t>(j)];
      }
      return own - rivals / (p.groups.m - 1);
    }
    const int k = player - p.groups.m;
    const double margin = price2 - p.c2;
    const double own = margin * prof.g2[static_cast<std::size_t>(k)];
    double rivals = 0.0;
    for (int j = 0; j < p.groups.n; ++j) {
      if (j == k) continue;
      rivals += margin * prof.g2[static_cast<std::size_t>(j)];
    }
    return own - rivals / (p.groups.n - 1);
  };

  Interval box{0.0, cap};
  return GroupedGame(params.groups, box, box, std::move(payoff));
}

GroupedGame build_oligopoly_game(const OligopolyParams& params) {
  return build_oligopoly_game(params, params.a);
}

ClosedFormEquilibrium closed_form_equilibrium(const OligopolyParams& params) {
  params.validate();
  ClosedFormEquilibrium eq;
  eq.point = closed_form_point(params);
  eq.price1 = params.a - params.groups.m * eq.point.s1 -
              params.b * params.groups.n * eq.point.s2;
  eq.price2 = params.a - params.groups.n * eq.point.s2 -
              params.b * params.groups.m * eq.point.s1;
  return eq;
}

FocResiduals foc_residuals(const OligopolyParams& params, SymmetricPoint p) {
  FocResiduals r;
  r.group1 = params.a - params.groups.m * p.s1 -
             params.groups.n * params.b * p.s2 - params.c1;
  r.group2 = params.a - params.groups.n * p.s2 -
             params.groups.m * params.b * p.s1 - params.c2;
  return r;
}

SaddleStrategies closed_form_saddle_strategies(const OligopolyParams& params) {
  SymmetricPoint cf = closed_form_equilibrium(params).point;
  SaddleStrategies s;
  s.g1_first_second = {cf.s1, cf.s1};
  s.g1_first_last = {cf.s1, cf.s1};
  s.g2_first_second = {cf.s2, cf.s2};
  return s;
}

}  // namespace zsg
