#include "zsg/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace zsg {

namespace {

void validate_point(const GroupedGame& game, SymmetricPoint p) {
  if (!game.space1().contains(p.s1) || !game.space2().contains(p.s2)) {
    throw profile_error("symmetric point (" + std::to_string(p.s1) + ", " +
                        std::to_string(p.s2) +
                        ") lies outside the strategy spaces");
  }
}

FixedPointTrace iterate_map(
    const GroupedGame& game,
    const std::function<SymmetricPoint(SymmetricPoint)>& map,
    SymmetricPoint start, double damping, double fp_tol, int max_iter,
    const IterationObserver& observer) {
  if (!(damping > 0.0 && damping <= 1.0)) {
    throw construction_error("damping must lie in (0, 1]");
  }
  if (max_iter < 1) {
    throw construction_error("max_iter must be at least 1");
  }
  if (!(fp_tol > 0.0)) {
    throw construction_error("fixed-point tolerance must be positive");
  }
  validate_point(game, start);

  FixedPointTrace trace;
  trace.iterates.push_back(start);
  SymmetricPoint p = start;
  for (int iter = 0;; ++iter) {
    SymmetricPoint mapped = map(p);
    trace.residual = std::max(std::abs(mapped.s1 - p.s1),
                              std::abs(mapped.s2 - p.s2));
    if (observer) observer(iter, trace.residual);
    if (trace.residual <= fp_tol) {
      trace.converged = true;
      break;
    }
    if (iter >= max_iter) break;
    p.s1 = (1.0 - damping) * p.s1 + damping * mapped.s1;
    p.s2 = (1.0 - damping) * p.s2 + damping * mapped.s2;
    trace.iterates.push_back(p);
  }
  trace.iterations = static_cast<int>(trace.iterates.size()) - 1;
  return trace;
}

}  // namespace

StrategyProfile symmetric_profile(const GroupedGame& game, SymmetricPoint p) {
  validate_point(game, p);
  return StrategyProfile::symmetric(game.groups(), p.s1, p.s2);
}

Objective2D pair_slice(const GroupedGame& game, int i, int j,
                       SymmetricPoint base) {
  if (i == j) {
    throw invalid_pair_error("slice players must be distinct");
  }
  game.group_of(i);
  game.group_of(j);
  validate_point(game, base);
  // The profile buffer lives in the lambda by value; each call rewrites
  // only the two varied slots, so the slice itself stays pure.
  return [&game, i, j,
          prof = symmetric_profile(game, base)](double x, double y) mutable {
    prof.at(game.groups(), i) = x;
    prof.at(game.groups(), j) = y;
    return game.payoff(i, prof);
  };
}

SymmetricPoint maximin_map(const GroupedGame& game, SymmetricPoint p,
                           double tol) {
  const int m = game.groups().m;
  SymmetricPoint mapped;
  mapped.s1 = maximin(pair_slice(game, 0, 1, p), game.space1(), game.space1(),
                      tol)
                  .arg;
  mapped.s2 = maximin(pair_slice(game, m, m + 1, p), game.space2(),
                      game.space2(), tol)
                  .arg;
  return mapped;
}

SymmetricPoint best_response_map(const GroupedGame& game, SymmetricPoint p,
                                 double tol) {
  const int m = game.groups().m;
  validate_point(game, p);
  auto response = [&](int player) {
    StrategyProfile prof = symmetric_profile(game, p);
    auto own_payoff = [&, prof](double x) mutable {
      prof.at(game.groups(), player) = x;
      return game.payoff(player, prof);
    };
    return argmax_interval(own_payoff, game.space_of(player), tol).arg;
  };
  return {response(0), response(m)};
}

FixedPointTrace solve_fixed_point(const GroupedGame& game,
                                  SymmetricPoint start, double damping,
                                  double fp_tol, int max_iter, double opt_tol,
                                  const IterationObserver& observer) {
  return iterate_map(
      game,
      [&](SymmetricPoint p) { return maximin_map(game, p, opt_tol); }, start,
      damping, fp_tol, max_iter, observer);
}

FixedPointTrace solve_best_response(const GroupedGame& game,
                                    SymmetricPoint start, double damping,
                                    double fp_tol, int max_iter,
                                    double opt_tol,
                                    const IterationObserver& observer) {
  return iterate_map(
      game,
      [&](SymmetricPoint p) { return best_response_map(game, p, opt_tol); },
      start, damping, fp_tol, max_iter, observer);
}

EquilibriumReport nash_check(const GroupedGame& game, SymmetricPoint p,
                             double dev_tol, double opt_tol,
                             bool all_players) {
  if (!(dev_tol > 0.0)) {
    throw construction_error("deviation tolerance must be positive");
  }
  validate_point(game, p);
  const int total = game.players();
  const int m = game.groups().m;

  EquilibriumReport report;
  report.point = p;
  report.deviation_gaps.assign(static_cast<std::size_t>(total), 0.0);
  report.payoffs.resize(static_cast<std::size_t>(total));

  StrategyProfile base = symmetric_profile(game, p);
  for (int i = 0; i < total; ++i) {
    report.payoffs[static_cast<std::size_t>(i)] = game.payoff(i, base);
  }

  auto deviation_gap = [&](int player) {
    StrategyProfile prof = base;
    auto deviated = [&, prof](double x) mutable {
      prof.at(game.groups(), player) = x;
      return game.payoff(player, prof);
    };
    OptResult best = argmax_interval(deviated, game.space_of(player), opt_tol);
    return best.value - report.payoffs[static_cast<std::size_t>(player)];
  };

  if (all_players) {
    for (int i = 0; i < total; ++i) {
      report.deviation_gaps[static_cast<std::size_t>(i)] = deviation_gap(i);
    }
  } else {
    // Within-group symmetry makes one representative per group enough.
    double gap1 = deviation_gap(0);
    double gap2 = deviation_gap(m);
    for (int i = 0; i < m; ++i) {
      report.deviation_gaps[static_cast<std::size_t>(i)] = gap1;
    }
    for (int k = m; k < total; ++k) {
      report.deviation_gaps[static_cast<std::size_t>(k)] = gap2;
    }
  }

  report.is_nash =
      std::all_of(report.deviation_gaps.begin(), report.deviation_gaps.end(),
                  [&](double g) { return g <= dev_tol; });
  return report;
}

EquilibriumReport verify_saddle_from_nash(const GroupedGame& game,
                                          SymmetricPoint p, double tol,
                                          double opt_tol, bool all_players) {
  EquilibriumReport report = nash_check(game, p, tol, opt_tol, all_players);
  if (!report.is_nash) {
    throw hypothesis_error(
        "point is not a Nash equilibrium at the requested tolerance "
        "(max deviation gap " +
        std::to_string(report.max_deviation_gap()) + ")");
  }

  const int m = game.groups().m;
  report.saddle_g1 = saddle_check(pair_slice(game, 0, 1, p), game.space1(),
                                  game.space1(), opt_tol, tol);
  report.saddle_g2 = saddle_check(pair_slice(game, m, m + 1, p),
                                  game.space2(), game.space2(), opt_tol, tol);
  report.coincidence_g1 =
      std::abs(report.saddle_g1->maximin_arg - p.s1) <= tol &&
      std::abs(report.saddle_g1->minimax_arg - p.s1) <= tol;
  report.coincidence_g2 =
      std::abs(report.saddle_g2->maximin_arg - p.s2) <= tol &&
      std::abs(report.saddle_g2->minimax_arg - p.s2) <= tol;

  // Slices the equivalence does not rely on; reported, not asserted.
  report.info_g1 = saddle_check(pair_slice(game, 1, 0, p), game.space1(),
                                game.space1(), opt_tol, tol);
  report.info_g2 = saddle_check(pair_slice(game, m + 1, m, p), game.space2(),
                                game.space2(), opt_tol, tol);
  return report;
}

EquilibriumReport verify_nash_from_saddle(const GroupedGame& game,
                                          const FixedPointTrace& trace,
                                          double tol, double opt_tol,
                                          bool all_players) {
  if (trace.iterates.empty() || !trace.converged) {
    throw trace_error("verification needs a converged fixed-point trace");
  }
  SymmetricPoint p = trace.last();
  const int m = game.groups().m;

  SaddleResult g1 = saddle_check(pair_slice(game, 0, 1, p), game.space1(),
                                 game.space1(), opt_tol, tol);
  SaddleResult g2 = saddle_check(pair_slice(game, m, m + 1, p), game.space2(),
                                 game.space2(), opt_tol, tol);
  if (!g1.coincident || !g2.coincident) {
    throw coincidence_error(
        "maximin and minimax strategies fail to coincide (group-1 args " +
        std::to_string(g1.maximin_arg) + " vs " +
        std::to_string(g1.minimax_arg) + ", group-2 args " +
        std::to_string(g2.maximin_arg) + " vs " +
        std::to_string(g2.minimax_arg) + ")");
  }

  EquilibriumReport report = nash_check(game, p, tol, opt_tol, all_players);
  report.saddle_g1 = g1;
  report.saddle_g2 = g2;
  report.coincidence_g1 = std::abs(g1.maximin_arg - p.s1) <= tol &&
                          std::abs(g1.minimax_arg - p.s1) <= tol;
  report.coincidence_g2 = std::abs(g2.maximin_arg - p.s2) <= tol &&
                          std::abs(g2.minimax_arg - p.s2) <= tol;
  return report;
}

}  // namespace zsg
