#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "zsg/equilibrium.hpp"
#include "zsg/oligopoly.hpp"
#include "zsg/quadratic.hpp"
#include "zsg/sweep.hpp"

using namespace zsg;

namespace {

OligopolyParams reference_params() {
  OligopolyParams p;
  p.a = 10.0;
  p.b = 0.5;
  p.c1 = 2.0;
  p.c2 = 1.0;
  return p;
}

const SymmetricPoint kClosedForm{14.0 / 9.0, 10.0 / 3.0};

GroupedGame constant_game() {
  return GroupedGame(GroupSpec{3, 2}, Interval{0.25, 2.0}, Interval{0.5, 3.0},
                     [](int, const StrategyProfile&) { return 0.0; });
}

}  // namespace

TEST_CASE("maximin map fixes the closed-form point") {
  GroupedGame game = build_oligopoly_game(reference_params());
  SymmetricPoint mapped = maximin_map(game, kClosedForm, 1e-8);
  CHECK(std::abs(mapped.s1 - kClosedForm.s1) < 1e-4);
  CHECK(std::abs(mapped.s2 - kClosedForm.s2) < 1e-4);
}

TEST_CASE("maximin map at the origin is strictly positive") {
  GroupedGame game = build_oligopoly_game(reference_params());
  SymmetricPoint mapped = maximin_map(game, SymmetricPoint{0.0, 0.0}, 1e-8);
  CHECK(mapped.s1 > 0.1);
  CHECK(mapped.s2 > 0.1);

  // Brute-force both components on a dense grid.
  auto oracle1 = testing::brute_force_maximin(
      pair_slice(game, 0, 1, SymmetricPoint{0.0, 0.0}), game.space1(),
      game.space1(), 500);
  auto oracle2 = testing::brute_force_maximin(
      pair_slice(game, 3, 4, SymmetricPoint{0.0, 0.0}), game.space2(),
      game.space2(), 500);
  CHECK(std::abs(mapped.s1 - oracle1.arg) < 0.05);
  CHECK(std::abs(mapped.s2 - oracle2.arg) < 0.05);
}

TEST_CASE("maximin map is idempotent at its fixed point") {
  GroupedGame game = build_oligopoly_game(reference_params());
  const double tol = 1e-6;
  SymmetricPoint once = maximin_map(game, kClosedForm, tol);
  SymmetricPoint twice = maximin_map(game, once, tol);
  CHECK(std::abs(twice.s1 - once.s1) <= 2.0 * 1e-4);
  CHECK(std::abs(twice.s2 - once.s2) <= 2.0 * 1e-4);
}

TEST_CASE("damped fixed-point iteration reaches the closed form") {
  GroupedGame game = build_oligopoly_game(reference_params());
  FixedPointTrace trace =
      solve_fixed_point(game, SymmetricPoint{1.0, 1.0}, 0.5, 1e-6, 500);
  REQUIRE(trace.converged);
  CHECK(std::abs(trace.last().s1 - kClosedForm.s1) < 1e-4);
  CHECK(std::abs(trace.last().s2 - kClosedForm.s2) < 1e-4);
  CHECK(trace.residual <= 1e-6);
  CHECK(static_cast<int>(trace.iterates.size()) == trace.iterations + 1);
}

TEST_CASE("starting at the fixed point converges immediately") {
  GroupedGame game = build_oligopoly_game(reference_params());
  FixedPointTrace trace = solve_fixed_point(game, kClosedForm, 0.5, 1e-4, 500);
  CHECK(trace.converged);
  CHECK(trace.iterations <= 1);
}

TEST_CASE("max_iter bounds the trace without raising") {
  GroupedGame game = build_oligopoly_game(reference_params());
  FixedPointTrace trace =
      solve_fixed_point(game, SymmetricPoint{9.0, 9.0}, 0.5, 1e-6, 1);
  CHECK_FALSE(trace.converged);
  CHECK(trace.iterates.size() == 2);
  CHECK(trace.iterations == 1);
}

TEST_CASE("best-response map fixes the equilibrium and matches the FOC") {
  GroupedGame game = build_oligopoly_game(reference_params());
  SymmetricPoint at_eq = best_response_map(game, kClosedForm, 1e-8);
  CHECK(std::abs(at_eq.s1 - kClosedForm.s1) < 1e-4);
  CHECK(std::abs(at_eq.s2 - kClosedForm.s2) < 1e-4);

  // With all rivals at zero output, the relativization term vanishes and
  // the response solves a - 2x - c = 0.
  SymmetricPoint at_zero = best_response_map(game, SymmetricPoint{0.0, 0.0},
                                             1e-8);
  CHECK(std::abs(at_zero.s1 - (10.0 - 2.0) / 2.0) < 1e-6);
  CHECK(std::abs(at_zero.s2 - (10.0 - 1.0) / 2.0) < 1e-6);

  StrategyProfile zeros = StrategyProfile::symmetric(game.groups(), 0.0, 0.0);
  auto own = [&](double x) {
    StrategyProfile prof = zeros;
    prof.g1[0] = x;
    return game.payoff(0, prof);
  };
  CHECK(std::abs(at_zero.s1 -
                 testing::brute_force_argmax(own, game.space1())) < 1e-2);
}

TEST_CASE("constant payoffs tie-break to the interval lower bounds") {
  GroupedGame game = constant_game();
  SymmetricPoint mapped =
      best_response_map(game, SymmetricPoint{1.0, 1.0}, 1e-8);
  CHECK(mapped.s1 == 0.25);
  CHECK(mapped.s2 == 0.5);
}

TEST_CASE("best-response iteration reaches the closed form") {
  GroupedGame game = build_oligopoly_game(reference_params());
  FixedPointTrace trace =
      solve_best_response(game, SymmetricPoint{1.0, 1.0}, 0.5, 1e-6, 500);
  REQUIRE(trace.converged);
  CHECK(std::abs(trace.last().s1 - kClosedForm.s1) < 1e-4);
  CHECK(std::abs(trace.last().s2 - kClosedForm.s2) < 1e-4);

  FixedPointTrace at_fix = solve_best_response(game, kClosedForm, 0.5, 1e-4,
                                               500);
  CHECK(at_fix.converged);
  CHECK(at_fix.iterations <= 1);
}

TEST_CASE("decoupled groups solve the isolated game") {
  OligopolyParams p = reference_params();
  p.b = 0.0;
  GroupedGame game = build_oligopoly_game(p);
  FixedPointTrace trace =
      solve_best_response(game, SymmetricPoint{1.0, 1.0}, 0.5, 1e-6, 500);
  REQUIRE(trace.converged);
  CHECK(std::abs(trace.last().s1 - 8.0 / 3.0) < 1e-4);
  CHECK(std::abs(trace.last().s2 - 9.0 / 2.0) < 1e-4);
}

TEST_CASE("nash_check accepts the equilibrium and rejects perturbations") {
  GroupedGame game = build_oligopoly_game(reference_params());
  EquilibriumReport at_eq = nash_check(game, kClosedForm, 1e-4, 1e-8);
  CHECK(at_eq.is_nash);
  CHECK(at_eq.max_deviation_gap() <= 1e-4);
  CHECK(at_eq.deviation_gaps.size() == 5);

  SymmetricPoint off{kClosedForm.s1 + 0.5, kClosedForm.s2};
  EquilibriumReport perturbed = nash_check(game, off, 1e-4, 1e-8);
  CHECK_FALSE(perturbed.is_nash);
  CHECK(perturbed.deviation_gaps[0] > 0.0);

  // Grid-search deviation oracle: some unilateral group-1 deviation
  // improves on the perturbed point.
  StrategyProfile prof = symmetric_profile(game, off);
  double base = game.payoff(0, prof);
  auto deviated = [&](double x) {
    StrategyProfile d = prof;
    d.g1[0] = x;
    return game.payoff(0, d);
  };
  double best = deviated(testing::brute_force_argmax(deviated, game.space1()));
  CHECK(best - base > 1e-3);
  CHECK(perturbed.deviation_gaps[0] ==
        doctest::Approx(best - base).epsilon(1e-2));
}

TEST_CASE("nash_check all-player mode agrees with representatives") {
  GroupedGame game = build_oligopoly_game(reference_params());
  EquilibriumReport rep = nash_check(game, kClosedForm, 1e-4, 1e-8, false);
  EquilibriumReport all = nash_check(game, kClosedForm, 1e-4, 1e-8, true);
  REQUIRE(rep.deviation_gaps.size() == all.deviation_gaps.size());
  for (std::size_t i = 0; i < all.deviation_gaps.size(); ++i) {
    CHECK(std::abs(rep.deviation_gaps[i] - all.deviation_gaps[i]) < 1e-9);
  }
}

TEST_CASE("constant game is everywhere Nash") {
  GroupedGame game = constant_game();
  EquilibriumReport rep =
      nash_check(game, SymmetricPoint{1.0, 1.0}, 1e-4, 1e-8, true);
  CHECK(rep.is_nash);
  for (double g : rep.deviation_gaps) CHECK(g == 0.0);
}

TEST_CASE("equilibrium-to-saddle verification at the closed form") {
  GroupedGame game = build_oligopoly_game(reference_params());
  EquilibriumReport rep = verify_saddle_from_nash(game, kClosedForm, 1e-4);
  CHECK(rep.is_nash);
  REQUIRE(rep.saddle_g1.has_value());
  REQUIRE(rep.saddle_g2.has_value());
  CHECK(std::abs(rep.saddle_g1->gap) < 1e-5);
  CHECK(std::abs(rep.saddle_g2->gap) < 1e-5);
  CHECK(rep.coincidence_g1);
  CHECK(rep.coincidence_g2);
  // The inner minimizer at the maximin point is the point itself.
  CHECK(std::abs(rep.saddle_g1->inner_min_at_maximin - kClosedForm.s1) < 1e-4);
  CHECK(std::abs(rep.saddle_g2->inner_min_at_maximin - kClosedForm.s2) < 1e-4);
  // Informational slices are reported alongside.
  CHECK(rep.info_g1.has_value());
  CHECK(rep.info_g2.has_value());
}

TEST_CASE("quadratic family passes both verifications at its equilibrium") {
  QuadraticSaddleParams params;
  params.alpha = 1.2;
  params.beta = 0.8;
  params.gamma = 0.4;
  params.delta = -0.3;
  params.x0 = 0.5;
  params.y0 = -0.25;
  GroupedGame game = build_quadratic_game(params);
  SymmetricPoint eq = quadratic_equilibrium(params);

  EquilibriumReport forward = verify_saddle_from_nash(game, eq, 1e-4);
  CHECK(forward.is_nash);
  CHECK(forward.coincidence_g1);
  CHECK(forward.coincidence_g2);

  FixedPointTrace trace = solve_fixed_point(
      game, SymmetricPoint{0.0, 0.0}, 0.5, 1e-8, 500);
  REQUIRE(trace.converged);
  CHECK(std::abs(trace.last().s1 - eq.s1) < 1e-4);
  CHECK(std::abs(trace.last().s2 - eq.s2) < 1e-4);
  EquilibriumReport backward = verify_nash_from_saddle(game, trace, 1e-4);
  CHECK(backward.is_nash);
}

TEST_CASE("hypothesis failure raises for points far from equilibrium") {
  GroupedGame game = build_oligopoly_game(reference_params());
  CHECK_THROWS_AS(
      verify_saddle_from_nash(game, SymmetricPoint{0.2, 8.0}, 1e-4),
      hypothesis_error);
}

TEST_CASE("saddle-to-equilibrium needs a converged trace") {
  GroupedGame game = build_oligopoly_game(reference_params());
  FixedPointTrace truncated =
      solve_fixed_point(game, SymmetricPoint{9.0, 9.0}, 0.5, 1e-6, 1);
  CHECK_FALSE(truncated.converged);
  CHECK_THROWS_AS(verify_nash_from_saddle(game, truncated, 1e-4), trace_error);
}

TEST_CASE("coincidence failure is detected and raised") {
  // Payoffs whose group-1 slice has distinct maximin and minimax args.
  GroupedGame game(
      GroupSpec{3, 2}, Interval{0.0, 1.0}, Interval{0.0, 1.0},
      [](int player, const StrategyProfile& prof) {
        if (player == 0) {
          double x = prof.g1[0] - 0.3;
          double y = prof.g1[1] - 0.7;
          return -x * x + y * y;
        }
        if (player == 3) {
          double x = prof.g2[0] - 0.4;
          double y = prof.g2[1] - 0.6;
          return -x * x + y * y;
        }
        return 0.0;
      });
  FixedPointTrace trace = solve_fixed_point(
      game, SymmetricPoint{0.5, 0.5}, 1.0, 1e-6, 50);
  REQUIRE(trace.converged);
  CHECK_THROWS_AS(verify_nash_from_saddle(game, trace, 1e-4),
                  coincidence_error);
}

TEST_CASE("both solvers agree and payoffs vanish at the limit") {
  GroupedGame game = build_oligopoly_game(reference_params());
  SymmetricPoint start{game.space1().midpoint(), game.space2().midpoint()};
  FixedPointTrace fp = solve_fixed_point(game, start, 0.5, 1e-6, 500);
  FixedPointTrace br = solve_best_response(game, start, 0.5, 1e-6, 500);
  REQUIRE(fp.converged);
  REQUIRE(br.converged);
  CHECK(std::abs(fp.last().s1 - br.last().s1) <= 1e-4);
  CHECK(std::abs(fp.last().s2 - br.last().s2) <= 1e-4);

  for (const FixedPointTrace* trace : {&fp, &br}) {
    StrategyProfile prof = symmetric_profile(game, trace->last());
    for (int i = 0; i < game.players(); ++i) {
      CHECK(std::abs(game.payoff(i, prof)) < 1e-6);
    }
  }

  // Both maps agree with the identity at the converged point.
  SymmetricPoint tm = maximin_map(game, fp.last(), 1e-8);
  SymmetricPoint bm = best_response_map(game, br.last(), 1e-8);
  CHECK(std::abs(tm.s1 - fp.last().s1) <= 2e-6);
  CHECK(std::abs(tm.s2 - fp.last().s2) <= 2e-6);
  CHECK(std::abs(bm.s1 - br.last().s1) <= 2e-6);
  CHECK(std::abs(bm.s2 - br.last().s2) <= 2e-6);
}

TEST_CASE("limits are damping-invariant whenever they converge") {
  GroupedGame game = build_oligopoly_game(reference_params());
  SymmetricPoint start{1.0, 1.0};
  std::vector<SymmetricPoint> limits;
  for (double damping : {0.3, 0.5, 1.0}) {
    FixedPointTrace trace =
        solve_fixed_point(game, start, damping, 1e-6, 500);
    REQUIRE(trace.converged);
    limits.push_back(trace.last());
  }
  for (std::size_t i = 1; i < limits.size(); ++i) {
    CHECK(std::abs(limits[i].s1 - limits[0].s1) <= 1e-4);
    CHECK(std::abs(limits[i].s2 - limits[0].s2) <= 1e-4);
  }
}

TEST_CASE("verification sweep over sampled parameter draws") {
  auto draws = sample_oligopoly_params(6, 31415);
  for (const OligopolyParams& p : draws) {
    GroupedGame game = build_oligopoly_game(p);
    SymmetricPoint cf = closed_form_equilibrium(p).point;
    SymmetricPoint start{game.space1().midpoint(), game.space2().midpoint()};

    FixedPointTrace fp = solve_fixed_point(game, start, 0.5, 1e-6, 500);
    FixedPointTrace br = solve_best_response(game, start, 0.5, 1e-6, 500);
    REQUIRE(fp.converged);
    REQUIRE(br.converged);
    CHECK(std::abs(fp.last().s1 - cf.s1) < 1e-4);
    CHECK(std::abs(fp.last().s2 - cf.s2) < 1e-4);
    CHECK(std::abs(br.last().s1 - cf.s1) < 1e-4);
    CHECK(std::abs(br.last().s2 - cf.s2) < 1e-4);

    EquilibriumReport forward = verify_saddle_from_nash(game, br.last(), 1e-4);
    CHECK(forward.coincidence_g1);
    CHECK(forward.coincidence_g2);
    EquilibriumReport backward = verify_nash_from_saddle(game, fp, 1e-4);
    CHECK(backward.is_nash);
  }
}
