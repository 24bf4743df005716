#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "zsg/equilibrium.hpp"
#include "zsg/quadratic.hpp"

using namespace zsg;

namespace {

QuadraticSaddleParams reference_quadratic() {
  QuadraticSaddleParams p;
  p.alpha = 1.2;
  p.beta = 0.8;
  p.gamma = 0.4;
  p.delta = -0.3;
  p.x0 = 0.5;
  p.y0 = -0.25;
  return p;
}

}  // namespace

TEST_CASE("analytic equilibrium solves the coupled system") {
  QuadraticSaddleParams p = reference_quadratic();
  SymmetricPoint eq = quadratic_equilibrium(p);
  // Plug back into the response equations.
  double r1 = p.x0 - p.gamma * p.groups.n * eq.s2 / (2.0 * p.alpha);
  double r2 = p.y0 - p.delta * p.groups.m * eq.s1 / (2.0 * p.beta);
  CHECK(eq.s1 == doctest::Approx(r1).epsilon(1e-12));
  CHECK(eq.s2 == doctest::Approx(r2).epsilon(1e-12));
}

TEST_CASE("uncoupled instance fixes the bliss points") {
  QuadraticSaddleParams p = reference_quadratic();
  p.gamma = 0.0;
  p.delta = 0.0;
  SymmetricPoint eq = quadratic_equilibrium(p);
  CHECK(eq.s1 == p.x0);
  CHECK(eq.s2 == p.y0);
}

TEST_CASE("solvers converge to the analytic equilibrium") {
  QuadraticSaddleParams p = reference_quadratic();
  GroupedGame game = build_quadratic_game(p);
  SymmetricPoint eq = quadratic_equilibrium(p);
  FixedPointTrace fp =
      solve_fixed_point(game, SymmetricPoint{2.0, 2.0}, 0.5, 1e-7, 500);
  FixedPointTrace br =
      solve_best_response(game, SymmetricPoint{2.0, 2.0}, 0.5, 1e-7, 500);
  REQUIRE(fp.converged);
  REQUIRE(br.converged);
  CHECK(std::abs(fp.last().s1 - eq.s1) < 1e-4);
  CHECK(std::abs(fp.last().s2 - eq.s2) < 1e-4);
  CHECK(std::abs(br.last().s1 - eq.s1) < 1e-4);
  CHECK(std::abs(br.last().s2 - eq.s2) < 1e-4);
}

TEST_CASE("family honours the zero-sum and symmetry contracts") {
  GroupedGame game = build_quadratic_game(reference_quadratic());
  std::mt19937_64 rng(77);
  for (int s = 0; s < 100; ++s) {
    StrategyProfile prof = testing::random_profile(
        rng, game.groups(), game.space1(), game.space2());
    CHECK(check_group_zero_sum(game, prof, 1e-9).within_tol);
    CHECK(check_group_symmetry(game, prof, 0, 2, 1e-9));
    CHECK(check_group_symmetry(game, prof, 3, 4, 1e-9));
  }
}

TEST_CASE("validation rejects bad curvatures and out-of-box equilibria") {
  QuadraticSaddleParams p = reference_quadratic();
  p.alpha = 0.0;
  CHECK_THROWS_AS(p.validate(), construction_error);

  p = reference_quadratic();
  p.x0 = 100.0;  // equilibrium escapes the box
  CHECK_THROWS_AS(p.validate(), construction_error);

  p = reference_quadratic();
  p.gamma = 2.0 * p.alpha / p.groups.n;  // g = 1
  p.delta = 2.0 * p.beta / p.groups.m;   // d = 1, singular system
  CHECK_THROWS_AS(p.validate(), construction_error);
}

TEST_CASE("larger groups keep the analytic equilibrium consistent") {
  QuadraticSaddleParams p = reference_quadratic();
  p.groups = GroupSpec{5, 4};
  GroupedGame game = build_quadratic_game(p);
  SymmetricPoint eq = quadratic_equilibrium(p);
  EquilibriumReport rep = nash_check(game, eq, 1e-4, 1e-8, true);
  CHECK(rep.is_nash);
}
