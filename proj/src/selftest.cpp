#include "zsg/selftest.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "zsg/config.hpp"
#include "zsg/equilibrium.hpp"
#include "zsg/expr.hpp"
#include "zsg/oligopoly.hpp"
#include "zsg/quadratic.hpp"
#include "zsg/sweep.hpp"

namespace zsg {

namespace {

using Clock = std::chrono::steady_clock;

struct Criterion {
  std::string name;
  double budget_seconds;
  std::function<bool(std::ostringstream&)> body;
};

OligopolyParams reference_params() {
  OligopolyParams p;
  p.a = 10.0;
  p.b = 0.5;
  p.c1 = 2.0;
  p.c2 = 1.0;
  return p;
}

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

GroupedGame reference_custom_game() {
  CustomExprParams params;
  params.payoff1_source =
      "(a - x1 - x2 - x3 - b*y1 - b*y2)*x1 - cA*x1";
  params.payoff2_source =
      "(a - y1 - y2 - b*x1 - b*x2 - b*x3)*y1 - cC*y1";
  params.constants = {{"a", 10.0}, {"b", 0.5}, {"cA", 2.0}, {"cC", 1.0}};
  return build_custom_game(params, GroupSpec{3, 2}, Interval{0.0, 10.0},
                           Interval{0.0, 10.0});
}

StrategyProfile random_profile(std::mt19937_64& rng, const GroupedGame& game) {
  std::uniform_real_distribution<double> u1(game.space1().lo,
                                            game.space1().hi);
  std::uniform_real_distribution<double> u2(game.space2().lo,
                                            game.space2().hi);
  StrategyProfile prof;
  prof.g1.resize(static_cast<std::size_t>(game.groups().m));
  prof.g2.resize(static_cast<std::size_t>(game.groups().n));
  for (double& x : prof.g1) x = u1(rng);
  for (double& y : prof.g2) y = u2(rng);
  return prof;
}

bool check_family_invariants(const GroupedGame& game, int profiles,
                             std::uint64_t seed, std::ostringstream& detail) {
  std::mt19937_64 rng(seed);
  double worst_sum = 0.0;
  double scale = 1.0;
  for (int s = 0; s < profiles; ++s) {
    StrategyProfile prof = random_profile(rng, game);
    for (int i = 0; i < game.players(); ++i) {
      scale = std::max(scale, std::abs(game.payoff(i, prof)));
    }
    ZeroSumReport zs = check_group_zero_sum(game, prof, 1e300);
    worst_sum = std::max({worst_sum, std::abs(zs.residual_g1),
                          std::abs(zs.residual_g2)});
    for (int g = 1; g <= 2; ++g) {
      int base = g == 1 ? 0 : game.groups().m;
      int size = g == 1 ? game.groups().m : game.groups().n;
      for (int a = 0; a < size; ++a) {
        for (int b = a + 1; b < size; ++b) {
          if (!check_group_symmetry(game, prof, base + a, base + b, 1e-9)) {
            detail << "swap symmetry broken for players " << base + a
                   << ", " << base + b;
            return false;
          }
        }
      }
    }
  }
  if (worst_sum > 1e-9 * scale) {
    detail << "worst group sum " << worst_sum << " exceeds 1e-9 * " << scale;
    return false;
  }
  detail << "worst group sum " << worst_sum;
  return true;
}

}  // namespace

SelftestResult run_selftest(std::ostream& out) {
  std::vector<Criterion> criteria;

  // Reference-instance limits every later criterion compares against.
  const OligopolyParams ref = reference_params();
  const SymmetricPoint cf = closed_form_equilibrium(ref).point;
  auto shared_fp = std::make_shared<std::vector<SymmetricPoint>>();

  criteria.push_back(
      {"closed-form reproduction by both solvers", 1.0,
       [ref, cf, shared_fp](std::ostringstream& detail) {
         GroupedGame game = build_oligopoly_game(ref);
         SymmetricPoint start{game.space1().midpoint(),
                              game.space2().midpoint()};
         FixedPointTrace fp = solve_fixed_point(game, start, 0.5, 1e-6, 500);
         FixedPointTrace br = solve_best_response(game, start, 0.5, 1e-6, 500);
         if (!fp.converged || !br.converged) {
           detail << "solver did not converge";
           return false;
         }
         double worst = std::max(
             {std::abs(fp.last().s1 - cf.s1), std::abs(fp.last().s2 - cf.s2),
              std::abs(br.last().s1 - cf.s1), std::abs(br.last().s2 - cf.s2)});
         auto price_error = [&](SymmetricPoint p) {
           double price1 = ref.a - 3.0 * p.s1 - ref.b * 2.0 * p.s2;
           double price2 = ref.a - 2.0 * p.s2 - ref.b * 3.0 * p.s1;
           return std::max(std::abs(price1 - ref.c1),
                           std::abs(price2 - ref.c2));
         };
         double price_worst =
             std::max(price_error(fp.last()), price_error(br.last()));
         shared_fp->push_back(fp.last());
         shared_fp->push_back(br.last());
         detail << "strategy delta " << worst << ", price delta "
                << price_worst;
         return worst <= 1e-4 && price_worst <= 1e-4;
       }});

  criteria.push_back(
      {"maximin/minimax coincidence on all in-group slices", 1.0,
       [ref, cf](std::ostringstream& detail) {
         GroupedGame game = build_oligopoly_game(ref);
         struct Slice {
           int i, j;
           double expected;
         };
         const Slice slices[] = {{0, 1, cf.s1}, {3, 4, cf.s2}, {0, 2, cf.s1}};
         double worst_gap = 0.0;
         double worst_arg = 0.0;
         for (const Slice& s : slices) {
           const Interval& box =
               s.i < 3 ? game.space1() : game.space2();
           SaddleResult r = saddle_check(pair_slice(game, s.i, s.j, cf), box,
                                         box, 1e-8, 1e-4);
           worst_gap = std::max(worst_gap, std::abs(r.gap));
           worst_arg = std::max({worst_arg,
                                 std::abs(r.maximin_arg - s.expected),
                                 std::abs(r.minimax_arg - s.expected)});
         }
         detail << "worst |gap| " << worst_gap << ", worst arg delta "
                << worst_arg;
         return worst_gap <= 1e-5 && worst_arg <= 1e-4;
       }});

  criteria.push_back(
      {"equilibrium-to-saddle verification over 20 parameter draws", 20.0,
       [](std::ostringstream& detail) {
         auto draws = sample_oligopoly_params(20, 4101);
         double worst_gap = 0.0;
         for (const OligopolyParams& p : draws) {
           GroupedGame game = build_oligopoly_game(p);
           SymmetricPoint start{game.space1().midpoint(),
                                game.space2().midpoint()};
           FixedPointTrace br =
               solve_best_response(game, start, 0.5, 1e-6, 500);
           if (!br.converged) {
             detail << "best-response solve did not converge";
             return false;
           }
           SymmetricPoint cf_draw = closed_form_equilibrium(p).point;
           if (std::abs(br.last().s1 - cf_draw.s1) > 1e-4 ||
               std::abs(br.last().s2 - cf_draw.s2) > 1e-4) {
             detail << "solver limit disagrees with the closed form";
             return false;
           }
           EquilibriumReport rep;
           try {
             rep = verify_saddle_from_nash(game, br.last(), 1e-4);
           } catch (const hypothesis_error& err) {
             detail << err.what();
             return false;
           }
           worst_gap = std::max({worst_gap, std::abs(rep.saddle_g1->gap),
                                 std::abs(rep.saddle_g2->gap)});
           if (std::abs(rep.saddle_g1->gap) > 1e-5 ||
               std::abs(rep.saddle_g2->gap) > 1e-5 ||
               !rep.coincidence_g1 || !rep.coincidence_g2) {
             detail << "saddle check failed (gaps " << rep.saddle_g1->gap
                    << ", " << rep.saddle_g2->gap << ")";
             return false;
           }
         }
         detail << "20 draws, worst |gap| " << worst_gap;
         return true;
       }});

  criteria.push_back(
      {"saddle-to-equilibrium verification over the same draws", 20.0,
       [](std::ostringstream& detail) {
         auto draws = sample_oligopoly_params(20, 4101);
         double worst_dev = -1e300;
         for (const OligopolyParams& p : draws) {
           GroupedGame game = build_oligopoly_game(p);
           SymmetricPoint start{game.space1().midpoint(),
                                game.space2().midpoint()};
           FixedPointTrace fp = solve_fixed_point(game, start, 0.5, 1e-6, 500);
           if (!fp.converged) {
             detail << "fixed-point solve did not converge";
             return false;
           }
           SymmetricPoint cf_draw = closed_form_equilibrium(p).point;
           if (std::abs(fp.last().s1 - cf_draw.s1) > 1e-4 ||
               std::abs(fp.last().s2 - cf_draw.s2) > 1e-4) {
             detail << "solver limit disagrees with the closed form";
             return false;
           }
           EquilibriumReport rep;
           try {
             rep = verify_nash_from_saddle(game, fp, 1e-4);
           } catch (const coincidence_error& err) {
             detail << err.what();
             return false;
           }
           worst_dev = std::max(worst_dev, rep.max_deviation_gap());
           if (!rep.is_nash) {
             detail << "deviation gap " << rep.max_deviation_gap()
                    << " exceeds 1e-4";
             return false;
           }
         }
         detail << "20 draws, worst deviation gap " << worst_dev;
         return true;
       }});

  criteria.push_back(
      {"weak duality on 100 random quadratic saddles", 10.0,
       [](std::ostringstream& detail) {
         auto slices = sample_quadratic_slices(100, 4202);
         double worst = 0.0;
         for (const QuadraticSlice& s : slices) {
           OptResult lo = maximin(std::cref(s), s.box, s.box, 1e-8);
           OptResult hi = minimax(std::cref(s), s.box, s.box, 1e-8);
           double scale =
               std::max({1.0, std::abs(lo.value), std::abs(hi.value)});
           double violation = lo.value - hi.value;  // positive = violated
           worst = std::max(worst, violation / scale);
           if (violation > 1e-9 * scale) {
             detail << "duality violated by " << violation;
             return false;
           }
         }
         detail << "worst scaled violation " << worst;
         return true;
       }});

  criteria.push_back(
      {"nested optimizer matches the linear-system saddle on 50 draws", 10.0,
       [](std::ostringstream& detail) {
         auto slices = sample_quadratic_slices(50, 4303);
         double worst = 0.0;
         for (const QuadraticSlice& s : slices) {
           SymmetricPoint st = s.stationary_point();
           OptResult lo = maximin(std::cref(s), s.box, s.box, 1e-8);
           OptResult hi = minimax(std::cref(s), s.box, s.box, 1e-8);
           worst = std::max({worst, std::abs(lo.arg - st.s1),
                             std::abs(hi.arg - st.s2)});
         }
         detail << "worst arg delta " << worst;
         return worst <= 1e-6;
       }});

  criteria.push_back(
      {"zero-sum and swap symmetry on 1000 profiles per family", 20.0,
       [ref](std::ostringstream& detail) {
         GroupedGame oligopoly = build_oligopoly_game(ref);
         GroupedGame quadratic = build_quadratic_game(reference_quadratic());
         GroupedGame custom = reference_custom_game();
         detail << "oligopoly: ";
         if (!check_family_invariants(oligopoly, 1000, 4404, detail)) {
           return false;
         }
         detail << "; quadratic: ";
         if (!check_family_invariants(quadratic, 1000, 4405, detail)) {
           return false;
         }
         detail << "; custom: ";
         return check_family_invariants(custom, 1000, 4406, detail);
       }});

  criteria.push_back(
      {"all payoffs vanish at the verified equilibrium", 1.0,
       [ref, cf, shared_fp](std::ostringstream& detail) {
         GroupedGame game = build_oligopoly_game(ref);
         std::vector<SymmetricPoint> points = *shared_fp;
         points.push_back(cf);
         double worst = 0.0;
         for (SymmetricPoint p : points) {
           StrategyProfile prof = symmetric_profile(game, p);
           for (int i = 0; i < game.players(); ++i) {
             worst = std::max(worst, std::abs(game.payoff(i, prof)));
           }
         }
         detail << "worst |payoff| " << worst << " over " << points.size()
                << " points";
         return !points.empty() && worst <= 1e-6;
       }});

  criteria.push_back(
      {"decoupled groups at b = 0 match the isolated closed forms", 5.0,
       [ref](std::ostringstream& detail) {
         OligopolyParams p = ref;
         p.b = 0.0;
         GroupedGame game = build_oligopoly_game(p);
         SymmetricPoint expected{(p.a - p.c1) / 3.0, (p.a - p.c2) / 2.0};
         SymmetricPoint start{game.space1().midpoint(),
                              game.space2().midpoint()};
         FixedPointTrace fp = solve_fixed_point(game, start, 0.5, 1e-6, 500);
         FixedPointTrace br = solve_best_response(game, start, 0.5, 1e-6, 500);
         if (!fp.converged || !br.converged) {
           detail << "solver did not converge";
           return false;
         }
         double worst = std::max({std::abs(fp.last().s1 - expected.s1),
                                  std::abs(fp.last().s2 - expected.s2),
                                  std::abs(br.last().s1 - expected.s1),
                                  std::abs(br.last().s2 - expected.s2)});
         detail << "worst delta " << worst;
         return worst <= 1e-4;
       }});

  criteria.push_back(
      {"expression language precedence and round-trip", 10.0,
       [](std::ostringstream& detail) {
         const GroupSpec groups{3, 2};
         struct Case {
           const char* source;
           double expected;
         };
         const Case vector[] = {
             {"2^3^2", 512.0},    {"1+2*3", 7.0},   {"2*3^2", 18.0},
             {"-2^2", -4.0},      {"(1+2)*3", 9.0}, {"8/4/2", 1.0},
             {"1-2-3", -4.0},     {"2^-1", 0.5},    {"-(1+2)", -3.0},
             {"2*-3", -6.0},
         };
         StrategyProfile empty_vars =
             StrategyProfile::symmetric(groups, 0.0, 0.0);
         for (const Case& c : vector) {
           double got = Expr::parse(c.source, groups).evaluate(empty_vars);
           if (got != c.expected) {
             detail << c.source << " evaluated to " << got << ", expected "
                    << c.expected;
             return false;
           }
         }
         std::mt19937_64 rng(4707);
         for (int i = 0; i < 1000; ++i) {
           Expr original = sample_expression(rng, groups, 6);
           Expr reparsed = Expr::parse(original.to_string(), groups);
           if (!(original == reparsed)) {
             detail << "round-trip mismatch: " << original.to_string();
             return false;
           }
         }
         detail << "10 exact cases, 1000 round-trips";
         return true;
       }});

  SelftestResult result;
  const auto t_all = Clock::now();
  const int total = static_cast<int>(criteria.size()) + 1;
  int index = 0;
  for (const Criterion& c : criteria) {
    ++index;
    std::ostringstream detail;
    bool ok = false;
    const auto t0 = Clock::now();
    try {
      ok = c.body(detail);
    } catch (const std::exception& err) {
      detail << "exception: " << err.what();
      ok = false;
    }
    double seconds =
        std::chrono::duration<double>(Clock::now() - t0).count();
    if (seconds > c.budget_seconds) {
      ok = false;
      detail << " [exceeded " << c.budget_seconds << " s budget]";
    }
    out << "[" << std::setw(2) << index << "/" << total << "] "
        << (ok ? "PASS" : "FAIL") << "  " << c.name;
    if (!detail.str().empty()) out << " (" << detail.str() << ")";
    out << "  [" << std::fixed << std::setprecision(2) << seconds << " s]"
        << std::defaultfloat << std::setprecision(6) << "\n";
    ok ? ++result.passed : ++result.failed;
  }

  result.seconds = std::chrono::duration<double>(Clock::now() - t_all).count();
  bool total_ok = result.failed == 0 && result.seconds < 60.0;
  out << "[" << std::setw(2) << total << "/" << total << "] "
      << (total_ok ? "PASS" : "FAIL")
      << "  full suite under 60 s with every criterion green  ["
      << std::fixed << std::setprecision(2) << result.seconds << " s]"
      << std::defaultfloat << std::setprecision(6) << "\n";
  total_ok ? ++result.passed : ++result.failed;

  out << "selftest: " << result.passed << "/" << total << " criteria passed\n";
  return result;
}

}  // namespace zsg
