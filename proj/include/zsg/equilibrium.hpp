#pragma once

#include <functional>

#include "zsg/equilibrium_types.hpp"
#include "zsg/game.hpp"
#include "zsg/scalar_opt.hpp"

namespace zsg {

// Symmetric profile with every group-1 player at p.s1 and every group-2
// player at p.s2.
StrategyProfile symmetric_profile(const GroupedGame& game, SymmetricPoint p);

// Two-player slice through a symmetric base point: f(x, y) is player i's
// payoff with player i at x, player j at y, and everyone else at the base
// point's component for their group.
Objective2D pair_slice(const GroupedGame& game, int i, int j,
                       SymmetricPoint base);

// The maximin response map. Component 1 is the maximin strategy of the
// group-1 representative against its first in-group rival (all other
// players held at p); component 2 is the group-2 analogue. Fixed points of
// this map are the symmetric saddle candidates.
SymmetricPoint maximin_map(const GroupedGame& game, SymmetricPoint p,
                           double tol);

// The best-response map: component 1 maximizes the group-1
// representative's payoff with every other player held at p, component 2
// the group-2 analogue. Fixed points are symmetric Nash equilibria.
SymmetricPoint best_response_map(const GroupedGame& game, SymmetricPoint p,
                                 double tol);

// Optional per-iteration observer: (iteration, residual).
using IterationObserver = std::function<void(int, double)>;

// Damped iteration p <- (1 - damping) * p + damping * map(p) until the
// residual max(|map(p) - p|) drops to fp_tol or max_iter steps have been
// taken. Requires 0 < damping <= 1 and max_iter >= 1. Non-convergence is
// reported through the trace, never thrown.
FixedPointTrace solve_fixed_point(const GroupedGame& game,
                                  SymmetricPoint start, double damping,
                                  double fp_tol, int max_iter,
                                  double opt_tol = 1e-8,
                                  const IterationObserver& observer = nullptr);

// Same iteration driven by best_response_map.
FixedPointTrace solve_best_response(
    const GroupedGame& game, SymmetricPoint start, double damping,
    double fp_tol, int max_iter, double opt_tol = 1e-8,
    const IterationObserver& observer = nullptr);

// Computes every player's best unilateral deviation gap at p and sets
// is_nash when all gaps are within dev_tol. By default only one
// representative per group is optimized (within-group symmetry makes the
// others identical); all_players forces an explicit check per player,
// which is the mode that catches oracle asymmetries.
EquilibriumReport nash_check(const GroupedGame& game, SymmetricPoint p,
                             double dev_tol, double opt_tol,
                             bool all_players = false);

// Equilibrium-to-saddle verification. Requires p to pass nash_check at
// deviation tolerance tol (throws hypothesis_error otherwise), then runs
// saddle_check on both in-group slices through p. The caller asserts
// |gap| <= tol/10 via the saddle results; coincidence_g1/g2 record
// whether all four args match the point within tol. The slices the
// equivalence does not rely on are reported in info_g1/info_g2.
EquilibriumReport verify_saddle_from_nash(const GroupedGame& game,
                                          SymmetricPoint p, double tol = 1e-4,
                                          double opt_tol = 1e-8,
                                          bool all_players = false);

// Saddle-to-equilibrium verification on a converged trace. Throws
// trace_error when the trace did not converge and coincidence_error when
// either slice's maximin/minimax strategies fail to coincide within tol
// (the construction needs that coincidence). Otherwise returns nash_check
// at the fixed point, with the slice results attached.
EquilibriumReport verify_nash_from_saddle(const GroupedGame& game,
                                          const FixedPointTrace& trace,
                                          double tol = 1e-4,
                                          double opt_tol = 1e-8,
                                          bool all_players = false);

}  // namespace zsg
