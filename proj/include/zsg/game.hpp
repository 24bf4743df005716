#pragma once

#include <functional>
#include <vector>

#include "zsg/errors.hpp"

namespace zsg {

// Sizes of the two player groups. Group 1 has m players, group 2 has n.
// Both groups need at least two members so the relative-payoff weight
// 1/(m-1) is defined.
struct GroupSpec {
  int m = 3;
  int n = 2;

  int total() const { return m + n; }
  bool operator==(const GroupSpec&) const = default;
};

// A compact strategy interval [lo, hi], lo < hi.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  double width() const { return hi - lo; }
  double midpoint() const { return 0.5 * (lo + hi); }
  bool contains(double x) const { return x >= lo && x <= hi; }
  bool operator==(const Interval&) const = default;
};

// One scalar strategy per player, partitioned by group.
// Player indices are global: 0..m-1 are group 1, m..m+n-1 are group 2.
struct StrategyProfile {
  std::vector<double> g1;
  std::vector<double> g2;

  static StrategyProfile symmetric(const GroupSpec& groups, double s1,
                                   double s2) {
    StrategyProfile p;
    p.g1.assign(static_cast<std::size_t>(groups.m), s1);
    p.g2.assign(static_cast<std::size_t>(groups.n), s2);
    return p;
  }

  double& at(const GroupSpec& groups, int player);
  double at(const GroupSpec& groups, int player) const;
};

// Payoff oracle: (player index, profile) -> payoff. Must be a total,
// stateless function on the strategy box, safe to call concurrently.
using PayoffFn = std::function<double(int, const StrategyProfile&)>;

// A two-group game: group sizes, one strategy interval per group, and a
// payoff oracle. The oracle is expected to be zero-sum within each group
// and symmetric under same-group swaps; check_group_zero_sum and
// check_group_symmetry test those contracts on concrete profiles.
class GroupedGame {
 public:
  GroupedGame(GroupSpec groups, Interval space1, Interval space2,
              PayoffFn payoff);

  const GroupSpec& groups() const { return groups_; }
  const Interval& space1() const { return space1_; }
  const Interval& space2() const { return space2_; }
  int players() const { return groups_.total(); }

  // 1 or 2.
  int group_of(int player) const;
  // Position of the player inside its own group.
  int index_in_group(int player) const;
  const Interval& space_of(int player) const;

  // Validated payoff evaluation; see evaluate_payoff.
  double payoff(int player, const StrategyProfile& profile) const;

 private:
  GroupSpec groups_;
  Interval space1_;
  Interval space2_;
  PayoffFn payoff_;
};

// Evaluates u_player(profile). Throws invalid_player_error for a bad index
// and profile_error when the profile has the wrong shape or leaves the
// strategy box. Deterministic: identical inputs give identical outputs.
double evaluate_payoff(const GroupedGame& game, int player,
                       const StrategyProfile& profile);

struct ZeroSumReport {
  bool within_tol = false;
  double residual_g1 = 0.0;  // sum of group-1 payoffs
  double residual_g2 = 0.0;  // sum of group-2 payoffs
};

// Checks |sum of group payoffs| <= tol for both groups at one profile.
ZeroSumReport check_group_zero_sum(const GroupedGame& game,
                                   const StrategyProfile& profile, double tol);

// Checks that transposing the strategies of same-group players i and j
// transposes their payoffs and leaves everyone else's payoff unchanged,
// all within tol. Throws invalid_pair_error when i and j belong to
// different groups.
bool check_group_symmetry(const GroupedGame& game,
                          const StrategyProfile& profile, int i, int j,
                          double tol);

// Profile with the strategies of players i and j exchanged.
StrategyProfile swap_players(const GroupSpec& groups,
                             const StrategyProfile& profile, int i, int j);

}  // namespace zsg
