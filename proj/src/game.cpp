#include "zsg/game.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace zsg {

namespace {

void validate_interval(const Interval& box, const char* name) {
  if (!std::isfinite(box.lo) || !std::isfinite(box.hi)) {
    throw construction_error(std::string(name) + ": bounds must be finite");
  }
  if (!(box.lo < box.hi)) {
    throw construction_error(std::string(name) +
                             ": interval must satisfy lo < hi");
  }
}

}  // namespace

double& StrategyProfile::at(const GroupSpec& groups, int player) {
  if (player < groups.m) return g1[static_cast<std::size_t>(player)];
  return g2[static_cast<std::size_t>(player - groups.m)];
}

double StrategyProfile::at(const GroupSpec& groups, int player) const {
  if (player < groups.m) return g1[static_cast<std::size_t>(player)];
  return g2[static_cast<std::size_t>(player - groups.m)];
}

GroupedGame::GroupedGame(GroupSpec groups, Interval space1, Interval space2,
                         PayoffFn payoff)
    : groups_(groups),
      space1_(space1),
      space2_(space2),
      payoff_(std::move(payoff)) {
  if (groups_.m < 2 || groups_.n < 2) {
    throw construction_error("group sizes must satisfy m >= 2 and n >= 2");
  }
  validate_interval(space1_, "group-1 strategy space");
  validate_interval(space2_, "group-2 strategy space");
  if (!payoff_) {
    throw construction_error("payoff oracle must be callable");
  }
}

int GroupedGame::group_of(int player) const {
  if (player < 0 || player >= players()) {
    throw invalid_player_error("player index " + std::to_string(player) +
                               " out of range [0, " +
                               std::to_string(players()) + ")");
  }
  return player < groups_.m ? 1 : 2;
}

int GroupedGame::index_in_group(int player) const {
  return group_of(player) == 1 ? player : player - groups_.m;
}

const Interval& GroupedGame::space_of(int player) const {
  return group_of(player) == 1 ? space1_ : space2_;
}

double GroupedGame::payoff(int player, const StrategyProfile& profile) const {
  group_of(player);  // validates the index
  if (static_cast<int>(profile.g1.size()) != groups_.m ||
      static_cast<int>(profile.g2.size()) != groups_.n) {
    throw profile_error("profile shape (" + std::to_string(profile.g1.size()) +
                        ", " + std::to_string(profile.g2.size()) +
                        ") does not match groups (" +
                        std::to_string(groups_.m) + ", " +
                        std::to_string(groups_.n) + ")");
  }
  for (double s : profile.g1) {
    if (!space1_.contains(s)) {
      throw profile_error("group-1 strategy " + std::to_string(s) +
                          " outside [" + std::to_string(space1_.lo) + ", " +
                          std::to_string(space1_.hi) + "]");
    }
  }
  for (double s : profile.g2) {
    if (!space2_.contains(s)) {
      throw profile_error("group-2 strategy " + std::to_string(s) +
                          " outside [" + std::to_string(space2_.lo) + ", " +
                          std::to_string(space2_.hi) + "]");
    }
  }
  return payoff_(player, profile);
}

double evaluate_payoff(const GroupedGame& game, int player,
                       const StrategyProfile& profile) {
  return game.payoff(player, profile);
}

ZeroSumReport check_group_zero_sum(const GroupedGame& game,
                                   const StrategyProfile& profile,
                                   double tol) {
  ZeroSumReport report;
  for (int i = 0; i < game.groups().m; ++i) {
    report.residual_g1 += evaluate_payoff(game, i, profile);
  }
  for (int k = 0; k < game.groups().n; ++k) {
    report.residual_g2 += evaluate_payoff(game, game.groups().m + k, profile);
  }
  report.within_tol = std::abs(report.residual_g1) <= tol &&
                      std::abs(report.residual_g2) <= tol;
  return report;
}

StrategyProfile swap_players(const GroupSpec& groups,
                             const StrategyProfile& profile, int i, int j) {
  StrategyProfile swapped = profile;
  std::swap(swapped.at(groups, i), swapped.at(groups, j));
  return swapped;
}

bool check_group_symmetry(const GroupedGame& game,
                          const StrategyProfile& profile, int i, int j,
                          double tol) {
  if (game.group_of(i) != game.group_of(j)) {
    throw invalid_pair_error("players " + std::to_string(i) + " and " +
                             std::to_string(j) +
                             " belong to different groups");
  }
  StrategyProfile swapped = swap_players(game.groups(), profile, i, j);
  if (std::abs(evaluate_payoff(game, i, profile) -
               evaluate_payoff(game, j, swapped)) > tol) {
    return false;
  }
  for (int k = 0; k < game.players(); ++k) {
    if (k == i || k == j) continue;
    if (std::abs(evaluate_payoff(game, k, profile) -
                 evaluate_payoff(game, k, swapped)) > tol) {
      return false;
    }
  }
  return true;
}

}  // namespace zsg
