#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "epigame/game.hpp"
#include "epigame/rational.hpp"

namespace epigame {

/// Strategic form of a game: one choice list per player and a dense payoff
/// table per player, indexed by the mixed-radix profile index (player 0 most
/// significant).
struct NormalFormGame {
  std::vector<std::string> players;
  std::vector<std::vector<std::string>> choices;
  std::vector<std::vector<Rational>> payoffs;

  std::vector<std::size_t> dims() const;
  std::size_t profile_count() const;
};

/// Probability distribution over choice profiles of a matching shape.
/// Weights are >= 0 and sum to exactly 1.
struct ActionDistribution {
  std::vector<std::size_t> dims;
  std::vector<Rational> weights;  // flat, same indexing as NormalFormGame payoffs
};

/// Validates shape, nonnegativity and exact total mass 1.
ActionDistribution make_distribution(std::vector<std::size_t> dims,
                                     std::vector<Rational> weights);

struct BayesViolation {
  std::size_t player = 0;
  std::size_t cell = 0;           // block of the player's partition
  std::size_t better_action = 0;  // strictly improves conditional on the cell
  Rational gain;                  // conditional expected-utility improvement
};

struct BayesReport {
  bool ok = false;
  std::vector<BayesViolation> violations;
};

/// Bayes rationality: at every cell, the profile's action maximizes the
/// player's conditional expected utility against the others' strategies.
/// Requires action-kind utilities and at least two players.
BayesReport is_bayes_rational(const EpistemicGame& game, const StrategyProfile& profile);

/// All Bayes-rational profiles in lexicographic profile order.  Throws
/// EnumerationCapExceeded when the profile space is larger than `cap`.
std::vector<StrategyProfile> enumerate_bayes_rational(const EpistemicGame& game,
                                                      std::size_t cap = kDefaultStrategyCap);

/// Pushforward of `measure` through the profile's consequence map: the
/// probability of each action profile being played.
ActionDistribution induced_distribution(const EpistemicGame& game, const StrategyProfile& profile,
                                        const Measure& measure);

/// Strategic form with pure strategies as choices and expected utilities
/// under the common prior as payoffs.  Requires action-kind utilities and an
/// identical prior for every player.
NormalFormGame to_normal_form(const EpistemicGame& game, std::size_t cap = kDefaultStrategyCap);

struct CEConstraint {
  std::size_t player = 0;
  std::size_t told = 0;       // recommended choice
  std::size_t deviation = 0;  // alternative choice
};

struct CESlack {
  CEConstraint constraint;
  Rational slack;  // >= 0 iff the constraint holds
};

struct CEReport {
  bool ok = false;
  std::vector<CESlack> slacks;      // every constraint
  std::vector<CESlack> violations;  // the slack < 0 subset
};

/// Correlated-equilibrium test in swap form: for every player i and choices
/// a, a', the expected gain of following recommendation a rather than
/// swapping to a' is nonnegative under d.
CEReport is_correlated_equilibrium(const NormalFormGame& game, const ActionDistribution& d);

/// Objective helpers for find_correlated_equilibrium.
std::vector<Rational> welfare_objective(const NormalFormGame& game);
std::vector<Rational> player_objective(const NormalFormGame& game, std::size_t player);

struct CEResult {
  ActionDistribution distribution;
  Rational objective;
  std::vector<CESlack> certificate;  // slack of every constraint at the optimum
};

/// Maximizes the linear objective over the correlated-equilibrium polytope
/// by exact simplex.  The polytope is never empty for a finite game, but
/// failure surfaces as an internal error rather than a wrong answer.
CEResult find_correlated_equilibrium(const NormalFormGame& game,
                                     std::span<const Rational> objective);

}  // namespace epigame
