#pragma once

#include <cstddef>
#include <vector>

#include "epigame/game.hpp"
#include "epigame/rational.hpp"

namespace epigame {

// A player's strategy-level conjecture about everyone else: for each of the
// player's own strategies, the full tuple of strategies the others are
// expected to play.
struct PlayerConjecture {
  std::size_t player = 0;
  // image[s][k]: conjectured strategy index of the k-th other player (players
  // in index order with `player` skipped) when `player` plays strategy s.
  std::vector<std::vector<std::size_t>> image;
  bool fixed = false;  // true iff every row of image is identical

  bool operator==(const PlayerConjecture&) const = default;
};

// One conjecture per player, in player order.
using ConjectureProfile = std::vector<PlayerConjecture>;

// Builds a conjecture, validating dimensions and computing the `fixed` flag.
PlayerConjecture make_conjecture(const EpistemicGame& game, std::size_t player,
                                 std::vector<std::vector<std::size_t>> image);

// Throws ValidationError if the conjecture's shape does not match the game or
// its fixed flag is inconsistent with the mapping.
void require_conjecture(const EpistemicGame& game, const PlayerConjecture& conj);
void require_conjecture_profile(const EpistemicGame& game, const ConjectureProfile& profile);

// The full strategy profile realized when the conjecture's owner plays their
// strategy number `strategy_index` and everyone else plays as conjectured.
StrategyProfile conjectured_profile(const EpistemicGame& game, const PlayerConjecture& conj,
                                    std::size_t strategy_index);

// All strategies of the conjecture's owner maximizing expected utility (own
// prior) of the realized profile, in canonical enumeration order.
std::vector<Strategy> best_responses_to_conjecture(const EpistemicGame& game,
                                                   const PlayerConjecture& conj,
                                                   std::size_t cap = kDefaultStrategyCap);

struct SubjectiveViolation {
  std::size_t player = 0;
  Strategy better;  // the first best response in enumeration order
  Rational gain;    // exact expected-utility improvement over the profile
};

struct SubjectiveReport {
  bool ok = false;
  std::vector<SubjectiveViolation> violations;
};

// ok iff each player's strategy in `profile` is among that player's best
// responses to their own conjecture.
SubjectiveReport subjectively_rational(const EpistemicGame& game, const ConjectureProfile& conj,
                                       const StrategyProfile& profile,
                                       std::size_t cap = kDefaultStrategyCap);

// true iff every player's conjecture, evaluated at their actual strategy,
// names exactly the strategies the others actually play.
bool conjectures_correct(const EpistemicGame& game, const ConjectureProfile& conj,
                         const StrategyProfile& profile);

enum class SolutionClass {
  SubjectiveCorrelatedEquilibrium,
  RationalIncorrectConjectures,
  Irrational,
};

// Stable snake_case name for reports.
const char* solution_class_name(SolutionClass c);

// SubjectiveCorrelatedEquilibrium iff subjectively rational and all
// conjectures correct; RationalIncorrectConjectures iff rational but some
// conjecture wrong; Irrational otherwise.
SolutionClass classify_solution(const EpistemicGame& game, const ConjectureProfile& conj,
                                const StrategyProfile& profile,
                                std::size_t cap = kDefaultStrategyCap);

}  // namespace epigame
