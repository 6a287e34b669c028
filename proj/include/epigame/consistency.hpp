#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "epigame/certainty.hpp"
#include "epigame/game.hpp"
#include "epigame/rational.hpp"

namespace epigame {

// Scenario space sizes above this are refused rather than searched.
inline const BigInt kDefaultScenarioCap = BigInt(1) << 40;

// A pair of per-cell, per-action conjecture tables for an ordered player pair
// (first, second): psi_first[cell][action] is the full strategy (canonical
// index) of `second` that `first` expects when choosing `action` at `cell`,
// and symmetrically for psi_second.
struct ResponseScenario {
  std::size_t first_player = 0;
  std::size_t second_player = 0;
  std::vector<std::vector<std::size_t>> psi_first;
  std::vector<std::vector<std::size_t>> psi_second;

  bool operator==(const ResponseScenario&) const = default;
};

struct ScenarioSearchOptions {
  // Require each conjecture table to ignore its own-action argument.
  bool require_inv = false;
  // Upper bound on the declared scenario-space size.
  BigInt space_cap = kDefaultScenarioCap;
  // At most this many witnesses are materialized; the count stays exact.
  std::size_t witness_list_cap = 1000;
};

struct ScenarioSearchReport {
  std::size_t first_player = 0;
  std::size_t second_player = 0;
  bool require_inv = false;
  BigInt search_size;                       // declared scenario-space size
  BigInt witness_count;                     // exact number of consistent scenarios
  std::vector<ResponseScenario> witnesses;  // leading witnesses, deterministic order
  bool witnesses_complete = false;          // list holds every witness
  bool exhausted = false;                   // the full space was accounted for
};

// Finds every scenario in which both players' conjectures are always correct:
// each player's cell-level conjectures about the other must glue into a
// single strategy-level response wherever the conditioning cell makes the
// other's cell substantial, and the two response maps must be mutually
// inverse. With require_inv the tables must also ignore the own-action
// argument. Throws ScenarioSpaceTooLarge when the declared space exceeds the
// cap, naming the exact size.
ScenarioSearchReport search_bay_scenarios(const EpistemicGame& game,
                                          std::pair<std::size_t, std::size_t> players,
                                          const ScenarioSearchOptions& options = {});

// The strategy-level response map glued from one side of a witness scenario
// (side 0 = first player's conjectures, side 1 = second player's).
ResponseMap scenario_response_map(const EpistemicGame& game, const ResponseScenario& scenario,
                                  std::size_t side);

struct PairCheck {
  std::size_t first = 0;
  std::size_t second = 0;
  BigInt search_size;
  BigInt witness_count;
};

struct TheoremReport {
  bool holds = false;
  std::vector<PairCheck> pairs;
  std::string detail;
};

// Conjecture-invariance impossibility: over every ordered player pair, the
// action-invariant scenario search must come up empty.
TheoremReport check_theorem1(const EpistemicGame& game,
                             const BigInt& space_cap = kDefaultScenarioCap);

// Imperfect-information impossibility: over every ordered pair flagged by
// info_report, the unrestricted scenario search must come up empty. Throws
// NotImperfectInformation when no player is flagged.
TheoremReport check_theorem2(const EpistemicGame& game,
                             const BigInt& space_cap = kDefaultScenarioCap);

struct DecompositionReport {
  std::vector<Strategy> global_optima;  // all strategies attaining the optimum
  Rational optimum;                     // maximal expected utility
  bool cellwise_consistent = false;
  std::string detail;
};

// Single-player check of whether global optimization separates across
// information cells: true iff some globally optimal strategy picks, at every
// cell, an action that maximizes conditional expected utility no matter how
// the rest of the strategy is filled in.
DecompositionReport decomposition_check(const EpistemicGame& game,
                                        std::size_t cap = kDefaultStrategyCap);

}  // namespace epigame
