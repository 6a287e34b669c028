#pragma once

// Shared test helpers: deterministic random generators for spaces, measures,
// partitions and games.  Everything is seeded explicitly so failures are
// reproducible.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "epigame/certainty.hpp"
#include "epigame/game.hpp"
#include "epigame/game_io.hpp"
#include "epigame/indexing.hpp"
#include "epigame/measure.hpp"
#include "epigame/rational.hpp"

namespace testsupport {

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline epigame::FiniteSpace random_space(Rng& rng, std::size_t max_states) {
  std::size_t n = pick(rng, 1, max_states);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("s" + std::to_string(i));
  return epigame::FiniteSpace(std::move(labels));
}

/// Strictly positive measure with denominator equal to the sum of small
/// random numerators; sums to exactly 1 by construction.
inline epigame::Measure random_positive_measure(Rng& rng, const epigame::FiniteSpace& space,
                                                std::size_t max_numerator = 6) {
  std::vector<std::size_t> numerators(space.size());
  for (auto& n : numerators) n = pick(rng, 1, max_numerator);
  std::size_t total = std::accumulate(numerators.begin(), numerators.end(), std::size_t{0});
  std::vector<epigame::Rational> weights;
  for (std::size_t n : numerators) weights.emplace_back(n, total);
  return epigame::Measure(space, std::move(weights));
}

/// Measure that may place zero weight on some states (but not all).
inline epigame::Measure random_measure(Rng& rng, const epigame::FiniteSpace& space,
                                       std::size_t max_numerator = 6) {
  std::vector<std::size_t> numerators(space.size());
  std::size_t total = 0;
  while (total == 0) {
    for (auto& n : numerators) n = pick(rng, 0, max_numerator);
    total = std::accumulate(numerators.begin(), numerators.end(), std::size_t{0});
  }
  std::vector<epigame::Rational> weights;
  for (std::size_t n : numerators) weights.emplace_back(n, total);
  return epigame::Measure(space, std::move(weights));
}

inline epigame::Partition random_partition(Rng& rng, const epigame::FiniteSpace& space,
                                           std::size_t max_blocks = 0) {
  std::size_t limit = max_blocks == 0 ? space.size() : std::min(max_blocks, space.size());
  std::size_t blocks = pick(rng, 1, limit);
  std::vector<std::vector<std::size_t>> members(blocks);
  // Seed each block with one state so none is empty, spread the rest.
  std::vector<std::size_t> states(space.size());
  std::iota(states.begin(), states.end(), 0);
  std::shuffle(states.begin(), states.end(), rng);
  for (std::size_t i = 0; i < states.size(); ++i) {
    std::size_t target = i < blocks ? i : pick(rng, 0, blocks - 1);
    members[target].push_back(states[i]);
  }
  std::vector<epigame::Event> events;
  for (auto& m : members) events.emplace_back(std::move(m));
  return epigame::Partition(space, std::move(events));
}

inline epigame::Rational random_small_rational(Rng& rng, std::int64_t max_abs_numerator = 9,
                                               std::int64_t max_denominator = 4) {
  std::int64_t num = static_cast<std::int64_t>(pick(rng, 0, 2 * max_abs_numerator)) -
                     max_abs_numerator;
  std::int64_t den = static_cast<std::int64_t>(pick(rng, 1, max_denominator));
  return epigame::Rational(num, den);
}

inline epigame::EpistemicGame example_game(const std::string& name) {
  return epigame::parse_game(epigame::export_example(name)).game;
}

/// Action-kind game with random partitions and a full random utility table.
/// With `state_dependent == false` every utility entry is a wildcard, so the
/// payoff depends on the action profile alone.
inline epigame::EpistemicGame random_action_game(Rng& rng, std::size_t players = 2,
                                                 std::size_t max_states = 3,
                                                 std::size_t max_actions = 3,
                                                 bool state_dependent = true,
                                                 bool common_prior = true) {
  using namespace epigame;
  FiniteSpace space = random_space(rng, max_states);
  Measure shared = random_positive_measure(rng, space);
  std::vector<PlayerDef> defs;
  std::vector<std::size_t> action_counts;
  for (std::size_t p = 0; p < players; ++p) {
    std::size_t actions = pick(rng, 2, max_actions);
    action_counts.push_back(actions);
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < actions; ++a)
      labels.push_back(std::string(1, static_cast<char>('a' + a)));
    defs.push_back({"p" + std::to_string(p), std::move(labels), random_partition(rng, space),
                    common_prior ? shared : random_positive_measure(rng, space)});
  }
  std::vector<UtilityEntry> utilities;
  std::vector<std::size_t> digits(players, 0);
  do {
    if (state_dependent) {
      for (std::size_t s = 0; s < space.size(); ++s)
        for (std::size_t p = 0; p < players; ++p)
          utilities.push_back({p, s, digits, {}, random_small_rational(rng)});
    } else {
      for (std::size_t p = 0; p < players; ++p)
        utilities.push_back({p, std::nullopt, digits, {}, random_small_rational(rng)});
    }
  } while (epigame::next_digits(digits, action_counts));
  return EpistemicGame(std::move(space), UtilityKind::Action, std::move(defs),
                       std::move(utilities));
}

/// Two players with equal strategy counts m in {2,3,4}.  Shapes may differ:
/// m == 4 can be four actions on one cell or two actions over two cells.
inline epigame::EpistemicGame random_equal_count_game(Rng& rng) {
  using namespace epigame;
  const std::size_t m = pick(rng, 2, 4);
  struct Shape {
    std::size_t actions, cells;
  };
  auto pick_shape = [&]() -> Shape {
    if (m == 4 && pick(rng, 0, 1) == 1) return {2, 2};
    return {m, 1};
  };
  const Shape shapes[2] = {pick_shape(), pick_shape()};
  const std::size_t states = std::max(shapes[0].cells, shapes[1].cells);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < states; ++i) labels.push_back("s" + std::to_string(i));
  FiniteSpace space(labels);
  Measure prior = random_positive_measure(rng, space);
  auto make_partition = [&](std::size_t cells) {
    std::vector<Event> blocks;
    if (cells == states) {
      for (std::size_t i = 0; i < states; ++i) blocks.push_back(Event({i}));
    } else {
      std::vector<std::size_t> all(states);
      std::iota(all.begin(), all.end(), 0);
      blocks.push_back(Event(all));
    }
    return Partition(space, std::move(blocks));
  };
  std::vector<PlayerDef> defs;
  std::vector<std::size_t> action_counts;
  for (std::size_t p = 0; p < 2; ++p) {
    std::vector<std::string> acts;
    for (std::size_t a = 0; a < shapes[p].actions; ++a)
      acts.push_back(std::string(1, static_cast<char>('a' + a)));
    action_counts.push_back(shapes[p].actions);
    defs.push_back({"p" + std::to_string(p), std::move(acts), make_partition(shapes[p].cells),
                    prior});
  }
  std::vector<UtilityEntry> utilities;
  std::vector<std::size_t> digits(2, 0);
  do {
    for (std::size_t s = 0; s < space.size(); ++s)
      for (std::size_t p = 0; p < 2; ++p)
        utilities.push_back({p, s, digits, {}, random_small_rational(rng)});
  } while (epigame::next_digits(digits, action_counts));
  return EpistemicGame(std::move(space), UtilityKind::Action, std::move(defs),
                       std::move(utilities));
}

inline epigame::StrategyProfile profile_from_indices(const epigame::EpistemicGame& game,
                                                     const std::vector<std::size_t>& indices) {
  epigame::StrategyProfile profile;
  for (std::size_t p = 0; p < indices.size(); ++p)
    profile.push_back(game.strategy_from_index(p, indices[p]));
  return profile;
}

inline std::vector<epigame::StrategyProfile> all_profiles(const epigame::EpistemicGame& game) {
  std::vector<std::size_t> radices;
  for (std::size_t p = 0; p < game.player_count(); ++p)
    radices.push_back(game.checked_strategy_count(p, epigame::kDefaultStrategyCap));
  std::vector<epigame::StrategyProfile> out;
  std::vector<std::size_t> digits(radices.size(), 0);
  do {
    out.push_back(profile_from_indices(game, digits));
  } while (epigame::next_digits(digits, radices));
  return out;
}

/// Same game with every player's utility run through their own positive
/// affine map: value -> scale[p] * value + shift[p].
inline epigame::EpistemicGame rescale_utilities(const epigame::EpistemicGame& game,
                                                const std::vector<epigame::Rational>& scale,
                                                const std::vector<epigame::Rational>& shift) {
  std::vector<epigame::UtilityEntry> entries = game.declared_utilities();
  for (epigame::UtilityEntry& entry : entries)
    entry.value = scale[entry.player] * entry.value + shift[entry.player];
  return epigame::EpistemicGame(game.space(), game.utility_kind(), game.players(),
                                std::move(entries));
}

/// Swap-form deviation inequalities computed straight from game primitives,
/// with no induced distribution in between: for every player i and actions
/// a -> a', the prior-weighted gain of keeping a where the profile plays a
/// must be nonnegative.
inline bool swap_inequalities_hold(const epigame::EpistemicGame& game,
                                   const epigame::StrategyProfile& profile,
                                   const epigame::Measure& prior) {
  using namespace epigame;
  for (std::size_t i = 0; i < game.player_count(); ++i) {
    for (std::size_t a = 0; a < game.action_count(i); ++a) {
      for (std::size_t alt = 0; alt < game.action_count(i); ++alt) {
        if (alt == a) continue;
        Rational slack = 0;
        for (std::size_t w = 0; w < game.space().size(); ++w) {
          std::vector<std::size_t> played = game.consequence(profile, w);
          if (played[i] != a) continue;
          std::vector<std::size_t> swapped = played;
          swapped[i] = alt;
          slack += prior.weight(w) * (game.utility(i, w, played) - game.utility(i, w, swapped));
        }
        if (slack < 0) return false;
      }
    }
  }
  return true;
}

/// Definition-level recomputation of a coherent system's rational solutions,
/// their Pareto status within the system, and essential uniqueness.
struct SystemFacts {
  std::vector<std::size_t> solutions;  // indices into sys.profiles
  bool solutions_pareto = true;
  bool essentially_unique = true;
};

inline SystemFacts system_facts(const epigame::EpistemicGame& game,
                                const epigame::CoherentSystem& sys) {
  using namespace epigame;
  const std::size_t n = game.player_count();
  const std::size_t m = sys.profiles.size();
  std::vector<std::vector<Rational>> value(n, std::vector<Rational>(m));
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t k = 0; k < m; ++k)
      value[p][k] = expected_utility(game, sys.profiles[k], p);
  std::vector<Rational> best(n);
  for (std::size_t p = 0; p < n; ++p) best[p] = *std::max_element(value[p].begin(), value[p].end());

  SystemFacts facts;
  for (std::size_t k = 0; k < m; ++k) {
    bool maximal = true;
    for (std::size_t p = 0; p < n; ++p) maximal = maximal && value[p][k] == best[p];
    if (maximal) facts.solutions.push_back(k);
  }
  for (std::size_t k : facts.solutions) {
    for (std::size_t other = 0; other < m; ++other) {
      bool weakly_better = true, strictly = false;
      for (std::size_t p = 0; p < n; ++p) {
        if (value[p][other] < value[p][k]) weakly_better = false;
        if (value[p][other] > value[p][k]) strictly = true;
      }
      if (weakly_better && strictly) facts.solutions_pareto = false;
    }
    for (std::size_t other : facts.solutions)
      for (std::size_t p = 0; p < n; ++p)
        if (value[p][other] != value[p][k]) facts.essentially_unique = false;
  }
  return facts;
}

}  // namespace testsupport
