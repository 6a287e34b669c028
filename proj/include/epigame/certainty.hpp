#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "epigame/game.hpp"
#include "epigame/rational.hpp"

namespace epigame {

// A player's conjecture about another player's strategy under strategic
// certainty: for each strategy index of `from_player` (in canonical
// enumeration order), the strategy index of `to_player` expected in response.
struct ResponseMap {
  std::size_t from_player = 0;
  std::size_t to_player = 0;
  std::vector<std::size_t> image;  // image[s] = conjectured strategy index

  bool operator==(const ResponseMap&) const = default;
};

struct CongruenceCounterexample {
  std::size_t player = 0;    // whose strategy breaks one of the compositions
  std::size_t strategy = 0;  // its index in that player's enumeration
};

struct CongruenceReport {
  bool ok = false;
  std::optional<CongruenceCounterexample> counterexample;
};

// ok iff g∘f is the identity on from-strategies and f∘g the identity on
// to-strategies, i.e. the two graphs contain exactly the same pairs read in
// both directions. `f` and `g` must point in opposite directions between the
// same two players and have mutually consistent ranges.
CongruenceReport check_congruence(const ResponseMap& f, const ResponseMap& g);

// A coherent system of strategies: an ordered list of profiles whose
// projection onto every player is a bijection onto that player's full
// strategy list.
struct CoherentSystem {
  std::vector<StrategyProfile> profiles;

  bool operator==(const CoherentSystem&) const = default;
};

// Number of coherent systems: (m!)^(n-1) when every player has exactly m
// strategies, zero when the counts differ.
BigInt coherent_system_count(const EpistemicGame& game);

// Streams coherent systems in a fixed order: player 1 keeps the canonical
// strategy enumeration; each later player's pairing runs through permutations
// in lexicographic order, with the last player's permutation varying fastest.
class CoherentSystemEnumerator {
 public:
  explicit CoherentSystemEnumerator(const EpistemicGame& game);

  const BigInt& total() const { return total_; }
  std::optional<CoherentSystem> next();

 private:
  const EpistemicGame* game_;
  BigInt total_;
  std::size_t size_ = 0;                         // common strategy count m
  std::vector<std::vector<std::size_t>> perms_;  // one per player after the first
  bool done_ = false;
};

// Materializes every coherent system. Throws EnumerationCapExceeded, naming
// the exact total, when more than `cap` systems exist.
std::vector<CoherentSystem> enumerate_coherent_systems(const EpistemicGame& game,
                                                       std::size_t cap = kDefaultStrategyCap);

// Validates that `sys` is a coherent system for this game; throws
// ValidationError otherwise.
void require_coherent(const EpistemicGame& game, const CoherentSystem& sys);

// Profiles in `sys` that maximize every player's expected utility over the
// whole system, each player judging by their own prior. May be empty.
std::vector<StrategyProfile> rational_solutions(const EpistemicGame& game,
                                                const CoherentSystem& sys);

struct EfficiencyReport {
  std::vector<bool> pareto;  // one flag per subset profile, in subset order
  bool essentially_unique = false;
};

// Pareto flags are judged within `sys`: a profile fails iff some system
// member makes one player strictly better off and nobody worse off. The
// subset is essentially unique iff all its members give every player the same
// expected utility. `subset` must consist of members of `sys`.
EfficiencyReport efficiency_report(const EpistemicGame& game, const CoherentSystem& sys,
                                   const std::vector<StrategyProfile>& subset);

struct AdmissibleSystem {
  CoherentSystem system;
  std::vector<StrategyProfile> solutions;  // nonempty by construction
};

// The coherent systems whose rational-solution set is nonempty, in
// enumeration order, each paired with its solutions.
std::vector<AdmissibleSystem> admissible_systems(const EpistemicGame& game,
                                                 std::size_t cap = kDefaultStrategyCap);

// The pairing bijection between two players' strategies induced by a coherent
// system.
ResponseMap response_map(const EpistemicGame& game, const CoherentSystem& sys,
                         std::size_t from_player, std::size_t to_player);

}  // namespace epigame
