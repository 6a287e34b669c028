#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "epigame/measure.hpp"
#include "epigame/rational.hpp"

namespace epigame {

inline constexpr std::size_t kDefaultStrategyCap = 1'000'000;

enum class UtilityKind { Action, Strategy };

struct PlayerDef {
  std::string name;
  std::vector<std::string> actions;  // at least two, unique
  Partition partition;
  Measure prior;  // strictly positive on every state
};

/// One declared utility value.  `state == nullopt` means "every state".
/// For action-kind games `actions` holds one action index per player; for
/// strategy-kind games `strategies` holds, per player, one action index per
/// partition block.  The unused field stays empty.
struct UtilityEntry {
  std::size_t player = 0;
  std::optional<std::size_t> state;
  std::vector<std::size_t> actions;
  std::vector<std::vector<std::size_t>> strategies;
  Rational value;
};

/// A pure strategy: one action per block of the player's partition, i.e. a
/// sigma(partition)-measurable act.  Identified by (player, per-block
/// actions); enumeration order is lexicographic in the per-block actions
/// with block 0 most significant.
struct Strategy {
  std::size_t player = 0;
  std::vector<std::size_t> action_per_block;

  friend bool operator==(const Strategy&, const Strategy&) = default;
};

/// One strategy per player, in player order.
using StrategyProfile = std::vector<Strategy>;

/// Finite epistemic game: state space, per-player information partitions and
/// priors, and a total utility table.  Immutable after construction; the
/// constructor performs full validation and throws ValidationError with the
/// offending field named.
class EpistemicGame {
public:
  EpistemicGame(FiniteSpace space, UtilityKind kind, std::vector<PlayerDef> players,
                std::vector<UtilityEntry> utilities);

  const FiniteSpace& space() const { return space_; }
  UtilityKind utility_kind() const { return kind_; }
  std::size_t player_count() const { return players_.size(); }
  const PlayerDef& player(std::size_t index) const { return players_.at(index); }
  const std::vector<PlayerDef>& players() const { return players_; }
  std::optional<std::size_t> player_index(std::string_view name) const;

  /// Declared entries in canonical order (player, state with wildcard first,
  /// profile); used by the serializer for byte-stable round trips.
  const std::vector<UtilityEntry>& declared_utilities() const { return declared_; }

  std::size_t action_count(std::size_t player) const { return players_.at(player).actions.size(); }
  std::optional<std::size_t> action_index(std::size_t player, std::string_view label) const;

  BigInt strategy_count(std::size_t player) const;
  /// Exact count if it fits under `cap`, otherwise throws
  /// StrategySpaceTooLarge carrying the exact count.
  std::size_t checked_strategy_count(std::size_t player, std::size_t cap) const;

  Strategy strategy_from_index(std::size_t player, std::size_t index) const;
  std::size_t strategy_index(const Strategy& strategy) const;
  /// Per-block action labels joined with "/"; a single-block strategy is
  /// labelled by its action alone.
  std::string strategy_label(const Strategy& strategy) const;
  std::optional<Strategy> strategy_from_label(std::size_t player, std::string_view label) const;

  /// Action indices chosen at `state` under the profile, one per player.
  std::vector<std::size_t> consequence(const StrategyProfile& profile, std::size_t state) const;

  /// Action-kind lookup.  Throws WrongUtilityKind on strategy-kind games.
  const Rational& utility(std::size_t player, std::size_t state,
                          std::span<const std::size_t> actions) const;
  /// Kind-agnostic lookup: action-kind games evaluate the consequence at
  /// `state`, strategy-kind games index the profile directly.
  const Rational& utility(std::size_t player, std::size_t state,
                          const StrategyProfile& profile) const;

  bool has_common_prior() const;

  void require_profile(const StrategyProfile& profile) const;  // shape validation

private:
  FiniteSpace space_;
  UtilityKind kind_;
  std::vector<PlayerDef> players_;
  std::vector<UtilityEntry> declared_;
  // Compiled dense table: values_[player][state * stride + profile index],
  // where the profile index is mixed-radix over actions (action kind) or
  // strategy indices (strategy kind).
  std::vector<std::vector<Rational>> values_;
  std::size_t profile_stride_ = 1;
  std::vector<std::size_t> profile_radices_;

  std::size_t action_profile_index(std::span<const std::size_t> actions) const;
  std::size_t strategy_profile_index(const StrategyProfile& profile) const;
};

/// All pure strategies of the player in canonical order.  Throws
/// StrategySpaceTooLarge when the exact count exceeds `cap`.
std::vector<Strategy> enumerate_strategies(const EpistemicGame& game, std::size_t player,
                                           std::size_t cap = kDefaultStrategyCap);

/// E(u_player(profile)) under `measure`, defaulting to the player's prior.
Rational expected_utility(const EpistemicGame& game, const StrategyProfile& profile,
                          std::size_t player, const Measure* measure = nullptr);

/// E(u_player(profile) | cell) where `cell` indexes a block of the player's
/// partition; computed through the posterior of the player's prior.
Rational conditional_expected_utility(const EpistemicGame& game, const StrategyProfile& profile,
                                      std::size_t player, std::size_t cell);

struct InfoWitness {
  std::size_t player = 0;        // whose information is imperfect
  std::size_t cell = 0;          // block of that player's partition
  std::size_t other_player = 0;
  std::size_t other_cell = 0;    // block of the other player's partition
  Rational probability;          // p_player(other_cell | cell), strictly between 0 and 1
};

struct InfoReport {
  std::vector<bool> imperfect;  // per player
  std::vector<InfoWitness> witnesses;
};

/// A player has imperfect information iff some cell of theirs assigns a
/// conditional probability strictly between 0 and 1 to another player's cell.
InfoReport info_report(const EpistemicGame& game);

}  // namespace epigame
