#include "epigame/game.hpp"

#include <algorithm>
#include <set>

#include "epigame/indexing.hpp"

namespace epigame {
namespace {

// Labels flow into composite identifiers: ',' separates profile components
// and '/' separates per-block actions in strategy labels.
void check_label(std::string_view label, const std::string& where) {
  if (label.empty()) fail(ErrorCode::ValidationError, where + ": empty label");
  if (label.find(',') != std::string_view::npos || label.find('/') != std::string_view::npos)
    fail(ErrorCode::ValidationError, where + ": label \"" + std::string(label) +
                                         "\" may not contain ',' or '/'");
}

constexpr std::size_t kMaxTableCells = 10'000'000;

}  // namespace

EpistemicGame::EpistemicGame(FiniteSpace space, UtilityKind kind, std::vector<PlayerDef> players,
                             std::vector<UtilityEntry> utilities)
    : space_(std::move(space)), kind_(kind), players_(std::move(players)),
      declared_(std::move(utilities)) {
  for (const std::string& label : space_.labels()) check_label(label, "states");
  if (players_.empty()) fail(ErrorCode::ValidationError, "players: must be non-empty");

  std::set<std::string_view> names;
  for (std::size_t p = 0; p < players_.size(); ++p) {
    const std::string where = "players[" + std::to_string(p) + "]";
    const PlayerDef& player = players_[p];
    check_label(player.name, where + ".name");
    if (!names.insert(player.name).second)
      fail(ErrorCode::ValidationError, where + ".name: duplicate player \"" + player.name + "\"");
    if (player.actions.size() < 2)
      fail(ErrorCode::ValidationError, where + ".actions: need at least two actions");
    std::set<std::string_view> actions;
    for (const std::string& action : player.actions) {
      check_label(action, where + ".actions");
      if (!actions.insert(action).second)
        fail(ErrorCode::ValidationError, where + ".actions: duplicate action \"" + action + "\"");
    }
    if (!(player.partition.space() == space_))
      fail(ErrorCode::ValidationError, where + ".partition: defined on a different state space");
    if (!(player.prior.space() == space_))
      fail(ErrorCode::ValidationError, where + ".prior: defined on a different state space");
    if (!player.prior.strictly_positive())
      fail(ErrorCode::ValidationError, where + ".prior: must be strictly positive on every state");
  }

  // Profile index layout for the compiled table.
  profile_radices_.clear();
  for (std::size_t p = 0; p < players_.size(); ++p) {
    if (kind_ == UtilityKind::Action) {
      profile_radices_.push_back(action_count(p));
    } else {
      BigInt count = strategy_count(p);
      if (count > kMaxTableCells)
        fail(ErrorCode::ValidationError,
             "players[" + std::to_string(p) + "]: strategy space has " + format_bigint(count) +
                 " elements; too large for a strategy-kind utility table");
      profile_radices_.push_back(static_cast<std::size_t>(count));
    }
  }
  BigInt stride = 1;
  for (std::size_t r : profile_radices_) stride *= r;
  if (stride * space_.size() > kMaxTableCells)
    fail(ErrorCode::ValidationError, "utilities: table needs " +
                                         format_bigint(stride * space_.size()) +
                                         " cells per player; too large");
  profile_stride_ = static_cast<std::size_t>(stride);

  // Validate entries and compile the dense table.
  values_.assign(players_.size(), std::vector<Rational>(space_.size() * profile_stride_, 0));
  std::vector<std::vector<bool>> covered(players_.size(),
                                         std::vector<bool>(space_.size() * profile_stride_, false));
  struct SortKey {
    std::size_t player, state, profile;
  };
  std::vector<std::pair<SortKey, std::size_t>> order;
  for (std::size_t k = 0; k < declared_.size(); ++k) {
    const std::string where = "utilities[" + std::to_string(k) + "]";
    const UtilityEntry& entry = declared_[k];
    if (entry.player >= players_.size())
      fail(ErrorCode::ValidationError, where + ".player: index out of range");
    if (entry.state && *entry.state >= space_.size())
      fail(ErrorCode::ValidationError, where + ".state: index out of range");

    std::size_t profile_index = 0;
    if (kind_ == UtilityKind::Action) {
      if (!entry.strategies.empty())
        fail(ErrorCode::ValidationError, where + ": strategy profile in an action-kind game");
      if (entry.actions.size() != players_.size())
        fail(ErrorCode::ValidationError, where + ".profile: expected one action per player");
      for (std::size_t p = 0; p < players_.size(); ++p) {
        if (entry.actions[p] >= action_count(p))
          fail(ErrorCode::ValidationError, where + ".profile: action index out of range");
      }
      profile_index = flat_index(entry.actions, profile_radices_);
    } else {
      if (!entry.actions.empty())
        fail(ErrorCode::ValidationError, where + ": action profile in a strategy-kind game");
      if (entry.strategies.size() != players_.size())
        fail(ErrorCode::ValidationError, where + ".strategies: expected one strategy per player");
      std::vector<std::size_t> digits(players_.size());
      for (std::size_t p = 0; p < players_.size(); ++p) {
        const std::vector<std::size_t>& blocks = entry.strategies[p];
        if (blocks.size() != players_[p].partition.block_count())
          fail(ErrorCode::ValidationError,
               where + ".strategies: expected one action per block of player \"" +
                   players_[p].name + "\"");
        for (std::size_t a : blocks) {
          if (a >= action_count(p))
            fail(ErrorCode::ValidationError, where + ".strategies: action index out of range");
        }
        digits[p] = strategy_index(Strategy{p, blocks});
      }
      profile_index = flat_index(digits, profile_radices_);
    }

    std::vector<std::size_t> states;
    if (entry.state) {
      states.push_back(*entry.state);
    } else {
      for (std::size_t s = 0; s < space_.size(); ++s) states.push_back(s);
    }
    for (std::size_t s : states) {
      std::size_t slot = s * profile_stride_ + profile_index;
      if (covered[entry.player][slot])
        fail(ErrorCode::ValidationError,
             where + ": duplicate value for player \"" + players_[entry.player].name +
                 "\", state \"" + space_.label(s) + "\"");
      covered[entry.player][slot] = true;
      values_[entry.player][slot] = entry.value;
    }
    order.push_back({{entry.player, entry.state ? *entry.state + 1 : 0, profile_index}, k});
  }

  for (std::size_t p = 0; p < players_.size(); ++p) {
    for (std::size_t slot = 0; slot < covered[p].size(); ++slot) {
      if (!covered[p][slot])
        fail(ErrorCode::ValidationError,
             "utilities: missing value for player \"" + players_[p].name + "\", state \"" +
                 space_.label(slot / profile_stride_) + "\", profile index " +
                 std::to_string(slot % profile_stride_));
    }
  }

  // Canonical declared order: (player, wildcard before explicit states, profile).
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    const SortKey &x = a.first, &y = b.first;
    if (x.player != y.player) return x.player < y.player;
    if (x.state != y.state) return x.state < y.state;
    return x.profile < y.profile;
  });
  std::vector<UtilityEntry> sorted;
  sorted.reserve(declared_.size());
  for (const auto& [key, index] : order) sorted.push_back(std::move(declared_[index]));
  declared_ = std::move(sorted);
}

std::optional<std::size_t> EpistemicGame::player_index(std::string_view name) const {
  for (std::size_t p = 0; p < players_.size(); ++p) {
    if (players_[p].name == name) return p;
  }
  return std::nullopt;
}

std::optional<std::size_t> EpistemicGame::action_index(std::size_t player,
                                                       std::string_view label) const {
  const std::vector<std::string>& actions = players_.at(player).actions;
  for (std::size_t a = 0; a < actions.size(); ++a) {
    if (actions[a] == label) return a;
  }
  return std::nullopt;
}

BigInt EpistemicGame::strategy_count(std::size_t player) const {
  BigInt count = 1;
  for (std::size_t b = 0; b < players_.at(player).partition.block_count(); ++b)
    count *= action_count(player);
  return count;
}

std::size_t EpistemicGame::checked_strategy_count(std::size_t player, std::size_t cap) const {
  BigInt count = strategy_count(player);
  if (count > cap)
    fail(ErrorCode::StrategySpaceTooLarge,
         "player \"" + players_.at(player).name + "\" has " + format_bigint(count) +
             " strategies, cap is " + std::to_string(cap));
  return static_cast<std::size_t>(count);
}

Strategy EpistemicGame::strategy_from_index(std::size_t player, std::size_t index) const {
  std::size_t blocks = players_.at(player).partition.block_count();
  std::vector<std::size_t> radices(blocks, action_count(player));
  return Strategy{player, unflatten(index, radices)};
}

std::size_t EpistemicGame::strategy_index(const Strategy& strategy) const {
  std::size_t blocks = players_.at(strategy.player).partition.block_count();
  if (strategy.action_per_block.size() != blocks)
    fail(ErrorCode::ValidationError, "strategy: expected one action per partition block");
  for (std::size_t a : strategy.action_per_block) {
    if (a >= action_count(strategy.player))
      fail(ErrorCode::ValidationError, "strategy: action index out of range");
  }
  std::vector<std::size_t> radices(blocks, action_count(strategy.player));
  return flat_index(strategy.action_per_block, radices);
}

std::string EpistemicGame::strategy_label(const Strategy& strategy) const {
  const PlayerDef& player = players_.at(strategy.player);
  std::string label;
  for (std::size_t b = 0; b < strategy.action_per_block.size(); ++b) {
    if (b > 0) label += '/';
    label += player.actions.at(strategy.action_per_block[b]);
  }
  return label;
}

std::optional<Strategy> EpistemicGame::strategy_from_label(std::size_t player,
                                                           std::string_view label) const {
  std::vector<std::size_t> actions;
  std::size_t start = 0;
  while (true) {
    std::size_t slash = label.find('/', start);
    std::string_view part = label.substr(start, slash == std::string_view::npos
                                                    ? std::string_view::npos
                                                    : slash - start);
    std::optional<std::size_t> a = action_index(player, part);
    if (!a) return std::nullopt;
    actions.push_back(*a);
    if (slash == std::string_view::npos) break;
    start = slash + 1;
  }
  if (actions.size() != players_.at(player).partition.block_count()) return std::nullopt;
  return Strategy{player, std::move(actions)};
}

std::vector<std::size_t> EpistemicGame::consequence(const StrategyProfile& profile,
                                                    std::size_t state) const {
  require_profile(profile);
  std::vector<std::size_t> actions(players_.size());
  for (std::size_t p = 0; p < players_.size(); ++p)
    actions[p] = profile[p].action_per_block[players_[p].partition.block_of(state)];
  return actions;
}

const Rational& EpistemicGame::utility(std::size_t player, std::size_t state,
                                       std::span<const std::size_t> actions) const {
  if (kind_ != UtilityKind::Action)
    fail(ErrorCode::WrongUtilityKind, "action-profile utility lookup on a strategy-kind game");
  return values_.at(player).at(state * profile_stride_ + action_profile_index(actions));
}

const Rational& EpistemicGame::utility(std::size_t player, std::size_t state,
                                       const StrategyProfile& profile) const {
  if (kind_ == UtilityKind::Action) {
    std::vector<std::size_t> actions = consequence(profile, state);
    return values_.at(player).at(state * profile_stride_ + action_profile_index(actions));
  }
  return values_.at(player).at(state * profile_stride_ + strategy_profile_index(profile));
}

bool EpistemicGame::has_common_prior() const {
  for (std::size_t p = 1; p < players_.size(); ++p) {
    if (!(players_[p].prior == players_[0].prior)) return false;
  }
  return true;
}

void EpistemicGame::require_profile(const StrategyProfile& profile) const {
  if (profile.size() != players_.size())
    fail(ErrorCode::ValidationError, "profile: expected one strategy per player");
  for (std::size_t p = 0; p < players_.size(); ++p) {
    if (profile[p].player != p)
      fail(ErrorCode::ValidationError, "profile: strategies out of player order");
    strategy_index(profile[p]);  // validates shape and ranges
  }
}

std::size_t EpistemicGame::action_profile_index(std::span<const std::size_t> actions) const {
  if (actions.size() != players_.size())
    fail(ErrorCode::ValidationError, "action profile: expected one action per player");
  for (std::size_t p = 0; p < players_.size(); ++p) {
    if (actions[p] >= action_count(p))
      fail(ErrorCode::ValidationError, "action profile: action index out of range");
  }
  return flat_index(actions, profile_radices_);
}

std::size_t EpistemicGame::strategy_profile_index(const StrategyProfile& profile) const {
  require_profile(profile);
  std::vector<std::size_t> digits(players_.size());
  for (std::size_t p = 0; p < players_.size(); ++p) digits[p] = strategy_index(profile[p]);
  return flat_index(digits, profile_radices_);
}

std::vector<Strategy> enumerate_strategies(const EpistemicGame& game, std::size_t player,
                                           std::size_t cap) {
  std::size_t count = game.checked_strategy_count(player, cap);
  std::vector<Strategy> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(game.strategy_from_index(player, i));
  return out;
}

Rational expected_utility(const EpistemicGame& game, const StrategyProfile& profile,
                          std::size_t player, const Measure* measure) {
  if (player >= game.player_count())
    fail(ErrorCode::ValidationError, "expected_utility: player index out of range");
  const Measure& m = measure ? *measure : game.player(player).prior;
  if (!(m.space() == game.space()))
    fail(ErrorCode::MixedSpaces, "expected_utility: measure defined on a different state space");
  Rational total = 0;
  for (std::size_t s = 0; s < game.space().size(); ++s) {
    if (m.weight(s) == 0) continue;
    total += m.weight(s) * game.utility(player, s, profile);
  }
  return total;
}

Rational conditional_expected_utility(const EpistemicGame& game, const StrategyProfile& profile,
                                      std::size_t player, std::size_t cell) {
  if (player >= game.player_count())
    fail(ErrorCode::ValidationError, "conditional_expected_utility: player index out of range");
  const Partition& partition = game.player(player).partition;
  if (cell >= partition.block_count())
    fail(ErrorCode::ValidationError, "conditional_expected_utility: cell index out of range");
  Measure conditional = posterior(game.player(player).prior, partition.block(cell));
  return expected_utility(game, profile, player, &conditional);
}

InfoReport info_report(const EpistemicGame& game) {
  InfoReport report;
  report.imperfect.assign(game.player_count(), false);
  for (std::size_t i = 0; i < game.player_count(); ++i) {
    const Partition& mine = game.player(i).partition;
    const Measure& prior = game.player(i).prior;
    for (std::size_t ci = 0; ci < mine.block_count(); ++ci) {
      Rational base = prior.of(mine.block(ci));
      for (std::size_t j = 0; j < game.player_count(); ++j) {
        if (j == i) continue;
        const Partition& theirs = game.player(j).partition;
        for (std::size_t cj = 0; cj < theirs.block_count(); ++cj) {
          Rational p = prior.of(mine.block(ci).intersect(theirs.block(cj))) / base;
          if (p > 0 && p < 1) {
            report.imperfect[i] = true;
            report.witnesses.push_back({i, ci, j, cj, p});
          }
        }
      }
    }
  }
  return report;
}

}  // namespace epigame
