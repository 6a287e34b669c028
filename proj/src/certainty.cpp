#include "epigame/certainty.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "epigame/errors.hpp"

namespace epigame {
namespace {

// Common strategy count when all players agree, or nullopt. Guards the count
// through the materialization cap so a single system is always representable.
std::optional<std::size_t> common_strategy_count(const EpistemicGame& game) {
  std::size_t m = game.checked_strategy_count(0, kDefaultStrategyCap);
  for (std::size_t p = 1; p < game.player_count(); ++p) {
    if (game.strategy_count(p) != m) return std::nullopt;
  }
  return m;
}

BigInt factorial(std::size_t m) {
  BigInt f = 1;
  for (std::size_t k = 2; k <= m; ++k) f *= k;
  return f;
}

std::vector<std::vector<Rational>> utility_table(const EpistemicGame& game,
                                                 const CoherentSystem& sys) {
  std::vector<std::vector<Rational>> table(sys.profiles.size());
  for (std::size_t k = 0; k < sys.profiles.size(); ++k) {
    table[k].reserve(game.player_count());
    for (std::size_t i = 0; i < game.player_count(); ++i)
      table[k].push_back(expected_utility(game, sys.profiles[k], i));
  }
  return table;
}

std::optional<std::size_t> find_in_system(const EpistemicGame& game, const CoherentSystem& sys,
                                          const StrategyProfile& profile) {
  for (std::size_t k = 0; k < sys.profiles.size(); ++k) {
    if (sys.profiles[k] == profile) return k;
  }
  return std::nullopt;
}

}  // namespace

CongruenceReport check_congruence(const ResponseMap& f, const ResponseMap& g) {
  if (f.from_player != g.to_player || f.to_player != g.from_player ||
      f.from_player == f.to_player)
    fail(ErrorCode::ValidationError,
         "check_congruence: maps must point in opposite directions between two players");
  for (std::size_t v : f.image) {
    if (v >= g.image.size())
      fail(ErrorCode::DimensionMismatch,
           "check_congruence: first map targets a strategy outside the second map's domain");
  }
  for (std::size_t v : g.image) {
    if (v >= f.image.size())
      fail(ErrorCode::DimensionMismatch,
           "check_congruence: second map targets a strategy outside the first map's domain");
  }
  CongruenceReport report;
  for (std::size_t s = 0; s < f.image.size(); ++s) {
    if (g.image[f.image[s]] != s) {
      report.counterexample = CongruenceCounterexample{f.from_player, s};
      return report;
    }
  }
  for (std::size_t t = 0; t < g.image.size(); ++t) {
    if (f.image[g.image[t]] != t) {
      report.counterexample = CongruenceCounterexample{g.from_player, t};
      return report;
    }
  }
  report.ok = true;
  return report;
}

BigInt coherent_system_count(const EpistemicGame& game) {
  std::optional<std::size_t> m = common_strategy_count(game);
  if (!m) return 0;
  BigInt count = 1;
  BigInt f = factorial(*m);
  for (std::size_t p = 1; p < game.player_count(); ++p) count *= f;
  return count;
}

CoherentSystemEnumerator::CoherentSystemEnumerator(const EpistemicGame& game)
    : game_(&game), total_(coherent_system_count(game)) {
  if (total_ == 0) {
    done_ = true;
    return;
  }
  size_ = *common_strategy_count(game);
  perms_.resize(game.player_count() > 0 ? game.player_count() - 1 : 0);
  for (auto& perm : perms_) {
    perm.resize(size_);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
  }
}

std::optional<CoherentSystem> CoherentSystemEnumerator::next() {
  if (done_) return std::nullopt;
  CoherentSystem sys;
  sys.profiles.reserve(size_);
  for (std::size_t k = 0; k < size_; ++k) {
    StrategyProfile profile;
    profile.reserve(game_->player_count());
    profile.push_back(game_->strategy_from_index(0, k));
    for (std::size_t p = 1; p < game_->player_count(); ++p)
      profile.push_back(game_->strategy_from_index(p, perms_[p - 1][k]));
    sys.profiles.push_back(std::move(profile));
  }
  // Advance: last player's permutation moves fastest; a wrap carries left.
  std::size_t idx = perms_.size();
  while (idx > 0) {
    if (std::next_permutation(perms_[idx - 1].begin(), perms_[idx - 1].end())) break;
    --idx;
  }
  if (idx == 0) done_ = true;
  return sys;
}

std::vector<CoherentSystem> enumerate_coherent_systems(const EpistemicGame& game,
                                                       std::size_t cap) {
  CoherentSystemEnumerator stream(game);
  if (stream.total() > cap)
    fail(ErrorCode::EnumerationCapExceeded,
         "coherent-system count is " + format_bigint(stream.total()) + ", cap is " +
             std::to_string(cap));
  std::vector<CoherentSystem> systems;
  while (auto sys = stream.next()) systems.push_back(std::move(*sys));
  return systems;
}

void require_coherent(const EpistemicGame& game, const CoherentSystem& sys) {
  std::optional<std::size_t> m = common_strategy_count(game);
  if (!m || sys.profiles.size() != *m)
    fail(ErrorCode::ValidationError,
         "coherent system: profile count must equal every player's strategy count");
  std::vector<std::vector<bool>> seen(game.player_count(), std::vector<bool>(*m, false));
  for (const StrategyProfile& profile : sys.profiles) {
    game.require_profile(profile);
    for (std::size_t p = 0; p < game.player_count(); ++p) {
      std::size_t index = game.strategy_index(profile[p]);
      if (seen[p][index])
        fail(ErrorCode::ValidationError,
             "coherent system: player " + game.player(p).name + " repeats strategy " +
                 game.strategy_label(profile[p]));
      seen[p][index] = true;
    }
  }
}

std::vector<StrategyProfile> rational_solutions(const EpistemicGame& game,
                                                const CoherentSystem& sys) {
  require_coherent(game, sys);
  if (sys.profiles.empty()) return {};
  std::vector<std::vector<Rational>> table = utility_table(game, sys);
  std::vector<Rational> best(game.player_count());
  for (std::size_t i = 0; i < game.player_count(); ++i) {
    best[i] = table[0][i];
    for (std::size_t k = 1; k < table.size(); ++k) best[i] = std::max(best[i], table[k][i]);
  }
  std::vector<StrategyProfile> solutions;
  for (std::size_t k = 0; k < sys.profiles.size(); ++k) {
    bool all_max = true;
    for (std::size_t i = 0; i < game.player_count() && all_max; ++i)
      all_max = table[k][i] == best[i];
    if (all_max) solutions.push_back(sys.profiles[k]);
  }
  return solutions;
}

EfficiencyReport efficiency_report(const EpistemicGame& game, const CoherentSystem& sys,
                                   const std::vector<StrategyProfile>& subset) {
  require_coherent(game, sys);
  std::vector<std::vector<Rational>> table = utility_table(game, sys);
  std::vector<std::size_t> positions;
  positions.reserve(subset.size());
  for (const StrategyProfile& profile : subset) {
    std::optional<std::size_t> k = find_in_system(game, sys, profile);
    if (!k)
      fail(ErrorCode::ValidationError,
           "efficiency_report: subset contains a profile outside the system");
    positions.push_back(*k);
  }

  EfficiencyReport report;
  report.pareto.reserve(subset.size());
  for (std::size_t k : positions) {
    bool dominated = false;
    for (std::size_t t = 0; t < table.size() && !dominated; ++t) {
      bool weakly_better = true;
      bool strictly_better = false;
      for (std::size_t i = 0; i < game.player_count(); ++i) {
        if (table[t][i] < table[k][i]) {
          weakly_better = false;
          break;
        }
        if (table[t][i] > table[k][i]) strictly_better = true;
      }
      dominated = weakly_better && strictly_better;
    }
    report.pareto.push_back(!dominated);
  }
  report.essentially_unique = true;
  for (std::size_t n = 1; n < positions.size(); ++n) {
    if (table[positions[n]] != table[positions[0]]) {
      report.essentially_unique = false;
      break;
    }
  }
  return report;
}

std::vector<AdmissibleSystem> admissible_systems(const EpistemicGame& game, std::size_t cap) {
  std::vector<AdmissibleSystem> admissible;
  for (CoherentSystem& sys : enumerate_coherent_systems(game, cap)) {
    std::vector<StrategyProfile> solutions = rational_solutions(game, sys);
    if (!solutions.empty())
      admissible.push_back(AdmissibleSystem{std::move(sys), std::move(solutions)});
  }
  return admissible;
}

ResponseMap response_map(const EpistemicGame& game, const CoherentSystem& sys,
                         std::size_t from_player, std::size_t to_player) {
  require_coherent(game, sys);
  if (from_player >= game.player_count() || to_player >= game.player_count() ||
      from_player == to_player)
    fail(ErrorCode::ValidationError, "response_map: needs two distinct player indices");
  ResponseMap map;
  map.from_player = from_player;
  map.to_player = to_player;
  map.image.resize(sys.profiles.size());
  for (const StrategyProfile& profile : sys.profiles)
    map.image[game.strategy_index(profile[from_player])] =
        game.strategy_index(profile[to_player]);
  return map;
}

}  // namespace epigame
