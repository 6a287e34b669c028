#include "epigame/uncertainty.hpp"

#include <string>

#include "epigame/errors.hpp"

namespace epigame {
namespace {

bool constant_image(const std::vector<std::vector<std::size_t>>& image) {
  for (std::size_t s = 1; s < image.size(); ++s) {
    if (image[s] != image[0]) return false;
  }
  return true;
}

}  // namespace

PlayerConjecture make_conjecture(const EpistemicGame& game, std::size_t player,
                                 std::vector<std::vector<std::size_t>> image) {
  PlayerConjecture conj;
  conj.player = player;
  conj.image = std::move(image);
  conj.fixed = constant_image(conj.image);
  require_conjecture(game, conj);
  return conj;
}

void require_conjecture(const EpistemicGame& game, const PlayerConjecture& conj) {
  if (conj.player >= game.player_count())
    fail(ErrorCode::ValidationError, "conjecture: player index out of range");
  std::size_t own = game.checked_strategy_count(conj.player, kDefaultStrategyCap);
  if (conj.image.size() != own)
    fail(ErrorCode::ValidationError,
         "conjecture for player " + game.player(conj.player).name + ": expected " +
             std::to_string(own) + " rows, got " + std::to_string(conj.image.size()));
  for (const auto& row : conj.image) {
    if (row.size() + 1 != game.player_count())
      fail(ErrorCode::ValidationError,
           "conjecture for player " + game.player(conj.player).name +
               ": each row must name one strategy per other player");
    std::size_t k = 0;
    for (std::size_t other = 0; other < game.player_count(); ++other) {
      if (other == conj.player) continue;
      if (game.strategy_count(other) <= row[k])
        fail(ErrorCode::ValidationError,
             "conjecture for player " + game.player(conj.player).name +
                 ": strategy index out of range for player " + game.player(other).name);
      ++k;
    }
  }
  if (conj.fixed != constant_image(conj.image))
    fail(ErrorCode::ValidationError, "conjecture for player " +
                                         game.player(conj.player).name +
                                         ": fixed flag does not match the mapping");
}

void require_conjecture_profile(const EpistemicGame& game, const ConjectureProfile& profile) {
  if (profile.size() != game.player_count())
    fail(ErrorCode::ValidationError, "conjecture profile: need one conjecture per player");
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (profile[i].player != i)
      fail(ErrorCode::ValidationError,
           "conjecture profile: entry " + std::to_string(i) + " belongs to another player");
    require_conjecture(game, profile[i]);
  }
}

StrategyProfile conjectured_profile(const EpistemicGame& game, const PlayerConjecture& conj,
                                    std::size_t strategy_index) {
  StrategyProfile profile;
  profile.reserve(game.player_count());
  const std::vector<std::size_t>& row = conj.image.at(strategy_index);
  std::size_t k = 0;
  for (std::size_t p = 0; p < game.player_count(); ++p) {
    if (p == conj.player) {
      profile.push_back(game.strategy_from_index(p, strategy_index));
    } else {
      profile.push_back(game.strategy_from_index(p, row[k]));
      ++k;
    }
  }
  return profile;
}

std::vector<Strategy> best_responses_to_conjecture(const EpistemicGame& game,
                                                   const PlayerConjecture& conj,
                                                   std::size_t cap) {
  require_conjecture(game, conj);
  std::size_t own = game.checked_strategy_count(conj.player, cap);
  std::vector<Rational> values;
  values.reserve(own);
  for (std::size_t s = 0; s < own; ++s)
    values.push_back(expected_utility(game, conjectured_profile(game, conj, s), conj.player));
  Rational best = values[0];
  for (const Rational& v : values) best = std::max(best, v);
  std::vector<Strategy> responses;
  for (std::size_t s = 0; s < own; ++s) {
    if (values[s] == best) responses.push_back(game.strategy_from_index(conj.player, s));
  }
  return responses;
}

SubjectiveReport subjectively_rational(const EpistemicGame& game, const ConjectureProfile& conj,
                                       const StrategyProfile& profile, std::size_t cap) {
  require_conjecture_profile(game, conj);
  game.require_profile(profile);
  SubjectiveReport report;
  for (std::size_t i = 0; i < game.player_count(); ++i) {
    std::size_t own = game.checked_strategy_count(i, cap);
    std::size_t chosen = game.strategy_index(profile[i]);
    Rational chosen_value =
        expected_utility(game, conjectured_profile(game, conj[i], chosen), i);
    Rational best = chosen_value;
    std::size_t best_index = chosen;
    for (std::size_t s = 0; s < own; ++s) {
      Rational v = expected_utility(game, conjectured_profile(game, conj[i], s), i);
      if (v > best) {
        best = v;
        best_index = s;
      }
    }
    if (best > chosen_value)
      report.violations.push_back(SubjectiveViolation{
          i, game.strategy_from_index(i, best_index), best - chosen_value});
  }
  report.ok = report.violations.empty();
  return report;
}

bool conjectures_correct(const EpistemicGame& game, const ConjectureProfile& conj,
                         const StrategyProfile& profile) {
  require_conjecture_profile(game, conj);
  game.require_profile(profile);
  for (std::size_t i = 0; i < game.player_count(); ++i) {
    const std::vector<std::size_t>& row = conj[i].image[game.strategy_index(profile[i])];
    std::size_t k = 0;
    for (std::size_t other = 0; other < game.player_count(); ++other) {
      if (other == i) continue;
      if (row[k] != game.strategy_index(profile[other])) return false;
      ++k;
    }
  }
  return true;
}

const char* solution_class_name(SolutionClass c) {
  switch (c) {
    case SolutionClass::SubjectiveCorrelatedEquilibrium:
      return "subjective_correlated_equilibrium";
    case SolutionClass::RationalIncorrectConjectures:
      return "rational_incorrect_conjectures";
    case SolutionClass::Irrational:
      return "irrational";
  }
  return "unknown";
}

SolutionClass classify_solution(const EpistemicGame& game, const ConjectureProfile& conj,
                                const StrategyProfile& profile, std::size_t cap) {
  if (!subjectively_rational(game, conj, profile, cap).ok) return SolutionClass::Irrational;
  return conjectures_correct(game, conj, profile)
             ? SolutionClass::SubjectiveCorrelatedEquilibrium
             : SolutionClass::RationalIncorrectConjectures;
}

}  // namespace epigame
