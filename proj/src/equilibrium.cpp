#include "epigame/equilibrium.hpp"

#include <algorithm>

#include "epigame/errors.hpp"
#include "epigame/indexing.hpp"
#include "epigame/simplex.hpp"

namespace epigame {
namespace {

void require_action_kind(const EpistemicGame& game, const char* op) {
  if (game.utility_kind() != UtilityKind::Action)
    fail(ErrorCode::WrongUtilityKind, std::string(op) + ": requires action-kind utilities");
}

}  // namespace

std::vector<std::size_t> NormalFormGame::dims() const {
  std::vector<std::size_t> d;
  d.reserve(choices.size());
  for (const auto& c : choices) d.push_back(c.size());
  return d;
}

std::size_t NormalFormGame::profile_count() const {
  std::size_t total = 1;
  for (const auto& c : choices) total *= c.size();
  return total;
}

ActionDistribution make_distribution(std::vector<std::size_t> dims,
                                     std::vector<Rational> weights) {
  std::size_t total = 1;
  for (std::size_t d : dims) total *= d;
  if (weights.size() != total)
    fail(ErrorCode::DimensionMismatch, "distribution: expected " + std::to_string(total) +
                                           " weights, got " + std::to_string(weights.size()));
  Rational mass = 0;
  for (const Rational& w : weights) {
    if (w < 0) fail(ErrorCode::ValidationError, "distribution: negative weight");
    mass += w;
  }
  if (mass != 1)
    fail(ErrorCode::ValidationError,
         "distribution: weights sum to " + format_rational(mass) + ", expected 1");
  return ActionDistribution{std::move(dims), std::move(weights)};
}

BayesReport is_bayes_rational(const EpistemicGame& game, const StrategyProfile& profile) {
  require_action_kind(game, "is_bayes_rational");
  game.require_profile(profile);

  BayesReport report;
  std::vector<std::size_t> actions(game.player_count());
  for (std::size_t i = 0; i < game.player_count(); ++i) {
    const Partition& partition = game.player(i).partition;
    const Measure& prior = game.player(i).prior;
    for (std::size_t cell = 0; cell < partition.block_count(); ++cell) {
      const Event& block = partition.block(cell);
      Rational mass = prior.of(block);
      std::size_t chosen = profile[i].action_per_block[cell];
      // Unnormalized conditional payoff of playing `a` throughout the cell
      // while everyone else follows the profile.
      auto payoff = [&](std::size_t a) {
        Rational total = 0;
        for (std::size_t s : block.members()) {
          actions = game.consequence(profile, s);
          actions[i] = a;
          total += prior.weight(s) * game.utility(i, s, actions);
        }
        return total;
      };
      Rational base = payoff(chosen);
      for (std::size_t a = 0; a < game.action_count(i); ++a) {
        if (a == chosen) continue;
        Rational gain = payoff(a) - base;
        if (gain > 0) report.violations.push_back({i, cell, a, gain / mass});
      }
    }
  }
  report.ok = report.violations.empty();
  return report;
}

std::vector<StrategyProfile> enumerate_bayes_rational(const EpistemicGame& game, std::size_t cap) {
  require_action_kind(game, "enumerate_bayes_rational");
  BigInt total = 1;
  for (std::size_t p = 0; p < game.player_count(); ++p) total *= game.strategy_count(p);
  if (total > cap)
    fail(ErrorCode::StrategySpaceTooLarge, "profile space has " + format_bigint(total) +
                                               " elements, cap is " + std::to_string(cap));
  std::vector<std::size_t> radices;
  for (std::size_t p = 0; p < game.player_count(); ++p)
    radices.push_back(static_cast<std::size_t>(game.strategy_count(p)));
  std::vector<StrategyProfile> found;
  std::vector<std::size_t> digits(radices.size(), 0);
  do {
    StrategyProfile profile;
    profile.reserve(radices.size());
    for (std::size_t p = 0; p < radices.size(); ++p)
      profile.push_back(game.strategy_from_index(p, digits[p]));
    if (is_bayes_rational(game, profile).ok) found.push_back(std::move(profile));
  } while (next_digits(digits, radices));
  return found;
}

ActionDistribution induced_distribution(const EpistemicGame& game, const StrategyProfile& profile,
                                        const Measure& measure) {
  require_action_kind(game, "induced_distribution");
  game.require_profile(profile);
  if (!(measure.space() == game.space()))
    fail(ErrorCode::MixedSpaces, "induced_distribution: measure on a different state space");
  std::vector<std::size_t> dims;
  for (std::size_t p = 0; p < game.player_count(); ++p) dims.push_back(game.action_count(p));
  std::size_t total = 1;
  for (std::size_t d : dims) total *= d;
  std::vector<Rational> weights(total, Rational(0));
  for (std::size_t s = 0; s < game.space().size(); ++s) {
    std::vector<std::size_t> actions = game.consequence(profile, s);
    weights[flat_index(actions, dims)] += measure.weight(s);
  }
  return make_distribution(std::move(dims), std::move(weights));
}

NormalFormGame to_normal_form(const EpistemicGame& game, std::size_t cap) {
  require_action_kind(game, "to_normal_form");
  if (!game.has_common_prior())
    fail(ErrorCode::NoCommonPrior, "to_normal_form: players have different priors");
  const Measure& prior = game.player(0).prior;

  NormalFormGame nf;
  std::vector<std::vector<Strategy>> strategies;
  for (std::size_t p = 0; p < game.player_count(); ++p) {
    nf.players.push_back(game.player(p).name);
    strategies.push_back(enumerate_strategies(game, p, cap));
    std::vector<std::string> labels;
    for (const Strategy& s : strategies.back()) labels.push_back(game.strategy_label(s));
    nf.choices.push_back(std::move(labels));
  }
  std::vector<std::size_t> radices = nf.dims();
  BigInt total = 1;
  for (std::size_t r : radices) total *= r;
  if (total > cap)
    fail(ErrorCode::StrategySpaceTooLarge, "profile space has " + format_bigint(total) +
                                               " elements, cap is " + std::to_string(cap));
  nf.payoffs.assign(game.player_count(), {});
  for (auto& column : nf.payoffs) column.reserve(static_cast<std::size_t>(total));
  std::vector<std::size_t> digits(radices.size(), 0);
  do {
    StrategyProfile profile;
    for (std::size_t p = 0; p < radices.size(); ++p) profile.push_back(strategies[p][digits[p]]);
    for (std::size_t p = 0; p < game.player_count(); ++p)
      nf.payoffs[p].push_back(expected_utility(game, profile, p, &prior));
  } while (next_digits(digits, radices));
  return nf;
}

CEReport is_correlated_equilibrium(const NormalFormGame& game, const ActionDistribution& d) {
  std::vector<std::size_t> dims = game.dims();
  if (d.dims != dims)
    fail(ErrorCode::DimensionMismatch,
         "distribution shape does not match the game's choice sets");
  CEReport report;
  std::vector<std::size_t> digits(dims.size(), 0);
  for (std::size_t i = 0; i < dims.size(); ++i) {
    for (std::size_t told = 0; told < dims[i]; ++told) {
      for (std::size_t dev = 0; dev < dims[i]; ++dev) {
        if (dev == told) continue;
        Rational slack = 0;
        std::fill(digits.begin(), digits.end(), 0);
        do {
          if (digits[i] != told) continue;
          std::size_t here = flat_index(digits, dims);
          if (d.weights[here] == 0) continue;
          std::vector<std::size_t> swapped = digits;
          swapped[i] = dev;
          slack += d.weights[here] *
                   (game.payoffs[i][here] - game.payoffs[i][flat_index(swapped, dims)]);
        } while (next_digits(digits, dims));
        report.slacks.push_back({{i, told, dev}, slack});
        if (slack < 0) report.violations.push_back({{i, told, dev}, slack});
      }
    }
  }
  report.ok = report.violations.empty();
  return report;
}

std::vector<Rational> welfare_objective(const NormalFormGame& game) {
  std::vector<Rational> objective(game.profile_count(), Rational(0));
  for (const auto& column : game.payoffs) {
    for (std::size_t k = 0; k < objective.size(); ++k) objective[k] += column[k];
  }
  return objective;
}

std::vector<Rational> player_objective(const NormalFormGame& game, std::size_t player) {
  return game.payoffs.at(player);
}

CEResult find_correlated_equilibrium(const NormalFormGame& game,
                                     std::span<const Rational> objective) {
  std::size_t total = game.profile_count();
  if (objective.size() != total)
    fail(ErrorCode::DimensionMismatch, "objective length does not match the profile count");
  std::vector<std::size_t> dims = game.dims();

  LinearProgram lp;
  lp.variables = total;
  lp.objective.assign(objective.begin(), objective.end());
  // Swap constraints: one per (player, told, deviation).
  std::vector<std::size_t> digits(dims.size(), 0);
  for (std::size_t i = 0; i < dims.size(); ++i) {
    for (std::size_t told = 0; told < dims[i]; ++told) {
      for (std::size_t dev = 0; dev < dims[i]; ++dev) {
        if (dev == told) continue;
        LinearConstraint c;
        c.coeffs.assign(total, Rational(0));
        c.relation = Relation::GreaterEq;
        c.rhs = 0;
        std::fill(digits.begin(), digits.end(), 0);
        do {
          if (digits[i] != told) continue;
          std::size_t here = flat_index(digits, dims);
          std::vector<std::size_t> swapped = digits;
          swapped[i] = dev;
          c.coeffs[here] =
              game.payoffs[i][here] - game.payoffs[i][flat_index(swapped, dims)];
        } while (next_digits(digits, dims));
        lp.constraints.push_back(std::move(c));
      }
    }
  }
  LinearConstraint mass;
  mass.coeffs.assign(total, Rational(1));
  mass.relation = Relation::Equal;
  mass.rhs = 1;
  lp.constraints.push_back(std::move(mass));

  LPSolution solution = maximize(lp);
  if (solution.status != LPStatus::Optimal)
    fail(ErrorCode::ValidationError,
         "correlated-equilibrium solve failed; the constraint system is inconsistent");

  CEResult result;
  result.distribution = make_distribution(dims, std::move(solution.values));
  result.objective = solution.objective;
  result.certificate = is_correlated_equilibrium(game, result.distribution).slacks;
  return result;
}

}  // namespace epigame
