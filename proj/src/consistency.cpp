#include "epigame/consistency.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <utility>

#include "epigame/errors.hpp"
#include "epigame/indexing.hpp"

namespace epigame {
namespace {

constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

BigInt bigint_pow(const BigInt& base, std::size_t exp) {
  BigInt result = 1;
  for (std::size_t k = 0; k < exp; ++k) result *= base;
  return result;
}

// One player's view within an ordered pair: strategy digits, cell visibility
// into the other player's partition, and index arithmetic.
struct Side {
  std::size_t player = 0;
  std::size_t cells = 0;
  std::size_t actions = 0;
  std::size_t strategies = 0;
  std::vector<std::vector<std::size_t>> strat;  // [s][cell] = action digit
  std::vector<std::vector<std::vector<std::size_t>>> by_cell_action;
  std::vector<std::vector<std::size_t>> visible;  // [cell] -> other side's cells
  std::vector<std::size_t> strides;               // digits -> strategy index
};

std::pair<Side, Side> build_sides(const EpistemicGame& game, std::size_t first,
                                  std::size_t second) {
  std::array<std::size_t, 2> players{first, second};
  std::array<Side, 2> sides;
  for (std::size_t k = 0; k < 2; ++k) {
    Side& side = sides[k];
    side.player = players[k];
    const Partition& partition = game.player(side.player).partition;
    side.cells = partition.block_count();
    side.actions = game.action_count(side.player);
    side.strategies = game.checked_strategy_count(side.player, kDefaultStrategyCap);
    side.strides.assign(side.cells, 1);
    for (std::size_t c = side.cells - 1; c-- > 0;)
      side.strides[c] = side.strides[c + 1] * side.actions;
    std::vector<std::size_t> radices(side.cells, side.actions);
    side.strat.reserve(side.strategies);
    for (std::size_t s = 0; s < side.strategies; ++s)
      side.strat.push_back(unflatten(s, radices));
    side.by_cell_action.assign(side.cells,
                               std::vector<std::vector<std::size_t>>(side.actions));
    for (std::size_t s = 0; s < side.strategies; ++s)
      for (std::size_t c = 0; c < side.cells; ++c)
        side.by_cell_action[c][side.strat[s][c]].push_back(s);
  }
  for (std::size_t k = 0; k < 2; ++k) {
    const Partition& mine = game.player(sides[k].player).partition;
    const Partition& theirs = game.player(sides[1 - k].player).partition;
    sides[k].visible.assign(sides[k].cells, {});
    for (std::size_t c = 0; c < sides[k].cells; ++c)
      for (std::size_t d = 0; d < theirs.block_count(); ++d)
        if (!mine.block(c).intersect(theirs.block(d)).empty())
          sides[k].visible[c].push_back(d);
  }
  return {std::move(sides[0]), std::move(sides[1])};
}

std::size_t digits_to_index(const std::vector<std::size_t>& digits,
                            const std::vector<std::size_t>& strides) {
  std::size_t index = 0;
  for (std::size_t c = 0; c < digits.size(); ++c) index += digits[c] * strides[c];
  return index;
}

}  // namespace

ScenarioSearchReport search_bay_scenarios(const EpistemicGame& game,
                                          std::pair<std::size_t, std::size_t> players,
                                          const ScenarioSearchOptions& options) {
  if (game.player_count() < 2)
    fail(ErrorCode::WrongPlayerCount, "search_bay_scenarios: requires at least two players");
  if (players.first >= game.player_count() || players.second >= game.player_count() ||
      players.first == players.second)
    fail(ErrorCode::ValidationError,
         "search_bay_scenarios: needs two distinct player indices");

  auto [first_side, second_side] = build_sides(game, players.first, players.second);

  auto side_space = [&](const Side& mine, const Side& theirs) {
    std::size_t coords = options.require_inv ? mine.cells : mine.cells * mine.actions;
    return bigint_pow(BigInt(theirs.strategies), coords);
  };
  BigInt space_first = side_space(first_side, second_side);
  BigInt space_second = side_space(second_side, first_side);

  ScenarioSearchReport report;
  report.first_player = players.first;
  report.second_player = players.second;
  report.require_inv = options.require_inv;
  report.search_size = space_first * space_second;
  report.witness_count = 0;

  if (report.search_size > options.space_cap)
    fail(ErrorCode::ScenarioSpaceTooLarge,
         "scenario space has " + format_bigint(report.search_size) + " elements, cap is " +
             format_bigint(options.space_cap));

  if (first_side.strategies != second_side.strategies) {
    // Mutually correct conjectures pair the two strategy sets bijectively;
    // with different cardinalities every scenario fails.
    report.exhausted = true;
    report.witnesses_complete = true;
    return report;
  }

  // Enumerate the cheaper side's conjecture table; the other side is forced.
  bool x_is_first = space_first <= space_second;
  const Side& X = x_is_first ? first_side : second_side;
  const Side& Y = x_is_first ? second_side : first_side;
  std::size_t m = X.strategies;

  // Y-cells' hidden X-cells (no overlap): those digits of a conjectured
  // strategy are never tested against reality and stay free.
  std::vector<std::vector<std::size_t>> hidden(Y.cells);
  std::size_t free_per_completion = 0;
  for (std::size_t d = 0; d < Y.cells; ++d) {
    std::size_t v = 0;
    for (std::size_t c = 0; c < X.cells; ++c) {
      if (v < Y.visible[d].size() && Y.visible[d][v] == c)
        ++v;
      else
        hidden[d].push_back(c);
    }
    free_per_completion += Y.actions * hidden[d].size();
  }
  BigInt completions_each = bigint_pow(BigInt(X.actions), free_per_completion);

  std::size_t coords = options.require_inv ? X.cells : X.cells * X.actions;
  std::vector<std::size_t> psi(coords, 0);
  std::vector<std::size_t> psi_radices(coords, m);
  auto psi_at = [&](std::size_t cell, std::size_t action) {
    return options.require_inv ? psi[cell] : psi[cell * X.actions + action];
  };

  std::vector<std::size_t> pres(Y.cells);
  std::vector<std::size_t> response(m);
  std::vector<std::size_t> inverse(m);
  std::vector<char> seen(m);
  // pins[d][b]: forced digits of the Y-side conjecture at coordinate (cell d,
  // action b), aligned with Y.visible[d].
  std::vector<std::vector<std::vector<std::size_t>>> pins(
      Y.cells, std::vector<std::vector<std::size_t>>(Y.actions));

  do {
    // Glue this side's cell conjectures into one response per own strategy.
    bool valid = true;
    for (std::size_t s = 0; s < m && valid; ++s) {
      std::fill(pres.begin(), pres.end(), kUnset);
      for (std::size_t c = 0; c < X.cells && valid; ++c) {
        std::size_t t = psi_at(c, X.strat[s][c]);
        for (std::size_t d : X.visible[c]) {
          std::size_t v = Y.strat[t][d];
          if (pres[d] == kUnset)
            pres[d] = v;
          else if (pres[d] != v)
            valid = false;
        }
      }
      if (valid) response[s] = digits_to_index(pres, Y.strides);
    }
    if (valid) {
      std::fill(seen.begin(), seen.end(), 0);
      for (std::size_t s = 0; s < m; ++s) {
        if (seen[response[s]]) {
          valid = false;
          break;
        }
        seen[response[s]] = 1;
      }
    }
    if (valid) {
      for (std::size_t s = 0; s < m; ++s) inverse[response[s]] = s;
      // The other side's conjecture at (d, b) must match, on every visible
      // cell, the strategy this side would answer with — for every own
      // strategy of Y that plays b at d.
      for (std::size_t d = 0; d < Y.cells && valid; ++d) {
        for (std::size_t b = 0; b < Y.actions && valid; ++b) {
          std::vector<std::size_t>& pin = pins[d][b];
          pin.assign(Y.visible[d].size(), kUnset);
          for (std::size_t sy : Y.by_cell_action[d][b]) {
            std::size_t sx = inverse[sy];
            for (std::size_t k = 0; k < pin.size(); ++k) {
              std::size_t v = X.strat[sx][Y.visible[d][k]];
              if (pin[k] == kUnset)
                pin[k] = v;
              else if (pin[k] != v)
                valid = false;
            }
            if (!valid) break;
          }
        }
      }
    }
    if (valid) {
      report.witness_count += completions_each;
      std::size_t remaining = options.witness_list_cap > report.witnesses.size()
                                  ? options.witness_list_cap - report.witnesses.size()
                                  : 0;
      if (remaining > 0) {
        std::vector<std::vector<std::size_t>> x_table(
            X.cells, std::vector<std::size_t>(X.actions));
        for (std::size_t c = 0; c < X.cells; ++c)
          for (std::size_t a = 0; a < X.actions; ++a) x_table[c][a] = psi_at(c, a);
        std::vector<std::size_t> free_digits(free_per_completion, 0);
        std::vector<std::size_t> free_radices(free_per_completion, X.actions);
        std::vector<std::size_t> digits(X.cells);
        do {
          std::vector<std::vector<std::size_t>> y_table(
              Y.cells, std::vector<std::size_t>(Y.actions));
          std::size_t pos = 0;
          for (std::size_t d = 0; d < Y.cells; ++d) {
            for (std::size_t b = 0; b < Y.actions; ++b) {
              for (std::size_t k = 0; k < Y.visible[d].size(); ++k)
                digits[Y.visible[d][k]] = pins[d][b][k];
              for (std::size_t c : hidden[d]) digits[c] = free_digits[pos++];
              y_table[d][b] = digits_to_index(digits, X.strides);
            }
          }
          ResponseScenario scenario;
          scenario.first_player = players.first;
          scenario.second_player = players.second;
          scenario.psi_first = x_is_first ? x_table : y_table;
          scenario.psi_second = x_is_first ? y_table : x_table;
          report.witnesses.push_back(std::move(scenario));
        } while (--remaining > 0 && next_digits(free_digits, free_radices));
      }
    }
  } while (next_digits(psi, psi_radices));

  report.exhausted = true;
  report.witnesses_complete = BigInt(report.witnesses.size()) == report.witness_count;
  return report;
}

ResponseMap scenario_response_map(const EpistemicGame& game, const ResponseScenario& scenario,
                                  std::size_t side) {
  if (side > 1)
    fail(ErrorCode::ValidationError, "scenario_response_map: side must be 0 or 1");
  std::size_t from = side == 0 ? scenario.first_player : scenario.second_player;
  std::size_t to = side == 0 ? scenario.second_player : scenario.first_player;
  auto [mine, theirs] = build_sides(game, from, to);
  const auto& table = side == 0 ? scenario.psi_first : scenario.psi_second;
  if (table.size() != mine.cells)
    fail(ErrorCode::DimensionMismatch, "scenario table has the wrong number of cells");
  for (const auto& row : table) {
    if (row.size() != mine.actions)
      fail(ErrorCode::DimensionMismatch, "scenario table has the wrong number of actions");
    for (std::size_t t : row)
      if (t >= theirs.strategies)
        fail(ErrorCode::DimensionMismatch, "scenario table names an unknown strategy");
  }
  ResponseMap map;
  map.from_player = from;
  map.to_player = to;
  map.image.resize(mine.strategies);
  std::vector<std::size_t> pres(theirs.cells);
  for (std::size_t s = 0; s < mine.strategies; ++s) {
    std::fill(pres.begin(), pres.end(), kUnset);
    for (std::size_t c = 0; c < mine.cells; ++c) {
      std::size_t t = table[c][mine.strat[s][c]];
      for (std::size_t d : mine.visible[c]) {
        std::size_t v = theirs.strat[t][d];
        if (pres[d] == kUnset)
          pres[d] = v;
        else if (pres[d] != v)
          fail(ErrorCode::ValidationError,
               "scenario conjectures do not glue into a single response");
      }
    }
    map.image[s] = digits_to_index(pres, theirs.strides);
  }
  return map;
}

TheoremReport check_theorem1(const EpistemicGame& game, const BigInt& space_cap) {
  if (game.player_count() < 2)
    fail(ErrorCode::WrongPlayerCount, "check_theorem1: requires at least two players");
  ScenarioSearchOptions options;
  options.require_inv = true;
  options.space_cap = space_cap;
  options.witness_list_cap = 0;
  TheoremReport report;
  report.holds = true;
  for (std::size_t i = 0; i < game.player_count(); ++i) {
    for (std::size_t j = 0; j < game.player_count(); ++j) {
      if (i == j) continue;
      ScenarioSearchReport search = search_bay_scenarios(game, {i, j}, options);
      report.pairs.push_back({i, j, search.search_size, search.witness_count});
      if (search.witness_count != 0) report.holds = false;
    }
  }
  report.detail = report.holds
                      ? "no ordered pair admits an always-correct action-invariant "
                        "conjecture system"
                      : "some ordered pair admits an always-correct action-invariant "
                        "conjecture system";
  return report;
}

TheoremReport check_theorem2(const EpistemicGame& game, const BigInt& space_cap) {
  if (game.player_count() < 2)
    fail(ErrorCode::WrongPlayerCount, "check_theorem2: requires at least two players");
  InfoReport info = info_report(game);
  if (info.witnesses.empty())
    fail(ErrorCode::NotImperfectInformation, "every player has perfect information");
  ScenarioSearchOptions options;
  options.require_inv = false;
  options.space_cap = space_cap;
  options.witness_list_cap = 0;
  TheoremReport report;
  report.holds = true;
  for (std::size_t i = 0; i < game.player_count(); ++i) {
    for (std::size_t j = 0; j < game.player_count(); ++j) {
      if (i == j) continue;
      bool imperfect_pair = false;
      for (const InfoWitness& w : info.witnesses)
        if (w.player == i && w.other_player == j) imperfect_pair = true;
      if (!imperfect_pair) continue;
      ScenarioSearchReport search = search_bay_scenarios(game, {i, j}, options);
      report.pairs.push_back({i, j, search.search_size, search.witness_count});
      if (search.witness_count != 0) report.holds = false;
    }
  }
  report.detail = report.holds
                      ? "no imperfect-information pair admits an always-correct "
                        "conjecture system"
                      : "some imperfect-information pair admits an always-correct "
                        "conjecture system";
  return report;
}

DecompositionReport decomposition_check(const EpistemicGame& game, std::size_t cap) {
  if (game.player_count() != 1)
    fail(ErrorCode::WrongPlayerCount, "decomposition_check: requires exactly one player");
  std::size_t m = game.checked_strategy_count(0, cap);
  const Partition& partition = game.player(0).partition;
  const Measure& prior = game.player(0).prior;
  std::size_t cells = partition.block_count();
  std::size_t actions = game.action_count(0);
  std::size_t states = game.space().size();

  std::vector<std::vector<std::size_t>> digits;
  digits.reserve(m);
  std::vector<std::vector<Rational>> value(m, std::vector<Rational>(states));
  StrategyProfile profile(1);
  for (std::size_t s = 0; s < m; ++s) {
    profile[0] = game.strategy_from_index(0, s);
    digits.push_back(profile[0].action_per_block);
    for (std::size_t w = 0; w < states; ++w) value[s][w] = game.utility(0, w, profile);
  }
  std::vector<std::size_t> strides(cells, 1);
  for (std::size_t c = cells - 1; c-- > 0;) strides[c] = strides[c + 1] * actions;

  std::vector<Rational> expect(m, Rational(0));
  for (std::size_t s = 0; s < m; ++s)
    for (std::size_t w = 0; w < states; ++w) expect[s] += prior.weight(w) * value[s][w];

  DecompositionReport report;
  report.optimum = expect[0];
  for (const Rational& e : expect) report.optimum = std::max(report.optimum, e);
  std::vector<std::size_t> optima;
  for (std::size_t s = 0; s < m; ++s) {
    if (expect[s] == report.optimum) {
      optima.push_back(s);
      report.global_optima.push_back(game.strategy_from_index(0, s));
    }
  }

  // Unnormalized conditional value of playing `a` throughout cell `c` while
  // the rest of the strategy stays as in `t`.
  auto conditional = [&](std::size_t t, std::size_t c, std::size_t a) {
    std::size_t adjusted = t - digits[t][c] * strides[c] + a * strides[c];
    Rational total = 0;
    for (std::size_t w : partition.block(c).members())
      total += prior.weight(w) * value[adjusted][w];
    return total;
  };

  report.cellwise_consistent = false;
  std::string first_failure;
  for (std::size_t star : optima) {
    bool ok = true;
    for (std::size_t c = 0; c < cells && ok; ++c) {
      std::size_t chosen = digits[star][c];
      for (std::size_t t = 0; t < m && ok; ++t) {
        Rational base = conditional(t, c, chosen);
        for (std::size_t a = 0; a < actions && ok; ++a) {
          if (a == chosen) continue;
          if (conditional(t, c, a) > base) {
            ok = false;
            if (first_failure.empty())
              first_failure =
                  "strategy " + game.strategy_label(game.strategy_from_index(0, star)) +
                  " attains the optimum but is beaten at cell " + std::to_string(c) +
                  " under completion " +
                  game.strategy_label(game.strategy_from_index(0, t));
          }
        }
      }
    }
    if (ok) {
      report.cellwise_consistent = true;
      report.detail = "strategy " +
                      game.strategy_label(game.strategy_from_index(0, star)) +
                      " is conditionally optimal at every cell under every completion";
      return report;
    }
  }
  report.detail = first_failure.empty() ? "no globally optimal strategy exists" : first_failure;
  return report;
}

}  // namespace epigame
