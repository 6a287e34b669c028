#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "epigame/consistency.hpp"
#include "epigame/errors.hpp"
#include "epigame/indexing.hpp"
#include "support.hpp"

using namespace epigame;
using testsupport::Rng;

namespace {

EpistemicGame zero_action_game(const std::vector<std::string>& states,
                               const std::vector<std::vector<std::vector<std::size_t>>>& blocks,
                               const std::vector<std::string>& actions) {
  FiniteSpace space(states);
  Rational share(1, static_cast<long>(states.size()));
  Measure uniform(space, std::vector<Rational>(states.size(), share));
  std::vector<PlayerDef> players;
  for (std::size_t p = 0; p < blocks.size(); ++p) {
    std::vector<Event> events;
    for (const auto& members : blocks[p]) events.push_back(Event(members));
    players.push_back({"p" + std::to_string(p), actions, Partition(space, events), uniform});
  }
  std::vector<UtilityEntry> utilities;
  std::vector<std::size_t> digits(blocks.size(), 0);
  std::vector<std::size_t> radices(blocks.size(), actions.size());
  do {
    for (std::size_t p = 0; p < blocks.size(); ++p)
      utilities.push_back({p, std::nullopt, digits, {}, Rational(0)});
  } while (next_digits(digits, radices));
  return EpistemicGame(space, UtilityKind::Action, std::move(players), std::move(utilities));
}

// Both players see everything: identical discrete partitions on two states.
EpistemicGame aligned_partitions() {
  return zero_action_game({"s0", "s1"}, {{{0}, {1}}, {{0}, {1}}}, {"a", "b"});
}

// One player distinguishes the two states, the other does not.
EpistemicGame asymmetric_partitions() {
  return zero_action_game({"s0", "s1"}, {{{0}, {1}}, {{0, 1}}}, {"a", "b"});
}

// The crossing two-cell partitions of the four-state square, three actions.
EpistemicGame crossing_three_actions() {
  return zero_action_game({"w1", "w2", "w3", "w4"}, {{{0, 1}, {2, 3}}, {{0, 2}, {1, 3}}},
                          {"x", "y", "z"});
}

// Three states fully distinguished by both players, three actions: the
// scenario space is far beyond the default cap.
EpistemicGame oversized_search() {
  return zero_action_game({"s0", "s1", "s2"}, {{{0}, {1}, {2}}, {{0}, {1}, {2}}},
                          {"x", "y", "z"});
}

struct DenseResult {
  BigInt count = 0;
  std::vector<ResponseScenario> witnesses;
};

// Literal reference search: enumerate every scenario in the declared space
// and keep those whose cell conjectures glue into strategy-level responses
// that invert each other.
DenseResult dense_search(const EpistemicGame& game, std::size_t first, std::size_t second,
                         bool require_inv) {
  struct SideView {
    std::size_t player, cells, actions, strategies;
    std::vector<std::vector<std::size_t>> strat;    // [s][cell] = action digit
    std::vector<std::vector<std::size_t>> visible;  // [cell] -> other's cells
  };
  auto view = [&](std::size_t mine, std::size_t other) {
    SideView v;
    v.player = mine;
    const Partition& part = game.player(mine).partition;
    const Partition& theirs = game.player(other).partition;
    v.cells = part.block_count();
    v.actions = game.action_count(mine);
    v.strategies = game.checked_strategy_count(mine, kDefaultStrategyCap);
    for (std::size_t s = 0; s < v.strategies; ++s)
      v.strat.push_back(game.strategy_from_index(mine, s).action_per_block);
    v.visible.assign(v.cells, {});
    for (std::size_t c = 0; c < v.cells; ++c)
      for (std::size_t d = 0; d < theirs.block_count(); ++d)
        if (!part.block(c).intersect(theirs.block(d)).empty()) v.visible[c].push_back(d);
    return v;
  };
  SideView f = view(first, second);
  SideView s = view(second, first);

  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  // Glues one side's table into a strategy-level response, or fails.
  auto glue = [&](const SideView& mine, const SideView& theirs,
                  const std::vector<std::vector<std::size_t>>& table,
                  std::vector<std::size_t>& out) {
    for (std::size_t own = 0; own < mine.strategies; ++own) {
      std::vector<std::size_t> pres(theirs.cells, kUnset);
      for (std::size_t c = 0; c < mine.cells; ++c) {
        std::size_t t = table[c][mine.strat[own][c]];
        for (std::size_t d : mine.visible[c]) {
          std::size_t v = theirs.strat[t][d];
          if (pres[d] == kUnset)
            pres[d] = v;
          else if (pres[d] != v)
            return false;
        }
      }
      out[own] = game.strategy_index(Strategy{theirs.player, pres});
    }
    return true;
  };

  std::size_t coords_f = require_inv ? f.cells : f.cells * f.actions;
  std::size_t coords_s = require_inv ? s.cells : s.cells * s.actions;
  auto expand = [&](const SideView& side, const std::vector<std::size_t>& flat) {
    std::vector<std::vector<std::size_t>> table(side.cells,
                                                std::vector<std::size_t>(side.actions));
    for (std::size_t c = 0; c < side.cells; ++c)
      for (std::size_t a = 0; a < side.actions; ++a)
        table[c][a] = require_inv ? flat[c] : flat[c * side.actions + a];
    return table;
  };

  DenseResult result;
  std::vector<std::size_t> psi_f(coords_f, 0), radices_f(coords_f, s.strategies);
  std::vector<std::size_t> response_f(f.strategies), response_s(s.strategies);
  do {
    std::vector<std::vector<std::size_t>> table_f = expand(f, psi_f);
    std::vector<std::size_t> psi_s(coords_s, 0), radices_s(coords_s, f.strategies);
    do {
      std::vector<std::vector<std::size_t>> table_s = expand(s, psi_s);
      if (!glue(f, s, table_f, response_f)) continue;
      if (!glue(s, f, table_s, response_s)) continue;
      bool inverse = f.strategies == s.strategies;
      for (std::size_t k = 0; inverse && k < f.strategies; ++k)
        inverse = response_s[response_f[k]] == k;
      for (std::size_t k = 0; inverse && k < s.strategies; ++k)
        inverse = response_f[response_s[k]] == k;
      if (!inverse) continue;
      result.count += 1;
      result.witnesses.push_back({first, second, table_f, table_s});
    } while (next_digits(psi_s, radices_s));
  } while (next_digits(psi_f, radices_f));
  return result;
}

}  // namespace

TEST_CASE("the dilemma pair has exactly the two mutually inverse scenarios") {
  EpistemicGame pd = testsupport::example_game("prisoners-dilemma");
  ScenarioSearchReport report = search_bay_scenarios(pd, {0, 1});
  CHECK(report.first_player == 0);
  CHECK(report.second_player == 1);
  CHECK(!report.require_inv);
  CHECK(report.search_size == 16);
  CHECK(report.witness_count == 2);
  CHECK(report.witnesses_complete);
  CHECK(report.exhausted);
  REQUIRE(report.witnesses.size() == 2);

  const ResponseScenario& identity = report.witnesses[0];
  CHECK(identity.psi_first == std::vector<std::vector<std::size_t>>{{0, 1}});
  CHECK(identity.psi_second == std::vector<std::vector<std::size_t>>{{0, 1}});
  const ResponseScenario& swap = report.witnesses[1];
  CHECK(swap.psi_first == std::vector<std::vector<std::size_t>>{{1, 0}});
  CHECK(swap.psi_second == std::vector<std::vector<std::size_t>>{{1, 0}});

  for (const ResponseScenario& w : report.witnesses) {
    ResponseMap forward = scenario_response_map(pd, w, 0);
    ResponseMap backward = scenario_response_map(pd, w, 1);
    CHECK(forward.from_player == 0);
    CHECK(forward.to_player == 1);
    CHECK(check_congruence(forward, backward).ok);
  }
  CHECK(scenario_response_map(pd, report.witnesses[0], 0).image ==
        std::vector<std::size_t>{0, 1});
  CHECK(scenario_response_map(pd, report.witnesses[1], 0).image ==
        std::vector<std::size_t>{1, 0});

  // Demanding action-invariant conjectures forces a constant response map,
  // which cannot be a bijection between two-strategy sets.
  ScenarioSearchOptions inv;
  inv.require_inv = true;
  ScenarioSearchReport invariant = search_bay_scenarios(pd, {0, 1}, inv);
  CHECK(invariant.search_size == 4);
  CHECK(invariant.witness_count == 0);
  CHECK(invariant.witnesses_complete);
  CHECK(invariant.exhausted);
}

TEST_CASE("crossing partitions admit no consistent scenario at all") {
  EpistemicGame fig = testsupport::example_game("figure1");
  ScenarioSearchReport report = search_bay_scenarios(fig, {0, 1});
  CHECK(report.search_size == 65536);
  CHECK(report.witness_count == 0);
  CHECK(report.witnesses.empty());
  CHECK(report.witnesses_complete);
  CHECK(report.exhausted);

  EpistemicGame wide = crossing_three_actions();
  ScenarioSearchReport big = search_bay_scenarios(wide, {0, 1});
  BigInt nine_to_twelve = 1;
  for (int k = 0; k < 12; ++k) nine_to_twelve *= 9;
  CHECK(big.search_size == nine_to_twelve);
  CHECK(big.witness_count == 0);
  CHECK(big.exhausted);
}

TEST_CASE("aligned partitions factor and the witness list cap keeps counts exact") {
  EpistemicGame game = aligned_partitions();
  ScenarioSearchReport report = search_bay_scenarios(game, {0, 1});
  CHECK(report.search_size == 65536);
  // Per cell a bijection on actions, all unobserved conjecture digits free:
  // (2!)^2 * 2^(2*2*2) witnesses.
  CHECK(report.witness_count == 1024);
  CHECK(report.witnesses.size() == 1000);
  CHECK(!report.witnesses_complete);
  CHECK(report.exhausted);

  ScenarioSearchOptions roomy;
  roomy.witness_list_cap = 2000;
  ScenarioSearchReport full = search_bay_scenarios(game, {0, 1}, roomy);
  CHECK(full.witness_count == 1024);
  CHECK(full.witnesses.size() == 1024);
  CHECK(full.witnesses_complete);

  ScenarioSearchOptions none;
  none.witness_list_cap = 0;
  ScenarioSearchReport counted = search_bay_scenarios(game, {0, 1}, none);
  CHECK(counted.witness_count == 1024);
  CHECK(counted.witnesses.empty());
  CHECK(!counted.witnesses_complete);
  CHECK(counted.exhausted);
}

TEST_CASE("unequal strategy counts are refuted without sweeping") {
  EpistemicGame game = asymmetric_partitions();
  for (auto pair : {std::pair<std::size_t, std::size_t>{0, 1}, {1, 0}}) {
    ScenarioSearchReport report = search_bay_scenarios(game, pair);
    CHECK(report.search_size == 256);
    CHECK(report.witness_count == 0);
    CHECK(report.witnesses_complete);
    CHECK(report.exhausted);
  }
}

TEST_CASE("the scenario space cap names the exact size") {
  EpistemicGame pd = testsupport::example_game("prisoners-dilemma");
  ScenarioSearchOptions tight;
  tight.space_cap = 15;
  try {
    search_bay_scenarios(pd, {0, 1}, tight);
    FAIL("expected ScenarioSpaceTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ScenarioSpaceTooLarge);
    CHECK(std::string(e.what()).find("16") != std::string::npos);
    CHECK(std::string(e.what()).find("15") != std::string::npos);
  }

  EpistemicGame big = oversized_search();
  BigInt size = 1;
  for (int k = 0; k < 54; ++k) size *= 3;  // 27^9 per side, squared
  try {
    search_bay_scenarios(big, {0, 1});
    FAIL("expected ScenarioSpaceTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ScenarioSpaceTooLarge);
    CHECK(std::string(e.what()).find(format_bigint(size)) != std::string::npos);
  }
}

TEST_CASE("search input validation") {
  EpistemicGame pd = testsupport::example_game("prisoners-dilemma");
  EpistemicGame solo = testsupport::example_game("angels-demons");
  try {
    search_bay_scenarios(solo, {0, 1});
    FAIL("expected WrongPlayerCount");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::WrongPlayerCount);
  }
  CHECK_THROWS_AS(search_bay_scenarios(pd, {0, 0}), Error);
  CHECK_THROWS_AS(search_bay_scenarios(pd, {0, 7}), Error);
}

TEST_CASE("the factored search agrees with the literal one") {
  struct Case {
    const char* name;
    EpistemicGame game;
  };
  std::vector<Case> cases;
  cases.push_back({"dilemma", testsupport::example_game("prisoners-dilemma")});
  cases.push_back({"aligned", aligned_partitions()});
  cases.push_back({"crossing", testsupport::example_game("figure1")});
  cases.push_back({"asymmetric", asymmetric_partitions()});

  for (const Case& item : cases) {
    CAPTURE(item.name);
    for (bool inv : {false, true}) {
      CAPTURE(inv);
      ScenarioSearchOptions options;
      options.require_inv = inv;
      options.witness_list_cap = 1000;
      ScenarioSearchReport fast = search_bay_scenarios(item.game, {0, 1}, options);
      DenseResult slow = dense_search(item.game, 0, 1, inv);
      CHECK(fast.witness_count == slow.count);
      REQUIRE(fast.witnesses.size() <= slow.witnesses.size());
      for (std::size_t k = 0; k < fast.witnesses.size(); ++k)
        CHECK(fast.witnesses[k] == slow.witnesses[k]);
    }
  }

  // The reversed ordering of the asymmetric pair exercises the sweep-side
  // choice against the same reference.
  EpistemicGame asym = asymmetric_partitions();
  ScenarioSearchReport fast = search_bay_scenarios(asym, {1, 0});
  DenseResult slow = dense_search(asym, 1, 0, false);
  CHECK(fast.witness_count == slow.count);
  CHECK(slow.count == 0);
}

TEST_CASE("response maps from scenarios validate their tables") {
  EpistemicGame fig = testsupport::example_game("figure1");
  ResponseScenario bad;
  bad.first_player = 0;
  bad.second_player = 1;
  bad.psi_first = {{0, 0}, {3, 3}};  // cells demand conflicting strategies
  bad.psi_second = {{0, 0}, {0, 0}};
  try {
    scenario_response_map(fig, bad, 0);
    FAIL("expected ValidationError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ValidationError);
    CHECK(std::string(e.what()).find("glue") != std::string::npos);
  }

  ResponseScenario shape = bad;
  shape.psi_first = {{0, 0}};
  CHECK_THROWS_AS(scenario_response_map(fig, shape, 0), Error);
  shape.psi_first = {{0}, {3}};
  CHECK_THROWS_AS(scenario_response_map(fig, shape, 0), Error);
  shape.psi_first = {{9, 0}, {0, 0}};
  CHECK_THROWS_AS(scenario_response_map(fig, shape, 0), Error);
  CHECK_THROWS_AS(scenario_response_map(fig, bad, 2), Error);
}

TEST_CASE("action-invariant conjectures can never stay correct") {
  EpistemicGame pd = testsupport::example_game("prisoners-dilemma");
  TheoremReport report = check_theorem1(pd);
  CHECK(report.holds);
  REQUIRE(report.pairs.size() == 2);
  CHECK(report.pairs[0].first == 0);
  CHECK(report.pairs[0].second == 1);
  CHECK(report.pairs[0].search_size == 4);
  CHECK(report.pairs[0].witness_count == 0);
  CHECK(report.pairs[1].first == 1);
  CHECK(report.pairs[1].second == 0);
  CHECK(!report.detail.empty());

  TheoremReport fig = check_theorem1(testsupport::example_game("figure1"));
  CHECK(fig.holds);
  REQUIRE(fig.pairs.size() == 2);
  CHECK(fig.pairs[0].search_size == 256);
  CHECK(fig.pairs[1].search_size == 256);

  CHECK_THROWS_AS(check_theorem1(testsupport::example_game("angels-demons")), Error);
}

TEST_CASE("imperfect information defeats unrestricted conjecture systems") {
  TheoremReport fig = check_theorem2(testsupport::example_game("figure1"));
  CHECK(fig.holds);
  REQUIRE(fig.pairs.size() == 2);
  CHECK(fig.pairs[0].search_size == 65536);
  CHECK(fig.pairs[0].witness_count == 0);

  // Only the coarse player is imperfectly informed, so only that ordered
  // pair is checked; the unequal strategy counts settle it.
  TheoremReport one_sided = check_theorem2(asymmetric_partitions());
  CHECK(one_sided.holds);
  REQUIRE(one_sided.pairs.size() == 1);
  CHECK(one_sided.pairs[0].first == 1);
  CHECK(one_sided.pairs[0].second == 0);
  CHECK(one_sided.pairs[0].search_size == 256);

  try {
    check_theorem2(testsupport::example_game("prisoners-dilemma"));
    FAIL("expected NotImperfectInformation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotImperfectInformation);
  }
}

TEST_CASE("whole-plan rewards do not decompose across cells") {
  EpistemicGame game = testsupport::example_game("angels-demons");
  DecompositionReport report = decomposition_check(game);
  CHECK(report.optimum == Rational(1, 2));
  REQUIRE(report.global_optima.size() == 2);
  CHECK(report.global_optima[0] == game.strategy_from_index(0, 0));
  CHECK(report.global_optima[1] == game.strategy_from_index(0, 3));
  CHECK(!report.cellwise_consistent);
  CHECK(report.detail ==
        "strategy honest/honest attains the optimum but is beaten at cell 1 "
        "under completion dishonest/honest");
}

TEST_CASE("state-separable rewards decompose cleanly") {
  FiniteSpace space({"x", "y"});
  Partition discrete(space, {Event({0}), Event({1})});
  Measure uniform(space, {Rational(1, 2), Rational(1, 2)});
  std::vector<PlayerDef> players;
  players.push_back({"solo", {"a", "b"}, discrete, uniform});
  // Payoff adds one term per cell: x pays 2/0 for a/b, y pays 1/5.
  const Rational at_x[2] = {Rational(2), Rational(0)};
  const Rational at_y[2] = {Rational(1), Rational(5)};
  std::vector<UtilityEntry> utilities;
  for (std::size_t s = 0; s < 4; ++s) {
    std::vector<std::vector<std::size_t>> plan{{s / 2, s % 2}};
    utilities.push_back({0, std::size_t(0), {}, plan, at_x[s / 2]});
    utilities.push_back({0, std::size_t(1), {}, plan, at_y[s % 2]});
  }
  EpistemicGame game(space, UtilityKind::Strategy, std::move(players), std::move(utilities));

  DecompositionReport report = decomposition_check(game);
  CHECK(report.optimum == Rational(7, 2));
  REQUIRE(report.global_optima.size() == 1);
  CHECK(game.strategy_label(report.global_optima[0]) == "a/b");
  CHECK(report.cellwise_consistent);
  CHECK(report.detail ==
        "strategy a/b is conditionally optimal at every cell under every completion");
}

TEST_CASE("action-kind single-player games always decompose") {
  Rng rng(20260819);
  for (int round = 0; round < 60; ++round) {
    EpistemicGame game = testsupport::random_action_game(rng, 1);
    DecompositionReport report = decomposition_check(game);
    CHECK(report.cellwise_consistent);
    // The optimum is a genuine maximum over the full strategy space.
    for (const StrategyProfile& profile : testsupport::all_profiles(game))
      CHECK(expected_utility(game, profile, 0) <= report.optimum);
  }

  EpistemicGame pd = testsupport::example_game("prisoners-dilemma");
  try {
    decomposition_check(pd);
    FAIL("expected WrongPlayerCount");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::WrongPlayerCount);
  }
}
