#include <cstddef>
#include <vector>

#include "doctest.h"
#include "epigame/equilibrium.hpp"
#include "epigame/errors.hpp"
#include "epigame/uncertainty.hpp"
#include "support.hpp"

using namespace epigame;
using testsupport::Rng;

namespace {

// A conjecture that expects the single opponent to hold `target` no matter
// what the owner plays.
PlayerConjecture constant_conjecture(const EpistemicGame& game, std::size_t player,
                                     std::size_t target) {
  std::size_t rows = game.checked_strategy_count(player, kDefaultStrategyCap);
  return make_conjecture(game, player,
                         std::vector<std::vector<std::size_t>>(rows, {target}));
}

EpistemicGame three_player_shell() {
  FiniteSpace space({"0"});
  Partition trivial(space, {Event({0})});
  Measure point(space, {Rational(1)});
  std::vector<PlayerDef> players;
  players.push_back({"left", {"a", "b"}, trivial, point});
  players.push_back({"mid", {"a", "b"}, trivial, point});
  players.push_back({"right", {"a", "b"}, trivial, point});
  std::vector<UtilityEntry> utilities;
  std::vector<std::size_t> digits(3, 0);
  std::vector<std::size_t> radices(3, 2);
  do {
    for (std::size_t p = 0; p < 3; ++p)
      utilities.push_back({p, std::nullopt, digits, {}, Rational(0)});
  } while (next_digits(digits, radices));
  return EpistemicGame(space, UtilityKind::Action, std::move(players), std::move(utilities));
}

}  // namespace

TEST_CASE("conjecture construction validates shape and the fixed flag") {
  EpistemicGame pd = testsupport::example_game("prisoners-dilemma");

  PlayerConjecture fixed = constant_conjecture(pd, 0, 1);
  CHECK(fixed.fixed);
  PlayerConjecture varied = make_conjecture(pd, 0, {{1}, {0}});
  CHECK(!varied.fixed);
  CHECK_NOTHROW(require_conjecture(pd, fixed));

  CHECK_THROWS_AS(make_conjecture(pd, 0, {{1}}), Error);        // one row short
  CHECK_THROWS_AS(make_conjecture(pd, 0, {{1}, {2}}), Error);   // target out of range
  CHECK_THROWS_AS(make_conjecture(pd, 0, {{1, 0}, {0, 0}}), Error);  // too many others
  CHECK_THROWS_AS(make_conjecture(pd, 5, {{0}, {0}}), Error);

  PlayerConjecture tampered = fixed;
  tampered.fixed = false;
  CHECK_THROWS_AS(require_conjecture(pd, tampered), Error);
  tampered = varied;
  tampered.fixed = true;
  CHECK_THROWS_AS(require_conjecture(pd, tampered), Error);

  ConjectureProfile good{constant_conjecture(pd, 0, 1), constant_conjecture(pd, 1, 1)};
  CHECK_NOTHROW(require_conjecture_profile(pd, good));
  ConjectureProfile short_list{good[0]};
  CHECK_THROWS_AS(require_conjecture_profile(pd, short_list), Error);
  ConjectureProfile shuffled{good[1], good[0]};
  CHECK_THROWS_AS(require_conjecture_profile(pd, shuffled), Error);
}

TEST_CASE("conjectured profiles splice the owner's strategy into the expectation") {
  EpistemicGame pd = testsupport::example_game("prisoners-dilemma");
  PlayerConjecture crossed = make_conjecture(pd, 0, {{1}, {0}});
  CHECK(conjectured_profile(pd, crossed, 0) == testsupport::profile_from_indices(pd, {0, 1}));
  CHECK(conjectured_profile(pd, crossed, 1) == testsupport::profile_from_indices(pd, {1, 0}));

  // The image row for a middle player lists the others in index order with
  // the owner skipped.
  EpistemicGame trio = three_player_shell();
  PlayerConjecture mid = make_conjecture(trio, 1, {{1, 0}, {1, 0}});
  CHECK(conjectured_profile(trio, mid, 1) == testsupport::profile_from_indices(trio, {1, 1, 0}));
}

TEST_CASE("confession dominates under any fixed conjecture") {
  EpistemicGame pd = testsupport::example_game("prisoners-dilemma");
  Strategy confess = pd.strategy_from_index(0, 1);
  for (std::size_t target : {std::size_t{0}, std::size_t{1}}) {
    std::vector<Strategy> best =
        best_responses_to_conjecture(pd, constant_conjecture(pd, 0, target));
    REQUIRE(best.size() == 1);
    CHECK(best.front() == confess);
  }

  EpistemicGame fig = testsupport::example_game("figure1");
  PlayerConjecture wide = constant_conjecture(fig, 0, 2);
  CHECK(best_responses_to_conjecture(fig, wide).size() == 4);  // all payoffs are zero
  CHECK_THROWS_AS(best_responses_to_conjecture(fig, wide, 3), Error);
}

TEST_CASE("the three outcome classes are told apart on the dilemma") {
  EpistemicGame pd = testsupport::example_game("prisoners-dilemma");
  StrategyProfile both_confess = testsupport::profile_from_indices(pd, {1, 1});
  StrategyProfile both_deny = testsupport::profile_from_indices(pd, {0, 0});
  ConjectureProfile expect_confess{constant_conjecture(pd, 0, 1), constant_conjecture(pd, 1, 1)};

  CHECK(classify_solution(pd, expect_confess, both_confess) ==
        SolutionClass::SubjectiveCorrelatedEquilibrium);

  ConjectureProfile lopsided{constant_conjecture(pd, 0, 0), constant_conjecture(pd, 1, 1)};
  CHECK(subjectively_rational(pd, lopsided, both_confess).ok);
  CHECK(!conjectures_correct(pd, lopsided, both_confess));
  CHECK(classify_solution(pd, lopsided, both_confess) ==
        SolutionClass::RationalIncorrectConjectures);

  SubjectiveReport report = subjectively_rational(pd, expect_confess, both_deny);
  CHECK(!report.ok);
  REQUIRE(report.violations.size() == 2);
  CHECK(report.violations[0].player == 0);
  CHECK(report.violations[0].better == pd.strategy_from_index(0, 1));
  CHECK(report.violations[0].gain == Rational(1));  // -4 beats -5 by one
  CHECK(classify_solution(pd, expect_confess, both_deny) == SolutionClass::Irrational);

  CHECK(std::string(solution_class_name(SolutionClass::SubjectiveCorrelatedEquilibrium)) ==
        "subjective_correlated_equilibrium");
  CHECK(std::string(solution_class_name(SolutionClass::RationalIncorrectConjectures)) ==
        "rational_incorrect_conjectures");
  CHECK(std::string(solution_class_name(SolutionClass::Irrational)) == "irrational");
}

TEST_CASE("matching conjectures tie both meeting points at the rendezvous") {
  EpistemicGame game = testsupport::example_game("rendezvous");
  ConjectureProfile matching{make_conjecture(game, 0, {{0}, {1}}),
                             make_conjecture(game, 1, {{0}, {1}})};
  for (std::size_t p = 0; p < 2; ++p)
    CHECK(best_responses_to_conjecture(game, matching[p]).size() == 2);

  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) {
      StrategyProfile profile = testsupport::profile_from_indices(game, {a, b});
      CHECK(subjectively_rational(game, matching, profile).ok);
      CHECK(classify_solution(game, matching, profile) ==
            (a == b ? SolutionClass::SubjectiveCorrelatedEquilibrium
                    : SolutionClass::RationalIncorrectConjectures));
    }
}

TEST_CASE("correct fixed conjectures reduce the classification to Bayes rationality") {
  Rng rng(20260818);
  std::size_t equilibria = 0;
  for (int round = 0; round < 40; ++round) {
    EpistemicGame game = testsupport::random_action_game(rng);
    for (const StrategyProfile& profile : testsupport::all_profiles(game)) {
      ConjectureProfile conj;
      for (std::size_t p = 0; p < 2; ++p) {
        std::size_t other = game.strategy_index(profile[1 - p]);
        std::size_t rows = game.checked_strategy_count(p, kDefaultStrategyCap);
        conj.push_back(
            make_conjecture(game, p, std::vector<std::vector<std::size_t>>(rows, {other})));
      }
      CHECK(conjectures_correct(game, conj, profile));
      SolutionClass cls = classify_solution(game, conj, profile);
      CHECK(cls != SolutionClass::RationalIncorrectConjectures);
      bool bayes = is_bayes_rational(game, profile).ok;
      CHECK((cls == SolutionClass::SubjectiveCorrelatedEquilibrium) == bayes);
      if (bayes) ++equilibria;
    }
  }
  CHECK(equilibria > 0);
}
