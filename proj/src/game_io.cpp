#include "epigame/game_io.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "epigame/errors.hpp"
#include "epigame/indexing.hpp"

namespace epigame {
namespace {

using nlohmann::json;  // std::map-backed: object keys serialize sorted

[[noreturn]] void bad(const std::string& message) { fail(ErrorCode::ValidationError, message); }

json parse_json(const std::string& bytes) {
  try {
    return json::parse(bytes);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ParseError, e.what());
  }
}

void require_object(const json& v, const std::string& where) {
  if (!v.is_object()) bad(where + ": expected an object");
}

void require_array(const json& v, const std::string& where) {
  if (!v.is_array()) bad(where + ": expected an array");
}

// Strict field access: unknown keys are rejected so that every byte of a file
// is meaningful and round trips exactly.
void check_keys(const json& obj, const std::vector<std::string>& allowed,
                const std::string& where) {
  for (const auto& item : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
      bad(where + ": unknown field \"" + item.key() + "\"");
  }
}

const json& get_field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) bad(where + ": missing field \"" + key + "\"");
  return *it;
}

std::string get_string(const json& v, const std::string& where) {
  if (!v.is_string()) bad(where + ": expected a string");
  return v.get<std::string>();
}

std::vector<std::string> get_string_array(const json& v, const std::string& where) {
  require_array(v, where);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(get_string(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

Rational get_rational(const json& v, const std::string& where) {
  if (!v.is_string()) bad(where + ": expected a rational string such as \"1/2\"");
  const std::string text = v.get<std::string>();
  std::optional<Rational> r = parse_rational(text);
  if (!r) bad(where + ": malformed rational \"" + text + "\"");
  return *r;
}

// Runs `f`, prefixing the location onto any library error it raises, so that
// errors from nested constructors still name the offending file field.
template <typename F>
auto located(const std::string& where, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    fail(e.code(), where + ": " + e.what());
  }
}

std::size_t state_index(const FiniteSpace& space, const std::string& label,
                        const std::string& where) {
  std::optional<std::size_t> index = space.index_of(label);
  if (!index) bad(where + ": unknown state \"" + label + "\"");
  return *index;
}

Partition parse_partition(const json& v, const FiniteSpace& space, const std::string& where) {
  require_array(v, where);
  std::vector<Event> blocks;
  std::vector<std::size_t> seen_in(space.size(), std::size_t(-1));
  for (std::size_t b = 0; b < v.size(); ++b) {
    const std::string block_where = where + "[" + std::to_string(b) + "]";
    std::vector<std::size_t> members;
    for (const std::string& label : get_string_array(v[b], block_where)) {
      std::size_t s = state_index(space, label, block_where);
      if (seen_in[s] != std::size_t(-1))
        bad(where + ": state \"" + label + "\" appears in blocks " +
            std::to_string(seen_in[s]) + " and " + std::to_string(b));
      seen_in[s] = b;
      members.push_back(s);
    }
    blocks.push_back(located(block_where, [&] { return Event(std::move(members)); }));
  }
  return located(where, [&] { return Partition(space, std::move(blocks)); });
}

Measure parse_prior(const json& v, const FiniteSpace& space, const std::string& player_name,
                    const std::string& where) {
  require_object(v, where);
  std::vector<Rational> weights(space.size(), Rational(0));
  std::vector<bool> present(space.size(), false);
  for (const auto& item : v.items()) {
    std::size_t s = state_index(space, item.key(), where);
    weights[s] = get_rational(item.value(), where + "[\"" + item.key() + "\"]");
    present[s] = true;
  }
  for (std::size_t s = 0; s < space.size(); ++s) {
    if (!present[s]) bad(where + ": missing state \"" + space.label(s) + "\"");
  }
  Rational total = 0;
  for (const Rational& w : weights) total += w;
  if (total != 1)
    bad(where + " (player \"" + player_name + "\"): weights sum to " + format_rational(total) +
        ", expected 1");
  return located(where, [&] { return Measure(space, std::move(weights)); });
}

std::size_t player_by_name(const EpistemicGame& game, const std::string& name,
                           const std::string& where) {
  std::optional<std::size_t> index = game.player_index(name);
  if (!index) bad(where + ": unknown player \"" + name + "\"");
  return *index;
}

std::size_t action_by_label(const std::vector<std::string>& actions, const std::string& label,
                            const std::string& player_name, const std::string& where) {
  auto it = std::find(actions.begin(), actions.end(), label);
  if (it == actions.end())
    bad(where + ": unknown action \"" + label + "\" for player \"" + player_name + "\"");
  return static_cast<std::size_t>(it - actions.begin());
}

json partition_to_json(const Partition& partition) {
  json out = json::array();
  for (const Event& block : partition.blocks()) {
    json members = json::array();
    for (std::size_t s : block.members()) members.push_back(partition.space().label(s));
    out.push_back(std::move(members));
  }
  return out;
}

json prior_to_json(const Measure& prior) {
  json out = json::object();
  for (std::size_t s = 0; s < prior.space().size(); ++s)
    out[prior.space().label(s)] = format_rational(prior.weight(s));
  return out;
}

json others_to_json(const EpistemicGame& game, std::size_t player,
                    const std::vector<std::size_t>& row) {
  json out = json::object();
  std::size_t k = 0;
  for (std::size_t q = 0; q < game.player_count(); ++q) {
    if (q == player) continue;
    out[game.player(q).name] = game.strategy_label(game.strategy_from_index(q, row[k]));
    ++k;
  }
  return out;
}

std::vector<std::size_t> parse_others(const EpistemicGame& game, std::size_t player,
                                      const json& v, const std::string& where) {
  require_object(v, where);
  std::vector<std::size_t> row;
  for (std::size_t q = 0; q < game.player_count(); ++q) {
    if (q == player) continue;
    const std::string& name = game.player(q).name;
    auto it = v.find(name);
    if (it == v.end()) bad(where + ": missing player \"" + name + "\"");
    const std::string label =
        get_string(*it, where + "[\"" + name + "\"]");
    std::optional<Strategy> strat = game.strategy_from_label(q, label);
    if (!strat)
      bad(where + ": unknown strategy \"" + label + "\" for player \"" + name + "\"");
    row.push_back(game.strategy_index(*strat));
  }
  for (const auto& item : v.items()) {
    std::optional<std::size_t> q = game.player_index(item.key());
    if (!q || *q == player) bad(where + ": unexpected player \"" + item.key() + "\"");
  }
  return row;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

GameDocument parse_game(const std::string& bytes) {
  json doc = parse_json(bytes);
  require_object(doc, "top level");
  check_keys(doc, {"comment", "players", "states", "utilities", "utility_kind"}, "top level");

  std::string comment;
  if (auto it = doc.find("comment"); it != doc.end()) comment = get_string(*it, "comment");

  FiniteSpace space = located("states", [&] {
    return FiniteSpace(get_string_array(get_field(doc, "states", "top level"), "states"));
  });

  const std::string kind_text =
      get_string(get_field(doc, "utility_kind", "top level"), "utility_kind");
  UtilityKind kind;
  if (kind_text == "action") {
    kind = UtilityKind::Action;
  } else if (kind_text == "strategy") {
    kind = UtilityKind::Strategy;
  } else {
    bad("utility_kind: expected \"action\" or \"strategy\", got \"" + kind_text + "\"");
  }

  const json& players_json = get_field(doc, "players", "top level");
  require_array(players_json, "players");
  std::vector<PlayerDef> players;
  std::vector<std::string> player_names;
  for (std::size_t p = 0; p < players_json.size(); ++p) {
    const std::string where = "players[" + std::to_string(p) + "]";
    const json& pj = players_json[p];
    require_object(pj, where);
    check_keys(pj, {"actions", "name", "partition", "prior"}, where);
    std::string name = get_string(get_field(pj, "name", where), where + ".name");
    std::vector<std::string> actions =
        get_string_array(get_field(pj, "actions", where), where + ".actions");
    Partition partition =
        parse_partition(get_field(pj, "partition", where), space, where + ".partition");
    Measure prior = parse_prior(get_field(pj, "prior", where), space, name, where + ".prior");
    player_names.push_back(name);
    players.push_back(PlayerDef{std::move(name), std::move(actions), std::move(partition),
                                std::move(prior)});
  }

  const json& utilities_json = get_field(doc, "utilities", "top level");
  require_array(utilities_json, "utilities");
  std::vector<UtilityEntry> utilities;
  for (std::size_t k = 0; k < utilities_json.size(); ++k) {
    const std::string where = "utilities[" + std::to_string(k) + "]";
    const json& uj = utilities_json[k];
    require_object(uj, where);
    const char* profile_key = kind == UtilityKind::Action ? "profile" : "strategies";
    check_keys(uj, {"player", profile_key, "state", "value"}, where);

    UtilityEntry entry;
    const std::string player_name =
        get_string(get_field(uj, "player", where), where + ".player");
    auto player_it = std::find(player_names.begin(), player_names.end(), player_name);
    if (player_it == player_names.end())
      bad(where + ".player: unknown player \"" + player_name + "\"");
    entry.player = static_cast<std::size_t>(player_it - player_names.begin());

    const std::string state_text = get_string(get_field(uj, "state", where), where + ".state");
    if (state_text != "*")
      entry.state = state_index(space, state_text, where + ".state");

    if (kind == UtilityKind::Action) {
      std::vector<std::string> labels =
          get_string_array(get_field(uj, "profile", where), where + ".profile");
      if (labels.size() != players.size())
        bad(where + ".profile: expected one action per player");
      for (std::size_t p = 0; p < players.size(); ++p) {
        entry.actions.push_back(action_by_label(players[p].actions, labels[p],
                                                players[p].name, where + ".profile"));
      }
    } else {
      const json& sj = get_field(uj, "strategies", where);
      require_array(sj, where + ".strategies");
      if (sj.size() != players.size())
        bad(where + ".strategies: expected one strategy per player");
      for (std::size_t p = 0; p < players.size(); ++p) {
        const std::string sw = where + ".strategies[" + std::to_string(p) + "]";
        std::vector<std::size_t> per_block;
        for (const std::string& label : get_string_array(sj[p], sw)) {
          per_block.push_back(action_by_label(players[p].actions, label, players[p].name, sw));
        }
        entry.strategies.push_back(std::move(per_block));
      }
    }
    entry.value = get_rational(get_field(uj, "value", where), where + ".value");
    utilities.push_back(std::move(entry));
  }

  return GameDocument{EpistemicGame(std::move(space), kind, std::move(players),
                                    std::move(utilities)),
                      std::move(comment)};
}

std::string serialize_game(const GameDocument& doc) {
  const EpistemicGame& game = doc.game;
  json j = json::object();
  if (!doc.comment.empty()) j["comment"] = doc.comment;
  j["states"] = game.space().labels();
  j["utility_kind"] = game.utility_kind() == UtilityKind::Action ? "action" : "strategy";

  json players = json::array();
  for (const PlayerDef& player : game.players()) {
    json pj = json::object();
    pj["name"] = player.name;
    pj["actions"] = player.actions;
    pj["partition"] = partition_to_json(player.partition);
    pj["prior"] = prior_to_json(player.prior);
    players.push_back(std::move(pj));
  }
  j["players"] = std::move(players);

  json utilities = json::array();
  for (const UtilityEntry& entry : game.declared_utilities()) {
    json uj = json::object();
    uj["player"] = game.player(entry.player).name;
    uj["state"] = entry.state ? game.space().label(*entry.state) : std::string("*");
    if (game.utility_kind() == UtilityKind::Action) {
      json labels = json::array();
      for (std::size_t p = 0; p < game.player_count(); ++p)
        labels.push_back(game.player(p).actions.at(entry.actions[p]));
      uj["profile"] = std::move(labels);
    } else {
      json strategies = json::array();
      for (std::size_t p = 0; p < game.player_count(); ++p) {
        json per_block = json::array();
        for (std::size_t a : entry.strategies[p])
          per_block.push_back(game.player(p).actions.at(a));
        strategies.push_back(std::move(per_block));
      }
      uj["strategies"] = std::move(strategies);
    }
    uj["value"] = format_rational(entry.value);
    utilities.push_back(std::move(uj));
  }
  j["utilities"] = std::move(utilities);
  return dump(j);
}

ConjectureProfile parse_conjectures(const EpistemicGame& game, const std::string& bytes) {
  json doc = parse_json(bytes);
  require_object(doc, "conjectures");
  for (const auto& item : doc.items()) {
    if (!game.player_index(item.key()))
      bad("conjectures: unknown player \"" + item.key() + "\"");
  }

  ConjectureProfile profile;
  for (std::size_t i = 0; i < game.player_count(); ++i) {
    const std::string& name = game.player(i).name;
    const std::string where = "conjectures[\"" + name + "\"]";
    auto it = doc.find(name);
    if (it == doc.end()) bad("conjectures: missing player \"" + name + "\"");
    const json& cj = *it;
    require_object(cj, where);
    check_keys(cj, {"fixed", "map"}, where);
    const bool has_fixed = cj.contains("fixed");
    const bool has_map = cj.contains("map");
    if (has_fixed == has_map)
      bad(where + ": expected exactly one of \"fixed\" or \"map\"");

    const std::size_t own = game.checked_strategy_count(i, kDefaultStrategyCap);
    std::vector<std::vector<std::size_t>> image;
    if (has_fixed) {
      std::vector<std::size_t> row = parse_others(game, i, cj["fixed"], where + ".fixed");
      image.assign(own, row);
    } else {
      const json& mj = cj["map"];
      require_array(mj, where + ".map");
      image.assign(own, {});
      std::vector<bool> seen(own, false);
      for (std::size_t k = 0; k < mj.size(); ++k) {
        const std::string ew = where + ".map[" + std::to_string(k) + "]";
        const json& entry = mj[k];
        require_object(entry, ew);
        check_keys(entry, {"from", "to"}, ew);
        const std::string from_label =
            get_string(get_field(entry, "from", ew), ew + ".from");
        std::optional<Strategy> from = game.strategy_from_label(i, from_label);
        if (!from)
          bad(ew + ".from: unknown strategy \"" + from_label + "\" for player \"" + name + "\"");
        const std::size_t s = game.strategy_index(*from);
        if (seen[s]) bad(where + ".map: duplicate entry for strategy \"" + from_label + "\"");
        seen[s] = true;
        image[s] = parse_others(game, i, get_field(entry, "to", ew), ew + ".to");
      }
      for (std::size_t s = 0; s < own; ++s) {
        if (!seen[s])
          bad(where + ".map: missing entry for strategy \"" +
              game.strategy_label(game.strategy_from_index(i, s)) + "\"");
      }
    }
    profile.push_back(located(where, [&] { return make_conjecture(game, i, std::move(image)); }));
  }
  return profile;
}

std::string serialize_conjectures(const EpistemicGame& game, const ConjectureProfile& profile) {
  require_conjecture_profile(game, profile);
  json j = json::object();
  for (std::size_t i = 0; i < game.player_count(); ++i) {
    const PlayerConjecture& conj = profile[i];
    json cj = json::object();
    if (conj.fixed) {
      cj["fixed"] = others_to_json(game, i, conj.image.front());
    } else {
      json map = json::array();
      for (std::size_t s = 0; s < conj.image.size(); ++s) {
        json entry = json::object();
        entry["from"] = game.strategy_label(game.strategy_from_index(i, s));
        entry["to"] = others_to_json(game, i, conj.image[s]);
        map.push_back(std::move(entry));
      }
      cj["map"] = std::move(map);
    }
    j[game.player(i).name] = std::move(cj);
  }
  return dump(j);
}

ActionDistribution parse_distribution(const NormalFormGame& nf, const std::string& bytes) {
  json doc = parse_json(bytes);
  require_object(doc, "distribution");
  const std::vector<std::size_t> dims = nf.dims();
  std::vector<Rational> weights(nf.profile_count(), Rational(0));
  for (const auto& item : doc.items()) {
    const std::string where = "distribution[\"" + item.key() + "\"]";
    std::vector<std::string> labels;
    std::string current;
    for (char c : item.key()) {
      if (c == ',') {
        labels.push_back(current);
        current.clear();
      } else {
        current.push_back(c);
      }
    }
    labels.push_back(current);
    if (labels.size() != nf.players.size())
      bad(where + ": expected " + std::to_string(nf.players.size()) +
          " comma-separated choices");
    std::vector<std::size_t> digits(labels.size());
    for (std::size_t p = 0; p < labels.size(); ++p) {
      const std::vector<std::string>& choices = nf.choices[p];
      auto it = std::find(choices.begin(), choices.end(), labels[p]);
      if (it == choices.end())
        bad(where + ": unknown choice \"" + labels[p] + "\" for player \"" + nf.players[p] +
            "\"");
      digits[p] = static_cast<std::size_t>(it - choices.begin());
    }
    weights[flat_index(digits, dims)] = get_rational(item.value(), where);
  }
  return located("distribution", [&] { return make_distribution(dims, std::move(weights)); });
}

std::string serialize_distribution(const NormalFormGame& nf, const ActionDistribution& d) {
  if (d.dims != nf.dims())
    fail(ErrorCode::DimensionMismatch, "distribution shape does not match the game");
  json j = json::object();
  std::vector<std::size_t> digits(d.dims.size(), 0);
  for (std::size_t index = 0; index < d.weights.size(); ++index) {
    if (d.weights[index] != 0) {
      std::string key;
      for (std::size_t p = 0; p < digits.size(); ++p) {
        if (p) key.push_back(',');
        key += nf.choices[p][digits[p]];
      }
      j[key] = format_rational(d.weights[index]);
    }
    next_digits(digits, d.dims);
  }
  return dump(j);
}

namespace {

GameDocument prisoners_dilemma() {
  FiniteSpace space({"0"});
  Partition trivial(space, {Event({0})});
  Measure point(space, {Rational(1)});
  std::vector<PlayerDef> players;
  players.push_back({"player1", {"deny", "confess"}, trivial, point});
  players.push_back({"player2", {"deny", "confess"}, trivial, point});
  // Row player first: (deny,deny)=(-1,-1), (deny,confess)=(-5,0),
  // (confess,deny)=(0,-5), (confess,confess)=(-4,-4).
  const Rational table[2][2][2] = {
      {{-1, -1}, {-5, 0}},
      {{0, -5}, {-4, -4}},
  };
  std::vector<UtilityEntry> utilities;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t p = 0; p < 2; ++p)
        utilities.push_back({p, std::nullopt, {a, b}, {}, table[a][b][p]});
  return {EpistemicGame(space, UtilityKind::Action, std::move(players), std::move(utilities)),
          "Two prisoners independently deny or confess; values are negated years in prison."};
}

GameDocument figure1() {
  FiniteSpace space({"w1", "w2", "w3", "w4"});
  Partition rows(space, {Event({0, 1}), Event({2, 3})});
  Partition cols(space, {Event({0, 2}), Event({1, 3})});
  Measure uniform(space, {Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)});
  std::vector<PlayerDef> players;
  players.push_back({"player1", {"3", "4"}, rows, uniform});
  players.push_back({"player2", {"1", "2"}, cols, uniform});
  // Only the information structure matters here, so payoffs are constant.
  std::vector<UtilityEntry> utilities;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t p = 0; p < 2; ++p)
        utilities.push_back({p, std::nullopt, {a, b}, {}, Rational(0)});
  return {EpistemicGame(space, UtilityKind::Action, std::move(players), std::move(utilities)),
          "Two crossing information partitions over four states with a uniform prior; "
          "payoffs are constant because only the information structure matters."};
}

GameDocument angels_demons() {
  FiniteSpace space({"heads", "tails"});
  Partition discrete(space, {Event({0}), Event({1})});
  Measure fair(space, {Rational(1, 2), Rational(1, 2)});
  std::vector<PlayerDef> players;
  players.push_back({"decision-maker", {"honest", "dishonest"}, discrete, fair});
  // Plans are rewarded as a whole: the consistently honest plan pays 1 on
  // heads, the consistently dishonest plan pays 1 on tails, all else 0.  The
  // fair coin and the payoff of 1 are normalizations.
  std::vector<UtilityEntry> utilities;
  for (std::size_t heads_action = 0; heads_action < 2; ++heads_action) {
    for (std::size_t tails_action = 0; tails_action < 2; ++tails_action) {
      const std::vector<std::vector<std::size_t>> plan = {{heads_action, tails_action}};
      const bool honest_plan = heads_action == 0 && tails_action == 0;
      const bool dishonest_plan = heads_action == 1 && tails_action == 1;
      utilities.push_back(
          {0, std::size_t(0), {}, plan, honest_plan ? Rational(1) : Rational(0)});
      utilities.push_back(
          {0, std::size_t(1), {}, plan, dishonest_plan ? Rational(1) : Rational(0)});
    }
  }
  return {EpistemicGame(space, UtilityKind::Strategy, std::move(players), std::move(utilities)),
          "A coin decides whether honesty (heads) or dishonesty (tails) is rewarded, and "
          "only whole plans score: always-honest pays 1 on heads, always-dishonest pays 1 "
          "on tails, everything else 0.  The fair coin and the unit payoff are "
          "normalizations."};
}

GameDocument rendezvous() {
  FiniteSpace space({"0"});
  Partition trivial(space, {Event({0})});
  Measure point(space, {Rational(1)});
  std::vector<PlayerDef> players;
  players.push_back({"mary", {"harrys", "luigis"}, trivial, point});
  players.push_back({"joe", {"harrys", "luigis"}, trivial, point});
  // Meeting pays 1 for both, missing pays 0; the values are a normalization.
  std::vector<UtilityEntry> utilities;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t p = 0; p < 2; ++p)
        utilities.push_back({p, std::nullopt, {a, b}, {}, a == b ? Rational(1) : Rational(0)});
  return {EpistemicGame(space, UtilityKind::Action, std::move(players), std::move(utilities)),
          "Mary and Joe each pick a restaurant and want to meet: 1 if they choose the same "
          "place, 0 otherwise.  Ships with a conjecture file in which each expects the "
          "other to match their own choice."};
}

}  // namespace

std::vector<std::string> example_names() {
  return {"angels-demons", "figure1", "prisoners-dilemma", "rendezvous"};
}

std::string export_example(const std::string& name) {
  if (name == "angels-demons") return serialize_game(angels_demons());
  if (name == "figure1") return serialize_game(figure1());
  if (name == "prisoners-dilemma") return serialize_game(prisoners_dilemma());
  if (name == "rendezvous") return serialize_game(rendezvous());
  fail(ErrorCode::UnknownExample, "unknown example \"" + name + "\"");
}

std::optional<std::string> example_conjectures(const std::string& name) {
  if (name == "rendezvous") {
    GameDocument doc = rendezvous();
    // Each believes the other will match their own pick: a non-constant
    // conjecture map from own strategies to the other's strategies.
    ConjectureProfile profile;
    profile.push_back(make_conjecture(doc.game, 0, {{0}, {1}}));
    profile.push_back(make_conjecture(doc.game, 1, {{0}, {1}}));
    return serialize_conjectures(doc.game, profile);
  }
  if (name == "angels-demons" || name == "figure1" || name == "prisoners-dilemma")
    return std::nullopt;
  fail(ErrorCode::UnknownExample, "unknown example \"" + name + "\"");
}

}  // namespace epigame
