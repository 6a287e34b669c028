#pragma once

#include <optional>
#include <string>
#include <vector>

#include "epigame/equilibrium.hpp"
#include "epigame/game.hpp"
#include "epigame/uncertainty.hpp"

namespace epigame {

// A game plus the free-text comment carried by its file.
struct GameDocument {
  EpistemicGame game;
  std::string comment;  // empty when the file has none
};

// Parses a game file. Throws ParseError for malformed JSON and
// ValidationError (naming the offending field) for structural or semantic
// problems.
GameDocument parse_game(const std::string& bytes);

// Canonical bytes: UTF-8, sorted keys, two-space indent, LF endings, final
// newline. Parsing and re-serializing canonical bytes is byte-identical.
std::string serialize_game(const GameDocument& doc);

// Conjecture files: a JSON object keyed by player name; each player carries
// either {"fixed": {other: strategy-label, ...}} or
// {"map": [{"from": own-label, "to": {other: label, ...}}, ...]} covering
// every own strategy exactly once.
ConjectureProfile parse_conjectures(const EpistemicGame& game, const std::string& bytes);
std::string serialize_conjectures(const EpistemicGame& game, const ConjectureProfile& profile);

// Distribution files: a JSON object mapping comma-joined choice tuples to
// rational strings; omitted tuples carry weight zero.
ActionDistribution parse_distribution(const NormalFormGame& nf, const std::string& bytes);
std::string serialize_distribution(const NormalFormGame& nf, const ActionDistribution& d);

// Built-in examples, sorted by name.
std::vector<std::string> example_names();

// Canonical file bytes for a built-in example; throws UnknownExample.
std::string export_example(const std::string& name);

// Companion conjecture file, when the example ships one (currently only
// "rendezvous"); nullopt for examples without a companion; throws
// UnknownExample for unknown names.
std::optional<std::string> example_conjectures(const std::string& name);

}  // namespace epigame
