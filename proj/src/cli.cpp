#include "epigame/cli.hpp"

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "epigame/certainty.hpp"
#include "epigame/consistency.hpp"
#include "epigame/equilibrium.hpp"
#include "epigame/errors.hpp"
#include "epigame/game.hpp"
#include "epigame/game_io.hpp"
#include "epigame/indexing.hpp"
#include "epigame/uncertainty.hpp"

namespace epigame {
namespace {

using nlohmann::json;

// FNV-1a 64-bit content digest; reports identify inputs by content, never by
// path, so identical inputs give byte-identical reports.
std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  std::ostringstream hex;
  hex << std::hex << std::setfill('0') << std::setw(16) << hash;
  return hex.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::ParseError, "cannot read file \"" + path + "\"");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Carries one subcommand's output: a canonical JSON report by default, or the
// plain-text rendering when --human is set.
struct Report {
  std::string command;
  json inputs = json::object();  // role -> content digest
  json result = json::object();
  std::vector<std::string> human;
};

void emit(const Report& report, bool human, std::ostream& out) {
  if (human) {
    for (const std::string& line : report.human) out << line << "\n";
    return;
  }
  json j = json::object();
  j["command"] = report.command;
  j["inputs"] = report.inputs;
  j["result"] = report.result;
  out << j.dump(2) << "\n";
}

json profile_labels(const EpistemicGame& game, const StrategyProfile& profile) {
  json out = json::array();
  for (const Strategy& s : profile) out.push_back(game.strategy_label(s));
  return out;
}

std::string profile_text(const EpistemicGame& game, const StrategyProfile& profile) {
  std::string text = "(";
  for (std::size_t p = 0; p < profile.size(); ++p) {
    if (p) text += ", ";
    text += game.strategy_label(profile[p]);
  }
  return text + ")";
}

std::string choice_key(const NormalFormGame& nf, const std::vector<std::size_t>& digits) {
  std::string key;
  for (std::size_t p = 0; p < digits.size(); ++p) {
    if (p) key.push_back(',');
    key += nf.choices[p][digits[p]];
  }
  return key;
}

json distribution_json(const NormalFormGame& nf, const ActionDistribution& d) {
  json out = json::object();
  std::vector<std::size_t> digits(d.dims.size(), 0);
  for (const Rational& w : d.weights) {
    if (w != 0) out[choice_key(nf, digits)] = format_rational(w);
    next_digits(digits, d.dims);
  }
  return out;
}

json slack_json(const NormalFormGame& nf, const CESlack& s) {
  json out = json::object();
  out["player"] = nf.players[s.constraint.player];
  out["told"] = nf.choices[s.constraint.player][s.constraint.told];
  out["deviation"] = nf.choices[s.constraint.player][s.constraint.deviation];
  out["slack"] = format_rational(s.slack);
  return out;
}

std::string slack_text(const NormalFormGame& nf, const CESlack& s) {
  return nf.players[s.constraint.player] + " told " +
         nf.choices[s.constraint.player][s.constraint.told] + ", deviation " +
         nf.choices[s.constraint.player][s.constraint.deviation] + ": slack " +
         format_rational(s.slack);
}

StrategyProfile parse_profile_argument(const EpistemicGame& game, const std::string& text) {
  std::vector<std::string> labels;
  std::string current;
  for (char c : text) {
    if (c == ',') {
      labels.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  labels.push_back(current);
  if (labels.size() != game.player_count())
    fail(ErrorCode::ValidationError,
         "profile: expected " + std::to_string(game.player_count()) +
             " comma-separated strategy labels");
  StrategyProfile profile;
  for (std::size_t p = 0; p < game.player_count(); ++p) {
    std::optional<Strategy> s = game.strategy_from_label(p, labels[p]);
    if (!s)
      fail(ErrorCode::ValidationError, "profile: unknown strategy \"" + labels[p] +
                                           "\" for player \"" + game.player(p).name + "\"");
    profile.push_back(std::move(*s));
  }
  return profile;
}

GameDocument load_game(const std::string& path, Report& report) {
  std::string bytes = read_file(path);
  report.inputs["game"] = fnv1a_hex(bytes);
  return parse_game(bytes);
}

const char* kind_name(UtilityKind kind) {
  return kind == UtilityKind::Action ? "action" : "strategy";
}

int cmd_validate(const std::string& path, bool human, std::ostream& out) {
  Report report;
  report.command = "validate";
  GameDocument doc = load_game(path, report);
  report.result["valid"] = true;
  report.result["states"] = doc.game.space().size();
  report.result["players"] = doc.game.player_count();
  report.result["utility_kind"] = kind_name(doc.game.utility_kind());
  report.human.push_back(path + ": valid (" + std::to_string(doc.game.player_count()) +
                         " players, " + std::to_string(doc.game.space().size()) + " states, " +
                         kind_name(doc.game.utility_kind()) + " utilities)");
  emit(report, human, out);
  return 0;
}

int cmd_info(const std::string& path, bool human, std::ostream& out) {
  Report report;
  report.command = "info";
  GameDocument doc = load_game(path, report);
  const EpistemicGame& game = doc.game;

  if (!doc.comment.empty()) report.result["comment"] = doc.comment;
  report.result["states"] = game.space().labels();
  report.result["utility_kind"] = kind_name(game.utility_kind());

  json players = json::array();
  for (std::size_t p = 0; p < game.player_count(); ++p) {
    const PlayerDef& player = game.player(p);
    json pj = json::object();
    pj["name"] = player.name;
    pj["actions"] = player.actions;
    json cells = json::array();
    for (const Event& block : player.partition.blocks()) {
      json labels = json::array();
      for (std::size_t s : block.members()) labels.push_back(game.space().label(s));
      cells.push_back(std::move(labels));
    }
    pj["cells"] = std::move(cells);
    pj["strategies"] = format_bigint(game.strategy_count(p));
    players.push_back(std::move(pj));
  }
  report.result["players"] = std::move(players);

  std::vector<Partition> partitions;
  for (const PlayerDef& player : game.players()) partitions.push_back(player.partition);
  Partition joined = join(partitions);
  json join_json = json::array();
  for (const Event& block : joined.blocks()) {
    json labels = json::array();
    for (std::size_t s : block.members()) labels.push_back(game.space().label(s));
    join_json.push_back(std::move(labels));
  }
  report.result["join"] = std::move(join_json);
  report.result["common_prior"] = game.has_common_prior();

  InfoReport info = info_report(game);
  json info_json = json::object();
  json imperfect = json::object();
  for (std::size_t p = 0; p < game.player_count(); ++p)
    imperfect[game.player(p).name] = static_cast<bool>(info.imperfect[p]);
  info_json["imperfect"] = std::move(imperfect);
  json witnesses = json::array();
  for (const InfoWitness& w : info.witnesses) {
    json wj = json::object();
    wj["player"] = game.player(w.player).name;
    wj["cell"] = w.cell;
    wj["other_player"] = game.player(w.other_player).name;
    wj["other_cell"] = w.other_cell;
    wj["probability"] = format_rational(w.probability);
    witnesses.push_back(std::move(wj));
  }
  info_json["witnesses"] = std::move(witnesses);
  report.result["information"] = std::move(info_json);

  report.human.push_back("states: " + std::to_string(game.space().size()));
  report.human.push_back("utility kind: " + std::string(kind_name(game.utility_kind())));
  for (std::size_t p = 0; p < game.player_count(); ++p) {
    const PlayerDef& player = game.player(p);
    report.human.push_back(player.name + ": " + std::to_string(player.actions.size()) +
                           " actions, " + std::to_string(player.partition.block_count()) +
                           " cells, " + format_bigint(game.strategy_count(p)) + " strategies" +
                           (info.imperfect[p] ? " (imperfect information)" : ""));
  }
  report.human.push_back(std::string("common prior: ") +
                         (game.has_common_prior() ? "yes" : "no"));

  emit(report, human, out);
  return 0;
}

int cmd_solve_bayes(const std::string& path, bool human, std::ostream& out) {
  Report report;
  report.command = "solve bayes";
  GameDocument doc = load_game(path, report);
  std::vector<StrategyProfile> profiles = enumerate_bayes_rational(doc.game);
  report.result["count"] = profiles.size();
  json list = json::array();
  for (const StrategyProfile& profile : profiles)
    list.push_back(profile_labels(doc.game, profile));
  report.result["profiles"] = std::move(list);
  report.human.push_back("bayes-rational profiles: " + std::to_string(profiles.size()));
  for (const StrategyProfile& profile : profiles)
    report.human.push_back("  " + profile_text(doc.game, profile));
  emit(report, human, out);
  return 0;
}

std::vector<Rational> objective_from_text(const NormalFormGame& nf, const std::string& text) {
  if (text == "sum") return welfare_objective(nf);
  const std::string prefix = "player:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string name = text.substr(prefix.size());
    for (std::size_t p = 0; p < nf.players.size(); ++p) {
      if (nf.players[p] == name) return player_objective(nf, p);
    }
    fail(ErrorCode::ValidationError, "objective: unknown player \"" + name + "\"");
  }
  fail(ErrorCode::ValidationError,
       "objective: expected \"sum\" or \"player:NAME\", got \"" + text + "\"");
}

int cmd_solve_ce(const std::string& path, const std::string& objective, bool human,
                 std::ostream& out) {
  Report report;
  report.command = "solve ce";
  GameDocument doc = load_game(path, report);
  NormalFormGame nf = to_normal_form(doc.game);
  CEResult res = find_correlated_equilibrium(nf, objective_from_text(nf, objective));
  report.result["objective"] = objective;
  report.result["objective_value"] = format_rational(res.objective);
  report.result["distribution"] = distribution_json(nf, res.distribution);
  json certificate = json::array();
  for (const CESlack& s : res.certificate) certificate.push_back(slack_json(nf, s));
  report.result["certificate"] = std::move(certificate);

  report.human.push_back("objective " + objective + " = " + format_rational(res.objective));
  report.human.push_back("distribution:");
  std::vector<std::size_t> digits(res.distribution.dims.size(), 0);
  for (const Rational& w : res.distribution.weights) {
    if (w != 0)
      report.human.push_back("  " + choice_key(nf, digits) + ": " + format_rational(w));
    next_digits(digits, res.distribution.dims);
  }
  emit(report, human, out);
  return 0;
}

int cmd_ce_check(const std::string& game_path, const std::string& dist_path, bool human,
                 std::ostream& out) {
  Report report;
  report.command = "ce-check";
  GameDocument doc = load_game(game_path, report);
  std::string dist_bytes = read_file(dist_path);
  report.inputs["distribution"] = fnv1a_hex(dist_bytes);
  NormalFormGame nf = to_normal_form(doc.game);
  ActionDistribution d = parse_distribution(nf, dist_bytes);
  CEReport check = is_correlated_equilibrium(nf, d);
  report.result["ok"] = check.ok;
  json slacks = json::array();
  for (const CESlack& s : check.slacks) slacks.push_back(slack_json(nf, s));
  report.result["slacks"] = std::move(slacks);
  json violations = json::array();
  for (const CESlack& s : check.violations) violations.push_back(slack_json(nf, s));
  report.result["violations"] = std::move(violations);

  report.human.push_back(std::string("correlated equilibrium: ") + (check.ok ? "yes" : "no"));
  for (const CESlack& s : check.violations)
    report.human.push_back("  violated: " + slack_text(nf, s));
  emit(report, human, out);
  return check.ok ? 0 : 1;
}

int cmd_solve_coherent(const std::string& path, std::size_t max_systems, bool admissible_only,
                       bool human, std::ostream& out) {
  Report report;
  report.command = "solve coherent";
  GameDocument doc = load_game(path, report);
  const EpistemicGame& game = doc.game;
  std::vector<CoherentSystem> systems = enumerate_coherent_systems(game, max_systems);

  report.result["total"] = format_bigint(coherent_system_count(game));
  json list = json::array();
  std::size_t shown = 0;
  for (std::size_t k = 0; k < systems.size(); ++k) {
    std::vector<StrategyProfile> solutions = rational_solutions(game, systems[k]);
    if (admissible_only && solutions.empty()) continue;
    ++shown;
    json sj = json::object();
    sj["index"] = k;
    json profiles = json::array();
    for (const StrategyProfile& profile : systems[k].profiles)
      profiles.push_back(profile_labels(game, profile));
    sj["profiles"] = std::move(profiles);
    json sols = json::array();
    json utils = json::array();
    for (const StrategyProfile& profile : solutions) {
      sols.push_back(profile_labels(game, profile));
      json u = json::array();
      for (std::size_t p = 0; p < game.player_count(); ++p)
        u.push_back(format_rational(expected_utility(game, profile, p)));
      utils.push_back(std::move(u));
    }
    sj["solutions"] = std::move(sols);
    sj["solution_utilities"] = std::move(utils);
    list.push_back(std::move(sj));

    std::string line = "system " + std::to_string(k) + ": {";
    for (std::size_t i = 0; i < systems[k].profiles.size(); ++i) {
      if (i) line += ", ";
      line += profile_text(game, systems[k].profiles[i]);
    }
    line += "} solutions: ";
    if (solutions.empty()) {
      line += "none";
    } else {
      for (std::size_t i = 0; i < solutions.size(); ++i) {
        if (i) line += ", ";
        line += profile_text(game, solutions[i]);
      }
    }
    report.human.push_back(line);
  }
  report.result["systems"] = std::move(list);
  report.result["shown"] = shown;
  report.human.insert(report.human.begin(),
                      "coherent systems: " + format_bigint(coherent_system_count(game)) +
                          " total, showing " + std::to_string(shown));
  emit(report, human, out);
  return 0;
}

int cmd_solve_conjecture(const std::string& game_path, const std::string& conj_path,
                         const std::string& profile_arg, bool human, std::ostream& out) {
  Report report;
  report.command = "solve conjecture";
  GameDocument doc = load_game(game_path, report);
  const EpistemicGame& game = doc.game;
  std::string conj_bytes = read_file(conj_path);
  report.inputs["conjectures"] = fnv1a_hex(conj_bytes);
  ConjectureProfile conj = parse_conjectures(game, conj_bytes);

  json best = json::object();
  for (std::size_t p = 0; p < game.player_count(); ++p) {
    json labels = json::array();
    for (const Strategy& s : best_responses_to_conjecture(game, conj[p]))
      labels.push_back(game.strategy_label(s));
    best[game.player(p).name] = std::move(labels);
    std::string line = game.player(p).name + " best responses:";
    for (const Strategy& s : best_responses_to_conjecture(game, conj[p]))
      line += " " + game.strategy_label(s);
    report.human.push_back(line);
  }
  report.result["best_responses"] = std::move(best);

  if (!profile_arg.empty()) {
    StrategyProfile profile = parse_profile_argument(game, profile_arg);
    SubjectiveReport sub = subjectively_rational(game, conj, profile);
    const bool correct = conjectures_correct(game, conj, profile);
    SolutionClass cls = classify_solution(game, conj, profile);

    json pj = json::object();
    pj["labels"] = profile_labels(game, profile);
    json sj = json::object();
    sj["ok"] = sub.ok;
    json violations = json::array();
    for (const SubjectiveViolation& v : sub.violations) {
      json vj = json::object();
      vj["player"] = game.player(v.player).name;
      vj["better"] = game.strategy_label(v.better);
      vj["gain"] = format_rational(v.gain);
      violations.push_back(std::move(vj));
    }
    sj["violations"] = std::move(violations);
    pj["subjectively_rational"] = std::move(sj);
    pj["conjectures_correct"] = correct;
    pj["classification"] = solution_class_name(cls);
    report.result["profile"] = std::move(pj);

    report.human.push_back("profile " + profile_text(game, profile) + ": " +
                           solution_class_name(cls));
    for (const SubjectiveViolation& v : sub.violations)
      report.human.push_back("  " + game.player(v.player).name + " gains " +
                             format_rational(v.gain) + " by playing " +
                             game.strategy_label(v.better));
  }
  emit(report, human, out);
  return 0;
}

json theorem_json(const EpistemicGame& game, int theorem, const TheoremReport& r) {
  json tj = json::object();
  tj["theorem"] = theorem;
  tj["holds"] = r.holds;
  json pairs = json::array();
  for (const PairCheck& pc : r.pairs) {
    json pj = json::object();
    pj["first"] = game.player(pc.first).name;
    pj["second"] = game.player(pc.second).name;
    pj["search_size"] = format_bigint(pc.search_size);
    pj["witness_count"] = format_bigint(pc.witness_count);
    pairs.push_back(std::move(pj));
  }
  tj["pairs"] = std::move(pairs);
  tj["detail"] = r.detail;
  return tj;
}

int cmd_verify_theorems(const std::string& path, const std::string& which, bool human,
                        std::ostream& out) {
  if (which != "1" && which != "2" && which != "all")
    fail(ErrorCode::ValidationError,
         "--theorem: expected \"1\", \"2\" or \"all\", got \"" + which + "\"");
  Report report;
  report.command = "verify theorems";
  GameDocument doc = load_game(path, report);
  const EpistemicGame& game = doc.game;

  bool all_hold = true;
  json theorems = json::array();
  if (which == "1" || which == "all") {
    TheoremReport r1 = check_theorem1(game);
    all_hold = all_hold && r1.holds;
    theorems.push_back(theorem_json(game, 1, r1));
    report.human.push_back(std::string("theorem 1: ") + (r1.holds ? "holds" : "FAILS") +
                           " — " + r1.detail);
  }
  if (which == "2") {
    TheoremReport r2 = check_theorem2(game);
    all_hold = all_hold && r2.holds;
    theorems.push_back(theorem_json(game, 2, r2));
    report.human.push_back(std::string("theorem 2: ") + (r2.holds ? "holds" : "FAILS") +
                           " — " + r2.detail);
  } else if (which == "all") {
    // Imperfect information is a hypothesis of the second theorem; when it
    // does not hold the check is skipped rather than failed.
    try {
      TheoremReport r2 = check_theorem2(game);
      all_hold = all_hold && r2.holds;
      theorems.push_back(theorem_json(game, 2, r2));
      report.human.push_back(std::string("theorem 2: ") + (r2.holds ? "holds" : "FAILS") +
                             " — " + r2.detail);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotImperfectInformation) throw;
      json tj = json::object();
      tj["theorem"] = 2;
      tj["skipped"] = true;
      tj["reason"] = e.what();
      theorems.push_back(std::move(tj));
      report.human.push_back(std::string("theorem 2: skipped — ") + e.what());
    }
  }
  report.result["theorems"] = std::move(theorems);
  report.result["ok"] = all_hold;
  emit(report, human, out);
  return all_hold ? 0 : 1;
}

int cmd_decompose(const std::string& path, bool human, std::ostream& out) {
  Report report;
  report.command = "decompose";
  GameDocument doc = load_game(path, report);
  const EpistemicGame& game = doc.game;
  DecompositionReport r = decomposition_check(game);
  json optima = json::array();
  for (const Strategy& s : r.global_optima) optima.push_back(game.strategy_label(s));
  report.result["optima"] = std::move(optima);
  report.result["optimum"] = format_rational(r.optimum);
  report.result["cellwise_consistent"] = r.cellwise_consistent;
  report.result["detail"] = r.detail;

  std::string optima_text;
  for (std::size_t i = 0; i < r.global_optima.size(); ++i) {
    if (i) optima_text += ", ";
    optima_text += game.strategy_label(r.global_optima[i]);
  }
  report.human.push_back("optimum " + format_rational(r.optimum) + " attained by: " +
                         optima_text);
  report.human.push_back(std::string("cellwise consistent: ") +
                         (r.cellwise_consistent ? "yes" : "no"));
  report.human.push_back(r.detail);
  emit(report, human, out);
  return 0;
}

int cmd_export(const std::string& name, bool conjectures, bool list, std::ostream& out) {
  if (list) {
    for (const std::string& example : example_names()) out << example << "\n";
    return 0;
  }
  if (name.empty())
    fail(ErrorCode::ValidationError, "export: expected an example name (or --list)");
  if (conjectures) {
    std::optional<std::string> companion = example_conjectures(name);
    if (!companion)
      fail(ErrorCode::ValidationError,
           "example \"" + name + "\" has no conjecture companion");
    out << *companion;
    return 0;
  }
  out << export_example(name);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact analysis of finite epistemic games"};
  app.name("epigame");
  app.require_subcommand(1);

  int exit_code = 0;
  bool human = false;
  auto add_human = [&human](CLI::App* cmd) {
    cmd->add_flag("--human", human, "plain-text rendering instead of JSON");
  };

  std::string game_path;
  std::string dist_path;
  std::string conj_path;
  std::string profile_arg;
  std::string objective = "sum";
  std::string theorem = "all";
  std::string example_name;
  std::size_t max_systems = 10000;
  bool admissible_only = false;
  bool export_conjectures = false;
  bool export_list = false;

  CLI::App* validate = app.add_subcommand("validate", "parse and fully validate a game file");
  validate->add_option("file", game_path, "game file")->required();
  add_human(validate);
  validate->callback([&] { exit_code = cmd_validate(game_path, human, out); });

  CLI::App* info = app.add_subcommand("info", "describe a game: players, partitions, join");
  info->add_option("file", game_path, "game file")->required();
  add_human(info);
  info->callback([&] { exit_code = cmd_info(game_path, human, out); });

  CLI::App* solve = app.add_subcommand("solve", "compute solutions");
  solve->require_subcommand(1);

  CLI::App* bayes = solve->add_subcommand("bayes", "enumerate Bayes-rational profiles");
  bayes->add_option("file", game_path, "game file")->required();
  add_human(bayes);
  bayes->callback([&] { exit_code = cmd_solve_bayes(game_path, human, out); });

  CLI::App* ce = solve->add_subcommand("ce", "optimize over correlated equilibria");
  ce->add_option("file", game_path, "game file")->required();
  ce->add_option("--objective", objective, "\"sum\" or \"player:NAME\"");
  add_human(ce);
  ce->callback([&] { exit_code = cmd_solve_ce(game_path, objective, human, out); });

  CLI::App* coherent = solve->add_subcommand("coherent", "enumerate coherent systems");
  coherent->add_option("file", game_path, "game file")->required();
  coherent->add_option("--max-systems", max_systems, "refuse when more systems exist");
  coherent->add_flag("--admissible-only", admissible_only,
                     "only systems with a nonempty rational-solution set");
  add_human(coherent);
  coherent->callback([&] {
    exit_code = cmd_solve_coherent(game_path, max_systems, admissible_only, human, out);
  });

  CLI::App* conjecture =
      solve->add_subcommand("conjecture", "best responses to conjectures; classification");
  conjecture->add_option("file", game_path, "game file")->required();
  conjecture->add_option("conjectures", conj_path, "conjecture file")->required();
  conjecture->add_option("--profile", profile_arg,
                         "comma-separated strategy labels to classify");
  add_human(conjecture);
  conjecture->callback([&] {
    exit_code = cmd_solve_conjecture(game_path, conj_path, profile_arg, human, out);
  });

  CLI::App* ce_check = app.add_subcommand("ce-check", "test a distribution for equilibrium");
  ce_check->add_option("file", game_path, "game file")->required();
  ce_check->add_option("distribution", dist_path, "distribution file")->required();
  add_human(ce_check);
  ce_check->callback([&] { exit_code = cmd_ce_check(game_path, dist_path, human, out); });

  CLI::App* verify = app.add_subcommand("verify", "check impossibility statements");
  verify->require_subcommand(1);
  CLI::App* theorems = verify->add_subcommand("theorems", "run the scenario searches");
  theorems->add_option("file", game_path, "game file")->required();
  theorems->add_option("--theorem", theorem, "\"1\", \"2\" or \"all\"");
  add_human(theorems);
  theorems->callback([&] { exit_code = cmd_verify_theorems(game_path, theorem, human, out); });

  CLI::App* decompose =
      app.add_subcommand("decompose", "single-player cellwise-optimization check");
  decompose->add_option("file", game_path, "game file")->required();
  add_human(decompose);
  decompose->callback([&] { exit_code = cmd_decompose(game_path, human, out); });

  CLI::App* exporter = app.add_subcommand("export", "print a built-in example file");
  exporter->add_option("name", example_name, "example name");
  exporter->add_flag("--conjectures", export_conjectures, "print the companion conjecture file");
  exporter->add_flag("--list", export_list, "list example names");
  exporter->callback([&] {
    exit_code = cmd_export(example_name, export_conjectures, export_list, out);
  });

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  } catch (const Error& e) {
    json j = json::object();
    j["error"] = {{"code", e.code_name()}, {"message", e.what()}};
    err << j.dump(2) << "\n";
    return 2;
  }
  return exit_code;
}

}  // namespace epigame
