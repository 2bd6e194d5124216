// cgw: command-line front end for games, strategies, traces, the
// exponential, asynchronous checks, the Algol interpreter and the suites.
//
// Exit codes: 0 pass, 1 semantic failure, 2 resource bound hit, 3 usage or
// input error.

#include "cgw/algol/denote.hpp"
#include "cgw/algol/eval.hpp"
#include "cgw/algol/programs.hpp"
#include "cgw/algol/typing.hpp"
#include "cgw/async_graph.hpp"
#include "cgw/exponential.hpp"
#include "cgw/io.hpp"
#include "cgw/monoidal.hpp"
#include "cgw/suites.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

using namespace cgw;

namespace {

constexpr int kPass = 0, kFail = 1, kBound = 2, kUsage = 3;

struct Options {
  RunConfig run;
  std::string format = "plain";
  bool tsv() const { return format == "tsv"; }
};

// One output row: key and value, aligned in plain mode, tab separated in tsv.
void row(const Options& o, const std::string& key, const std::string& value) {
  if (o.tsv())
    std::cout << key << '\t' << value << '\n';
  else
    std::cout << key << ": " << value << '\n';
}

// "FILE" or "FILE:NAME"; without a name the file must hold exactly one strategy.
NamedStrategy strategy_ref(const std::string& ref) {
  std::string path = ref, name;
  const auto colon = ref.rfind(':');
  if (colon != std::string::npos && !std::filesystem::exists(ref)) {
    path = ref.substr(0, colon);
    name = ref.substr(colon + 1);
  }
  const auto all = load_strategies(path);
  if (name.empty()) {
    if (all.size() != 1) throw std::runtime_error(path + " holds " + std::to_string(all.size()) + " strategies; use FILE:NAME");
    return all.front();
  }
  for (const NamedStrategy& s : all)
    if (s.name == name) return s;
  throw std::runtime_error("no strategy '" + name + "' in " + path);
}

GameLibrary library(const std::string& games) { return games.empty() ? builtin_games() : load_game_library(games); }

void print_plays(const Options& o, const Strategy& s) {
  for (const Moves& p : s.plays) row(o, "play", format_moves(s.game, p));
}

// ---- game ----

int game_validate(const Options& o, const std::string& games, const std::vector<std::string>& exprs) {
  std::vector<std::pair<std::string, Game>> todo;
  const GameLibrary lib = library(games);
  if (exprs.empty()) {
    if (games.empty()) throw CLI::ValidationError("game validate", "give --games FILE or game expressions");
    for (const GameSpec& s : parse_game_file(read_file(games))) todo.push_back({s.name, lib.at(s.name)});
  }
  for (const std::string& e : exprs) todo.push_back({e, parse_game_expr(e, lib)});
  int rc = kPass;
  for (const auto& [name, g] : todo) {
    const PayoffReport r = validate_payoff(g);
    if (r.ok()) {
      row(o, name, "valid (" + std::to_string(r.paths_checked) + " paths)");
      continue;
    }
    rc = kFail;
    const PayoffViolation& v = r.violations.front();
    row(o, name,
        "violates " + std::string(axiom_name(v.axiom)) + " at " + g.position_name(v.source) + ": " +
            format_moves(g, v.first) + (v.second.empty() ? "" : " / " + format_moves(g, v.second)) +
            (v.detail.empty() ? "" : " (" + v.detail + ")"));
  }
  return rc;
}

int game_print(const std::string& file) {
  std::cout << print_game_file(parse_game_file(read_file(file)));
  return kPass;
}

int game_paths(const Options& o, const std::string& games, const std::string& expr, std::size_t max_len) {
  const Game g = parse_game_expr(expr, library(games));
  for (const Path& p : enumerate_paths(g, g.root(), max_len))
    row(o, format_moves(g, p.moves), to_string(g.payoff(p.source, p.moves)));
  return kPass;
}

// ---- strategy ----

int strategy_validate(const Options& o, const std::string& ref) {
  const NamedStrategy s = strategy_ref(ref);
  const StrategyReport r = validate_strategy(s.strategy);
  if (r.ok()) {
    row(o, s.name, "valid (" + std::to_string(s.strategy.plays.size()) + " plays)");
    return kPass;
  }
  for (const StrategyIssue& i : r.issues)
    row(o, s.name, i.clause + ": " + format_moves(s.strategy.game, i.play) + (i.detail.empty() ? "" : " " + i.detail));
  return kFail;
}

int strategy_compose(const Options& o, const std::string& a, const std::string& b, const std::string& name) {
  const NamedStrategy f = strategy_ref(a), g = strategy_ref(b);
  const Strategy fg = compose(f.strategy, g.strategy);
  if (o.tsv()) {
    print_plays(o, fg);
  } else {
    std::cout << print_strategy_file({describe_strategy(name.empty() ? f.name + "-then-" + g.name : name, "",
                                                        fg.game.expression(), fg)});
  }
  return kPass;
}

int strategy_witness(const Options& o, const std::string& a, const std::string& b, const std::string& play) {
  const NamedStrategy f = strategy_ref(a), g = strategy_ref(b);
  const Strategy fg = compose(f.strategy, g.strategy);
  const Moves s = parse_moves(fg.game, play);
  const auto ws = witnesses(s, f.strategy, g.strategy);
  row(o, "witnesses", std::to_string(ws.size()));
  const InteractionSet is = interactions(f.strategy, g.strategy);
  const Game* comp[] = {&is.a, &is.b, &is.c};
  const char* tag[] = {"A", "B", "C"};
  for (const Interaction& w : ws) {
    std::string text;
    for (const auto& [k, m] : w.moves) {
      if (!text.empty()) text += ' ';
      text += std::string(tag[k]) + ":" + comp[k]->move_name(m);
    }
    row(o, "interaction", text.empty() ? "eps" : text);
  }
  return ws.size() == 1 ? kPass : kFail;
}

int strategy_winning(const Options& o, const std::string& ref) {
  const NamedStrategy s = strategy_ref(ref);
  const WinningReport r = is_winning(s.strategy);
  row(o, s.name, r.winning ? "winning" : "not winning");
  row(o, "paths", std::to_string(r.paths_checked));
  for (const PlayedPath& p : r.violations)
    row(o, "violation",
        format_moves(s.strategy.game, p.moves) + " from " + s.strategy.game.position_name(p.source) + " payoff " +
            to_string(p.payoff));
  return r.winning ? kPass : kFail;
}

// ---- trace ----

int trace_apply(const Options& o, const std::string& ref, const std::string& games, const std::string& over) {
  const NamedStrategy s = strategy_ref(ref);
  const Game x = parse_game_expr(over, library(games));
  const MorphismShape sh = shape_of(s.strategy.game);
  const StrategyMorphism t = trace(make_morphism(sh.src, sh.dst, s.strategy), x);
  row(o, "game", t.strat.game.expression());
  print_plays(o, t.strat);
  return kPass;
}

int trace_axioms(const Options& o, std::size_t count) {
  RunConfig cfg = o.run;
  cfg.count = count;
  const SuiteReport r = run_suite("traced-axioms", cfg);
  std::cout << format_report(r, o.tsv());
  return r.ok() ? kPass : kFail;
}

// ---- bang ----

int bang_build(const Options& o, const std::string& games, const std::string& expr, unsigned copies) {
  const Game a = parse_game_expr(expr, library(games));
  const BangGame b = bang(a, copies);
  row(o, "game", b.game.expression());
  row(o, "positions", std::to_string(reachable_positions(b.game).size()));
  row(o, "moves", std::to_string(b.game.move_count()));
  row(o, "longest path", std::to_string(b.game.max_path_length()));
  const PayoffReport r = validate_payoff(b.game);
  row(o, "payoff axioms", r.ok() ? "valid" : std::string("violates ") + std::string(axiom_name(r.violations[0].axiom)));
  return r.ok() ? kPass : kFail;
}

int bang_laws(const Options& o, const std::string& games, const std::string& expr, unsigned copies, std::size_t len) {
  const Game a = parse_game_expr(expr, library(games));
  const ComonoidReport r = comonoid_law_check(a, copies, len);
  for (const LawResult& l : r.laws)
    row(o, l.law, std::string(l.pass ? "pass" : "FAIL") + " (" + std::to_string(l.plays) + " plays)" +
                      (l.witness.empty() ? "" : " " + l.witness));
  const EmbeddingReport e = bang_embedding_check(a, copies);
  row(o, "embedding", std::string(e.ok ? "pass" : "FAIL") + (e.witness.empty() ? "" : " " + e.witness));
  return r.ok() && e.ok ? kPass : kFail;
}

// ---- async ----

int async_check(const Options& o, bool innocent, bool positional, bool functorial, const std::vector<std::string>& refs) {
  if (!innocent && !positional && !functorial) innocent = positional = true;
  int rc = kPass;
  const NamedStrategy s = strategy_ref(refs.at(0));
  const Game& g = s.strategy.game;
  if (innocent) {
    const InnocenceReport r = is_innocent(s.strategy);
    switch (r.verdict) {
      case InnocenceReport::Verdict::Innocent:
        row(o, "innocent", "yes");
        break;
      case InnocenceReport::Verdict::NotWinning:
        row(o, "innocent", "no: not winning");
        rc = kFail;
        break;
      case InnocenceReport::Verdict::NotInnocent:
        row(o, "innocent", "no: " + r.clause + " clause at " + format_moves(g, r.witness) +
                               (r.detail.empty() ? "" : " (" + r.detail + ")"));
        rc = kFail;
        break;
    }
  }
  if (positional) {
    const PositionalReport r = is_positional(s.strategy);
    if (r.positional) {
      row(o, "positional", "yes");
    } else {
      row(o, "positional", "no: " + format_moves(g, r.first) + " ~ " + format_moves(g, r.second) + ", only the first continues with " +
                               format_moves(g, r.suffix));
      rc = kFail;
    }
  }
  if (functorial) {
    if (refs.size() != 2) throw CLI::ValidationError("async check --functorial", "needs two strategies");
    const NamedStrategy t = strategy_ref(refs[1]);
    const FunctorialityReport r = positional_functoriality_check(s.strategy, t.strategy);
    row(o, "compose", r.compose_ok ? "equal" : "differ");
    row(o, "tensor", r.tensor_ok ? "equal" : "differ");
    if (!r.witness.empty()) row(o, "witness", r.witness);
    if (!r.ok()) rc = kFail;
  }
  return rc;
}

// ---- algol ----

struct AlgolInput {
  std::vector<algol::ProgramCase> cases;
  bool expectations = false;  // cases come from a program file with values
};

AlgolInput algol_input(const std::string& file, const std::string& expr, const std::string& store, const std::string& name) {
  using namespace algol;
  AlgolInput in;
  std::string text = expr;
  if (!file.empty()) text = read_file(file);
  // a program file is recognised by its first line that is not blank or a comment
  bool blocks = false;
  std::istringstream lines(text);
  for (std::string l; expr.empty() && std::getline(lines, l);) {
    const auto first = l.find_first_not_of(" \t\r");
    if (first == std::string::npos || l[first] == '#') continue;
    blocks = l[first] == '[';
    break;
  }
  if (blocks) {
    in.cases = parse_programs(text);
    in.expectations = true;
    if (!name.empty()) {
      std::erase_if(in.cases, [&](const ProgramCase& c) { return c.name != name; });
      if (in.cases.empty()) throw std::runtime_error("no program named " + name);
    }
    return in;
  }
  ProgramCase c;
  c.name = file.empty() ? "term" : std::filesystem::path(file).stem().string();
  c.source = text;
  c.term = parse_term(text);
  c.store = parse_store(store);
  in.cases.push_back(std::move(c));
  return in;
}

int worst(int a, int b) {
  if (a == kBound || b == kBound) return kBound;
  return std::max(a, b);
}

int algol_cmd(const Options& o, const std::string& what, const AlgolInput& in) {
  using namespace algol;
  const DenoteConfig dc{o.run.copies, o.run.max_len, o.run.nat_max};
  int rc = kPass;
  for (const ProgramCase& c : in.cases) {
    const std::string p = in.cases.size() > 1 ? c.name + "." : "";
    try {
      if (what == "parse") {
        row(o, p + "term", print_term(c.term));
        if (!c.store.empty()) row(o, p + "store", print_store(c.store));
      } else if (what == "type") {
        const TypedConfig t = typecheck_config(c.term, c.store);
        row(o, p + "type", print_type(t.term.type));
        for (const Binding& b : t.delta) row(o, p + "ref " + b.name, print_type(b.type));
      } else if (what == "run") {
        EvalStats st;
        const Config out = eval({c.term, c.store}, o.run.fuel, &st);
        row(o, p + "value", print_term(out.term));
        row(o, p + "store", print_store(out.store));
        row(o, p + "rules", std::to_string(st.rules) + " (height " + std::to_string(st.height) + ")");
        if (in.expectations) {
          const RunOutcome r = run_program(c, o.run.fuel);
          row(o, p + "expected", r.ok ? "match" : "MISMATCH " + r.detail);
          if (!r.ok) rc = worst(rc, kFail);
        }
      } else if (what == "denote") {
        const ClosedDenotation d = denote_closed(c.term, c.store, dc);
        row(o, p + "type", print_type(d.type));
        const Strategy s = d.on_type();
        row(o, p + "plays", std::to_string(s.plays.size()) + (d.play_set.overflow ? " (overflow)" : ""));
        for (const Moves& m : s.plays) row(o, p + "play", format_moves(s.game, m));
        if (d.play_set.overflow) {
          row(o, p + "overflow", d.play_set.note);
          rc = worst(rc, kBound);
        }
      } else if (what == "correction") {
        const CorrectionReport r = correction_check(c.term, c.store, dc, o.run.fuel);
        row(o, p + "status", status_name(r.status));
        if (r.value) row(o, p + "value", print_term(r.value));
        if (r.value) row(o, p + "final store", print_store(r.final_store));
        row(o, p + "plays", std::to_string(r.plays) + (r.store_observed ? " (store observed)" : ""));
        if (!r.witness.empty()) row(o, p + "witness", r.witness);
        if (r.status == CorrectionReport::Status::Overflow ||
            (r.status == CorrectionReport::Status::EvalFailed && r.witness.find("fuel") != std::string::npos))
          rc = worst(rc, kBound);
        else if (!r.ok())
          rc = worst(rc, kFail);
      }
    } catch (const TypeError& e) {
      row(o, p + "error", std::string("type error: ") + e.what());
      rc = worst(rc, kFail);
    } catch (const EvalError& e) {
      row(o, p + "error", e.what());
      rc = worst(rc, e.kind == EvalError::Kind::FuelExhausted ? kBound : kFail);
    } catch (const DenoteError& e) {
      row(o, p + "error", std::string("denote: ") + e.what());
      rc = worst(rc, kFail);
    }
  }
  return rc;
}

// ---- suite ----

int suite_cmd(const Options& o, const std::string& name) {
  const std::vector<std::string> names = name == "all" ? suite_names() : std::vector<std::string>{name};
  int rc = kPass;
  for (const std::string& n : names) {
    const SuiteReport r = run_suite(n, o.run);
    std::cout << format_report(r, o.tsv());
    if (!r.ok()) rc = kFail;
  }
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Payoff Conway game workbench"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"plain", "tsv"}))->capture_default_str();
  app.add_option("--seed", o.run.seed, "Seed for generated corpora")->capture_default_str();
  app.add_option("--jobs", o.run.jobs, "Parallel checks (output order is fixed)")->check(CLI::PositiveNumber);
  app.add_option("--data", o.run.data_dir, "Bundled data directory")->capture_default_str();
  app.fallthrough();

  std::function<int()> action;
  auto bind = [&](CLI::App* sub, std::function<int()> f) { sub->callback([&action, f] { action = f; }); };

  // game
  auto* game = app.add_subcommand("game", "Finite games and payoff axioms");
  game->require_subcommand(1);
  static std::string games_file, expr1, file1;
  static std::vector<std::string> exprs;
  static std::size_t max_len = 4;
  {
    auto* v = game->add_subcommand("validate", "Check the payoff axioms");
    v->add_option("--games", games_file, "Game file");
    v->add_option("exprs", exprs, "Game expressions (default: every game of the file)");
    bind(v, [&] { return game_validate(o, games_file, exprs); });
    auto* p = game->add_subcommand("print", "Parse a game file and print it canonically");
    p->add_option("file", file1)->required()->check(CLI::ExistingFile);
    bind(p, [&] { return game_print(file1); });
    auto* ps = game->add_subcommand("paths", "List paths from the root with their payoff");
    ps->add_option("--games", games_file, "Game file");
    ps->add_option("expr", expr1)->required();
    ps->add_option("--max-len", max_len)->capture_default_str();
    bind(ps, [&] { return game_paths(o, games_file, expr1, max_len); });
  }

  // strategy
  static std::string ref1, ref2, play, out_name;
  auto* strat = app.add_subcommand("strategy", "Strategies: validity, composition, witnesses, winning");
  strat->require_subcommand(1);
  {
    auto* v = strat->add_subcommand("validate", "Check the strategy clauses");
    v->add_option("strategy", ref1, "FILE or FILE:NAME")->required();
    bind(v, [&] { return strategy_validate(o, ref1); });
    auto* c = strat->add_subcommand("compose", "Compose A -> B with B -> C");
    c->add_option("first", ref1)->required();
    c->add_option("second", ref2)->required();
    c->add_option("--name", out_name, "Name of the printed composite");
    bind(c, [&] { return strategy_compose(o, ref1, ref2, out_name); });
    auto* w = strat->add_subcommand("witness", "Interactions hiding to a play of the composite");
    w->add_option("first", ref1)->required();
    w->add_option("second", ref2)->required();
    w->add_option("--play", play, "Play of the composite, move names")->required();
    bind(w, [&] { return strategy_witness(o, ref1, ref2, play); });
    auto* win = strat->add_subcommand("winning", "Check the winning condition");
    win->add_option("strategy", ref1)->required();
    bind(win, [&] { return strategy_winning(o, ref1); });
  }

  // trace
  static std::size_t count = 50;
  auto* tr = app.add_subcommand("trace", "The trace operator");
  tr->require_subcommand(1);
  {
    auto* a = tr->add_subcommand("apply", "Trace a strategy X(x)A -> X(x)B over X");
    a->add_option("strategy", ref1)->required();
    a->add_option("--over", expr1, "Game expression for X")->required();
    a->add_option("--games", games_file, "Game file for the expression");
    bind(a, [&] { return trace_apply(o, ref1, games_file, expr1); });
    auto* ax = tr->add_subcommand("axioms", "Yanking, strength, naturality, sliding, vanishing on a seeded corpus");
    ax->add_option("--count", count)->capture_default_str();
    bind(ax, [&] { return trace_axioms(o, count); });
  }

  // bang
  static unsigned copies = 2;
  static std::size_t law_len = 8;
  auto* bg = app.add_subcommand("bang", "The truncated exponential");
  bg->require_subcommand(1);
  {
    auto* b = bg->add_subcommand("build", "Build bang(A, k) and report its size");
    b->add_option("expr", expr1)->required();
    b->add_option("--games", games_file, "Game file");
    b->add_option("--copies", copies)->capture_default_str()->check(CLI::PositiveNumber);
    bind(b, [&] { return bang_build(o, games_file, expr1, copies); });
    auto* l = bg->add_subcommand("laws", "Comonoid laws and the copy embedding");
    l->add_option("expr", expr1)->required();
    l->add_option("--games", games_file, "Game file");
    l->add_option("--copies", copies)->capture_default_str()->check(CLI::PositiveNumber);
    l->add_option("--max-len", law_len)->capture_default_str();
    bind(l, [&] { return bang_laws(o, games_file, expr1, copies, law_len); });
  }

  // async
  static bool innocent = false, positional = false, functorial = false;
  static std::vector<std::string> refs;
  auto* as = app.add_subcommand("async", "Asynchronous checks");
  as->require_subcommand(1);
  {
    auto* c = as->add_subcommand("check", "Innocence, positionality, functoriality of the positional collapse");
    c->add_flag("--innocent", innocent);
    c->add_flag("--positional", positional);
    c->add_flag("--functorial", functorial);
    c->add_option("strategies", refs, "FILE or FILE:NAME (two for --functorial)")->required();
    bind(c, [&] { return async_check(o, innocent, positional, functorial, refs); });
  }

  // algol
  static std::string term, store, prog;
  auto* al = app.add_subcommand("algol", "The Algol-like language");
  al->require_subcommand(1);
  for (const char* what : {"parse", "type", "run", "denote", "correction"}) {
    auto* c = al->add_subcommand(what, std::string("algol ") + what);
    c->add_option("file", file1, "Program file: a single term, or [name] blocks");
    c->add_option("-e,--term", term, "Term given inline");
    c->add_option("--store", store, "Initial store, e.g. \"x := 1, y := T\"");
    c->add_option("--name", prog, "Program of a [name] file");
    c->add_option("--fuel", o.run.fuel)->capture_default_str()->check(CLI::PositiveNumber);
    c->add_option("--copies", o.run.copies)->capture_default_str()->check(CLI::PositiveNumber);
    c->add_option("--max-len", o.run.max_len)->capture_default_str()->check(CLI::PositiveNumber);
    c->add_option("--nat-max", o.run.nat_max)->capture_default_str()->check(CLI::PositiveNumber);
    const std::string w = what;
    bind(c, [&, w] {
      if (file1.empty() == term.empty()) throw CLI::ValidationError("algol", "give a file or --term");
      return algol_cmd(o, w, algol_input(file1, term, store, prog));
    });
  }

  // suite
  static std::string suite;
  auto* su = app.add_subcommand("suite", "Run a named property suite");
  {
    std::vector<std::string> choices = suite_names();
    choices.push_back("all");
    su->add_option("name", suite)->required()->check(CLI::IsMember(choices));
    su->add_option("--count", o.run.count, "Corpus size (0: suite default)");
    su->add_option("--copies", o.run.copies)->capture_default_str()->check(CLI::PositiveNumber);
    su->add_option("--max-len", o.run.max_len)->capture_default_str()->check(CLI::PositiveNumber);
    su->add_option("--nat-max", o.run.nat_max)->capture_default_str()->check(CLI::PositiveNumber);
    su->add_option("--fuel", o.run.fuel)->capture_default_str()->check(CLI::PositiveNumber);
    bind(su, [&] { return suite_cmd(o, suite); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }
  try {
    return action ? action() : kUsage;
  } catch (const CLI::Error& e) {
    std::cerr << "cgw: " << e.what() << '\n';
    return kUsage;
  } catch (const algol::ParseError& e) {
    std::cerr << "cgw: parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "cgw: " << e.what() << '\n';
    return kUsage;
  }
}
