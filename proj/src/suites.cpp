#include "cgw/suites.hpp"

#include "cgw/algol/denote.hpp"
#include "cgw/algol/programs.hpp"
#include "cgw/async_graph.hpp"
#include "cgw/corpus.hpp"
#include "cgw/exponential.hpp"
#include "cgw/io.hpp"
#include "cgw/monoidal.hpp"
#include "cgw/strategy.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace cgw {

namespace {

using Task = std::function<CheckLine()>;

CheckLine line(std::string id, bool pass, std::string witness = "") {
  return {std::move(id), pass ? CheckLine::Status::Pass : CheckLine::Status::Fail, pass ? "" : std::move(witness)};
}

CheckLine info(std::string id, std::string text) { return {std::move(id), CheckLine::Status::Info, std::move(text)}; }

// Tasks run in index order when jobs == 1 and otherwise in parallel; the
// result order is the task order either way.
std::vector<CheckLine> run_tasks(const std::vector<Task>& tasks, int jobs) {
  std::vector<CheckLine> out(tasks.size());
  auto one = [&](std::size_t i) {
    try {
      out[i] = tasks[i]();
    } catch (const std::exception& e) {
      out[i] = line("task-" + std::to_string(i), false, std::string("exception: ") + e.what());
    }
  };
  if (jobs <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) one(i);
  } else {
    const auto n = static_cast<std::ptrdiff_t>(tasks.size());
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
    for (std::ptrdiff_t i = 0; i < n; ++i) one(static_cast<std::size_t>(i));
  }
  return out;
}

std::string data(const RunConfig& cfg, const std::string& rel) { return cfg.data_dir + "/" + rel; }

std::size_t count_or(const RunConfig& cfg, std::size_t dflt) { return cfg.count ? cfg.count : dflt; }

std::string first_violation(const Game& g, const PayoffReport& r) {
  if (r.ok()) return "";
  const PayoffViolation& v = r.violations.front();
  return std::string(axiom_name(v.axiom)) + " at " + g.position_name(v.source) + ": " + format_moves(g, v.first) +
         (v.second.empty() ? "" : " / " + format_moves(g, v.second));
}

const NamedStrategy& find_strategy(const std::vector<NamedStrategy>& all, const std::string& name) {
  for (const NamedStrategy& s : all)
    if (s.name == name) return s;
  throw std::runtime_error("bundled strategy '" + name + "' is missing");
}

// ---- payoff-axioms ----

std::vector<Task> payoff_tasks(const RunConfig& cfg) {
  const GameLibrary lib = load_game_library(data(cfg, "games/base.game"));
  std::vector<std::pair<std::string, Game>> games;
  const std::vector<std::pair<std::string, Game>> bases = {
      {"bool", lib.at("bool")}, {"two", lib.at("two")}, {"nat(" + std::to_string(cfg.nat_max) + ")", nat_game(cfg.nat_max)}};
  for (const auto& [n, g] : bases) {
    games.push_back({n, g});
    games.push_back({"dual(" + n + ")", dual(g)});
  }
  for (const auto& [n, a] : bases)
    for (const auto& [m, b] : bases) {
      games.push_back({"tensor(" + n + ", " + m + ")", tensor(a, b)});
      games.push_back({"tensor(dual(" + n + "), " + m + ")", tensor(dual(a), b)});
      games.push_back({"loli(" + n + ", " + m + ")", loli(a, b)});
    }
  const Game b = lib.at("bool");
  games.push_back({"loli(loli(bool, bool), bool)", loli(loli(b, b), b)});
  games.push_back({"tensor(bool, tensor(bool, bool))", tensor(b, tensor(b, b))});
  games.push_back({"loli(tensor(bool, bool), bool)", loli(tensor(b, b), b)});
  std::vector<Task> tasks;
  for (const auto& [name, g] : games)
    tasks.push_back([name, g] {
      const PayoffReport r = validate_payoff(g);
      return line("valid." + name, r.ok(), first_violation(g, r));
    });
  const GameLibrary bad = load_game_library(data(cfg, "games/violations.game"));
  const std::map<std::string, Axiom> expected = {{"bad-norm", Axiom::Norm},
                                                 {"bad-subadditivity", Axiom::SubAdditivity},
                                                 {"bad-suffix", Axiom::SuffixDomination},
                                                 {"bad-compatibility", Axiom::Compatibility}};
  for (const auto& [name, axiom] : expected) {
    const Game g = bad.at(name);
    const Axiom want = axiom;
    tasks.push_back([name, g, want] {
      const PayoffReport r = validate_payoff(g);
      bool named = false;
      for (const PayoffViolation& v : r.violations) named = named || v.axiom == want;
      return line("rejected." + name, named,
                  r.ok() ? "accepted" : "named " + first_violation(g, r) + ", expected " + std::string(axiom_name(want)));
    });
  }
  return tasks;
}

// ---- bracketing ----

std::vector<Task> bracketing_tasks(const RunConfig& cfg) {
  const auto strategies = load_strategies(data(cfg, "strategies/bool.strat"));
  const Strategy early = find_strategy(strategies, "early-answer").strategy;
  const Strategy full = find_strategy(strategies, "apply-to-true").strategy;
  std::vector<Task> tasks;
  tasks.push_back([early] {
    const StrategyReport r = validate_strategy(early);
    return line("early-answer.valid", r.ok(), r.ok() ? "" : r.issues.front().clause);
  });
  tasks.push_back([early] {
    const WinningReport r = is_winning(early);
    if (r.winning) return line("early-answer.not-winning", false, "reported winning");
    const PlayedPath& v = r.violations.front();
    return line("early-answer.not-winning", v.payoff == Payoff{0, 1},
                "witness " + format_moves(early.game, v.moves) + " has payoff " + to_string(v.payoff));
  });
  tasks.push_back([early] {
    const WinningReport r = is_winning(early);
    return info("early-answer.witness",
                r.violations.empty() ? "none"
                                     : format_moves(early.game, r.violations.front().moves) + " payoff " +
                                           to_string(r.violations.front().payoff));
  });
  tasks.push_back([early] {
    const Moves play = *early.plays.rbegin();
    return line("early-answer.player-bracketing", !is_well_bracketed(early.game, play, Bracketing::Player),
                "accepted " + format_moves(early.game, play));
  });
  tasks.push_back([full] {
    for (const Moves& p : full.plays)
      if (!is_well_bracketed(full.game, p, Bracketing::Both))
        return line("apply-to-true.bracketing", false, format_moves(full.game, p));
    return line("apply-to-true.bracketing", true);
  });
  tasks.push_back([full] {
    return line("apply-to-true.winning", is_winning(full).winning, "not winning");
  });
  return tasks;
}

// ---- category-laws ----

std::string diff_witness(const Strategy& l, const Strategy& r) {
  for (const Moves& p : l.plays)
    if (!r.contains(p)) return "left only: " + format_moves(l.game, p);
  for (const Moves& p : r.plays)
    if (!l.contains(p)) return "right only: " + format_moves(r.game, p);
  return "games differ";
}

CheckLine witness_check(const std::string& id, const Strategy& f, const Strategy& g) {
  const Strategy fg = compose(f, g);
  for (const Moves& s : fg.plays) {
    const auto ws = witnesses(s, f, g);
    if (ws.size() != 1)
      return line(id, false, std::to_string(ws.size()) + " witnesses for " + format_moves(fg.game, s));
    for (std::size_t n = 0; n < s.size(); n += 2) {
      const Moves pre(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(n));
      const auto wp = witnesses(pre, f, g);
      if (wp.size() != 1 || wp[0].moves.size() > ws[0].moves.size() ||
          !std::equal(wp[0].moves.begin(), wp[0].moves.end(), ws[0].moves.begin()))
        return line(id, false, "witness of " + format_moves(fg.game, pre) + " is not a prefix");
    }
  }
  return line(id, true);
}

std::vector<Task> category_tasks(const RunConfig& cfg) {
  std::vector<Task> tasks;
  for (const Triple& t : category_corpus(cfg.seed, count_or(cfg, 24))) {
    tasks.push_back([t] {
      const Game a = shape_of(t.f.game).src;
      const Strategy l = compose(copycat(a), t.f);
      return line(t.id + ".left-identity", l == t.f, diff_witness(l, t.f));
    });
    tasks.push_back([t] {
      const Game b = shape_of(t.f.game).dst;
      const Strategy r = compose(t.f, copycat(b));
      return line(t.id + ".right-identity", r == t.f, diff_witness(r, t.f));
    });
    tasks.push_back([t] {
      const Strategy l = compose(compose(t.f, t.g), t.h);
      const Strategy r = compose(t.f, compose(t.g, t.h));
      return line(t.id + ".associativity", l == r, diff_witness(l, r));
    });
    tasks.push_back([t] {
      CheckLine c = witness_check(t.id + ".witness", t.f, t.g);
      if (c.status != CheckLine::Status::Pass) return c;
      c = witness_check(t.id + ".witness", t.g, t.h);
      return c;
    });
  }
  return tasks;
}

// ---- winning-closure ----

std::vector<Task> winning_tasks(const RunConfig& cfg) {
  Rng rng(cfg.seed);
  std::vector<Game> pool = small_games();
  for (int i = 0; i < 4; ++i) pool.push_back(random_game(rng, 6, "w" + std::to_string(i)));
  std::vector<Task> tasks;
  const std::size_t n = count_or(cfg, 30);
  for (std::size_t i = 0; i < n; ++i) {
    const Game a = pool[rng.below(pool.size())], b = pool[rng.below(pool.size())], c = pool[rng.below(pool.size())];
    const Strategy s = random_winning_strategy(tensor(dual(a), b), rng);
    const Strategy t = random_winning_strategy(tensor(dual(b), c), rng);
    const std::string id = "pair-" + std::to_string(i);
    tasks.push_back([id, s, t] {
      if (!is_winning(s).winning || !is_winning(t).winning) return line(id + ".winning", false, "input not winning");
      const Strategy st = compose(s, t);
      const WinningReport r = is_winning(st);
      return line(id + ".winning", r.winning,
                  r.violations.empty() ? "" : format_moves(st.game, r.violations.front().moves));
    });
    tasks.push_back([id, s, t] {
      const Strategy st = compose(s, t);
      for (const Moves& p : st.plays)
        if (!is_well_bracketed(st.game, p, Bracketing::Both))
          return line(id + ".bracketing", false, format_moves(st.game, p));
      return line(id + ".bracketing", true);
    });
  }
  return tasks;
}

// ---- traced-axioms ----

std::vector<Task> traced_tasks(const RunConfig& cfg) {
  std::vector<Task> tasks;
  tasks.push_back([] {
    const Game b = bool_game();
    const StrategyMorphism t = to_morphism(trace_arrow(symmetry_arrow(b, b), b));
    return line("yanking.bool.copycat", t.strat == copycat(b), diff_witness(t.strat, copycat(b)));
  });
  const auto corpus = trace_corpus(cfg.seed, count_or(cfg, 50), 6);
  for (const TraceCorpusInstance& t : corpus) {
    tasks.push_back([t] {
      AxiomCheck c = check_yanking(t.id, t.x);
      return line(t.id + ".yanking", c.pass, c.witness);
    });
    tasks.push_back([t] {
      AxiomCheck c = check_strength(t);
      return line(t.id + ".strength", c.pass, c.witness);
    });
    tasks.push_back([t] {
      AxiomCheck c = check_naturality(t);
      return line(t.id + ".naturality", c.pass, c.witness);
    });
    tasks.push_back([t] {
      AxiomCheck c = check_sliding(t);
      return line(t.id + ".sliding", c.pass, c.witness);
    });
    tasks.push_back([t] {
      AxiomCheck c = check_vanishing(t);
      return line(t.id + ".vanishing", c.pass, c.witness);
    });
  }
  return tasks;
}

// ---- comonoid ----

std::vector<Task> comonoid_tasks(const RunConfig& cfg) {
  std::vector<Task> tasks;
  tasks.push_back([] {
    const std::size_t n = reachable_positions(bang_game(bool_game(), 2)).size();
    return line("bang(bool, 2).positions", n == 13, std::to_string(n) + " positions");
  });
  const std::size_t len = std::min<std::size_t>(cfg.max_len, 8);
  const unsigned kmax = std::min(cfg.copies, 2u);
  for (const Game& a : {bool_game(), nat_game(1), game_two()})
    for (unsigned k = 1; k <= kmax; ++k) {
      const std::string id = a.expression() + ".k" + std::to_string(k);
      // the four laws share one check run
      auto once = std::make_shared<std::once_flag>();
      auto report = std::make_shared<ComonoidReport>();
      for (const char* law : {"counit-left", "counit-right", "coassociativity", "cocommutativity"}) {
        const std::string lname = law;
        tasks.push_back([a, k, len, id, lname, once, report] {
          std::call_once(*once, [&] { *report = comonoid_law_check(a, k, len); });
          for (const LawResult& l : report->laws)
            if (l.law == lname) return line(id + "." + lname, l.pass, l.witness);
          return line(id + "." + lname, false, "law not reported");
        });
      }
    }
  tasks.push_back([] {
    const Game d = dual(bool_game());
    const Game dd = tensor(dual(d), tensor(d, d));
    std::size_t seen = 0;
    for (const Strategy& s : all_strategies(dd, 6)) {
      const NegativityReport r = check_comonoid_negative(d, make_morphism(d, tensor(d, d), s));
      if (r.comonoid_possible) return line("dual(bool).not-a-comonoid", false, format_strategy(s));
      ++seen;
    }
    return line("dual(bool).not-a-comonoid", seen > 0, "no candidate strategies");
  });
  tasks.push_back([] {
    const Game b = bool_game();
    const NegativityReport r =
        check_comonoid_negative(b, make_morphism(b, tensor(b, b), bottom(tensor(dual(b), tensor(b, b)))));
    return line("bool.negative-accepted", r.comonoid_possible, r.reason);
  });
  return tasks;
}

// ---- innocence, positional, rel-functoriality ----

std::vector<std::pair<std::string, Game>> copycat_games() {
  const Game b = bool_game(), t = game_two(), n = nat_game(2);
  return {{"bool", b},
          {"tensor(bool, bool)", tensor(b, b)},
          {"tensor(bool, two)", tensor(b, t)},
          {"tensor(nat(2), bool)", tensor(n, b)},
          {"tensor(bool, bool, bool)", tensor(b, tensor(b, b))},
          {"tensor(bool, two, nat(2))", tensor(b, tensor(t, n))}};
}

std::vector<Task> innocence_tasks(const RunConfig& cfg) {
  std::vector<Task> tasks;
  for (const auto& [name, g] : copycat_games())
    tasks.push_back([name, g] {
      const InnocenceReport r = is_innocent(copycat(g));
      return line("copycat." + name, r.innocent(), r.clause + " " + format_moves(tensor(dual(g), g), r.witness));
    });
  tasks.push_back([] {
    const Game b = bool_game();
    const Game bb = tensor(b, b);
    const Strategy s = from_plays(bb, {parse_moves(bb, "L.q L.V R.q R.F"), parse_moves(bb, "R.q R.V L.q L.V")});
    const InnocenceReport r = is_innocent(s);
    return line("order-dependent.rejected", !r.innocent(), "reported innocent");
  });
  const AsyncCorpus c = async_corpus(cfg.seed, count_or(cfg, 24));
  for (std::size_t i = 0; i < c.strategies.size(); ++i) {
    const Strategy s = c.strategies[i];
    tasks.push_back([i, s] {
      const InnocenceReport r = is_innocent(s);
      return info("corpus-" + std::to_string(i), r.innocent() ? "innocent" : "not innocent (" + r.clause + ")");
    });
  }
  return tasks;
}

std::vector<Task> positional_tasks(const RunConfig& cfg) {
  std::vector<Task> tasks;
  for (const auto& [name, g] : copycat_games())
    tasks.push_back([name, g] {
      const PositionalReport r = is_positional(copycat(g));
      return line("copycat." + name, r.positional, format_moves(tensor(dual(g), g), r.first));
    });
  const AsyncCorpus c = async_corpus(cfg.seed, count_or(cfg, 24));
  for (std::size_t i = 0; i < c.strategies.size(); ++i) {
    const Strategy s = c.strategies[i];
    tasks.push_back([i, s] {
      const std::string id = "corpus-" + std::to_string(i) + ".innocent-implies-positional";
      if (!is_innocent(s).innocent()) return info(id, "not innocent, skipped");
      const PositionalReport r = is_positional(s);
      return line(id, r.positional,
                  format_moves(s.game, r.first) + " ~ " + format_moves(s.game, r.second) + " then " +
                      format_moves(s.game, r.suffix));
    });
  }
  return tasks;
}

// rel_trace against the existential definition over every relation with
// |X x A|, |X x B| <= 4 and |X| = nx.
CheckLine rel_trace_brute_force(int nx) {
  std::size_t checked = 0;
  for (int na = 1; nx * na <= 4; ++na)
    for (int nb = 1; nx * nb <= 4; ++nb) {
      const int rows = nx * na, cols = nx * nb;
      const std::uint32_t total = 1u << (rows * cols);
      for (std::uint32_t bits = 0; bits < total; ++bits) {
        Relation r;
        for (int x = 0; x < nx; ++x) {
          for (int a = 0; a < na; ++a) r.domain.insert({x, a});
          for (int b = 0; b < nb; ++b) r.codomain.insert({x, b});
        }
        for (int i = 0; i < rows; ++i)
          for (int j = 0; j < cols; ++j)
            if (bits >> (i * cols + j) & 1u) r.pairs.insert({{i / na, i % na}, {j / nb, j % nb}});
        std::set<std::pair<Elem, Elem>> expect;
        for (int a = 0; a < na; ++a)
          for (int b = 0; b < nb; ++b) {
            bool any = false;
            for (int x = 0; x < nx; ++x) any |= (bits >> ((x * na + a) * cols + (x * nb + b))) & 1u;
            if (any) expect.insert({{a}, {b}});
          }
        if (rel_trace(r, 1).pairs != expect)
          return line("rel-trace.x" + std::to_string(nx), false,
                      "relation " + std::to_string(bits) + " on " + std::to_string(na) + "x" + std::to_string(nb));
        ++checked;
      }
    }
  CheckLine c = line("rel-trace.x" + std::to_string(nx), true);
  c.witness = std::to_string(checked) + " relations";
  return c;
}

std::vector<Task> functoriality_tasks(const RunConfig& cfg) {
  std::vector<Task> tasks;
  for (int nx = 1; nx <= 4; ++nx) tasks.push_back([nx] { return rel_trace_brute_force(nx); });
  const AsyncCorpus c = async_corpus(cfg.seed, count_or(cfg, 24));
  for (std::size_t i = 0; i < c.composable.size(); ++i) {
    const auto [s, t] = c.composable[i];
    tasks.push_back([i, s, t] {
      const std::string id = "pair-" + std::to_string(i);
      if (!is_positional(s).positional || !is_positional(t).positional) return info(id, "not positional, skipped");
      const FunctorialityReport r = positional_functoriality_check(s, t);
      return line(id, r.ok(), r.witness);
    });
  }
  return tasks;
}

// ---- algol-correction ----

std::vector<Task> algol_tasks(const RunConfig& cfg) {
  using namespace algol;
  const auto corpus = load_programs(data(cfg, "algol/corpus.txt"));
  const auto outside = load_programs(data(cfg, "algol/outside.txt"));
  const DenoteConfig dc{cfg.copies, cfg.max_len, cfg.nat_max};
  const std::size_t fuel = cfg.fuel;
  std::vector<Task> tasks;
  for (const ProgramCase& c : corpus)
    tasks.push_back([c, fuel] {
      const RunOutcome r = run_program(c, fuel);
      return line("run." + c.name, r.ok, r.detail);
    });
  auto correction = [dc, fuel](const std::string& id, const ProgramCase& c, bool informational) {
    CorrectionReport r;
    try {
      r = correction_check(c.term, c.store, dc, fuel);
    } catch (const DenoteError& e) {
      return line(id, false, std::string("denote error: ") + e.what());
    }
    const std::string text = status_name(r.status) + " plays=" + std::to_string(r.plays) +
                             (r.store_observed ? " store-observed" : "") + (r.witness.empty() ? "" : " " + r.witness);
    if (informational) return info(id, text);
    return line(id, r.ok(), text);
  };
  for (const ProgramCase& c : corpus) tasks.push_back([c, correction] { return correction("correction." + c.name, c, false); });
  for (const ProgramCase& c : outside) tasks.push_back([c, correction] { return correction("outside." + c.name, c, true); });
  return tasks;
}

}  // namespace

std::size_t SuiteReport::passed() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const CheckLine& c) { return c.status == CheckLine::Status::Pass; }));
}

std::size_t SuiteReport::failed() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const CheckLine& c) { return c.status == CheckLine::Status::Fail; }));
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"payoff-axioms", "category-laws", "traced-axioms",  "winning-closure",
                                                 "bracketing",    "comonoid",      "innocence",      "positional",
                                                 "rel-functoriality", "algol-correction"};
  return names;
}

SuiteReport run_suite(const std::string& name, const RunConfig& cfg) {
  static const std::map<std::string, std::function<std::vector<Task>(const RunConfig&)>> builders = {
      {"payoff-axioms", payoff_tasks},       {"category-laws", category_tasks}, {"traced-axioms", traced_tasks},
      {"winning-closure", winning_tasks},    {"bracketing", bracketing_tasks},  {"comonoid", comonoid_tasks},
      {"innocence", innocence_tasks},        {"positional", positional_tasks},  {"rel-functoriality", functoriality_tasks},
      {"algol-correction", algol_tasks}};
  auto it = builders.find(name);
  if (it == builders.end()) throw std::invalid_argument("unknown suite '" + name + "'");
  if (cfg.copies < 1 || cfg.max_len < 1 || cfg.nat_max < 1 || cfg.fuel < 1)
    throw std::invalid_argument("bounds must be at least 1");
  return {name, run_tasks(it->second(cfg), cfg.jobs)};
}

std::string check_status_name(CheckLine::Status s) {
  switch (s) {
    case CheckLine::Status::Pass:
      return "pass";
    case CheckLine::Status::Fail:
      return "FAIL";
    case CheckLine::Status::Info:
      return "info";
  }
  return "?";
}

std::string format_report(const SuiteReport& r, bool tsv) {
  std::ostringstream os;
  std::size_t width = 0;
  for (const CheckLine& c : r.checks) width = std::max(width, c.id.size());
  for (const CheckLine& c : r.checks) {
    if (tsv) {
      os << r.suite << '\t' << c.id << '\t' << check_status_name(c.status) << '\t' << c.witness << '\n';
    } else {
      os << c.id << std::string(width + 2 - c.id.size(), ' ') << check_status_name(c.status);
      if (!c.witness.empty()) os << "  " << c.witness;
      os << '\n';
    }
  }
  if (tsv)
    os << r.suite << "\tsummary\t" << (r.ok() ? "pass" : "FAIL") << '\t' << r.passed() << " passed, " << r.failed()
       << " failed\n";
  else
    os << r.suite << ": " << r.passed() << " passed, " << r.failed() << " failed\n";
  return os.str();
}

}  // namespace cgw
