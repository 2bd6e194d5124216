#include "doctest.h"

#include "cgw/algol/denote.hpp"
#include "cgw/algol/eval.hpp"
#include "cgw/algol/programs.hpp"
#include "cgw/algol/typing.hpp"

#include <chrono>

using namespace cgw;
using namespace cgw::algol;

namespace {

constexpr std::size_t kFuel = 10000;

TermP t(const char* s) { return parse_term(s); }
TypeP ty(const char* s) { return parse_type(s); }

std::string type_of(const char* s) { return print_type(typecheck({}, {}, t(s)).type); }

Config run(const char* term, const char* store = "") { return eval({t(term), parse_store(store)}, kFuel); }

std::set<Moves> plays_of(const Arrow& a, std::size_t max_len) {
  Materialized m = materialize(*a.b, max_len);
  REQUIRE_FALSE(m.overflow);
  return m.strategy.plays;
}

// Play set of a judgment read over the references of delta.
std::set<Moves> judgment_plays(const TypeEnv& delta, const char* term, const DenoteConfig& cfg = {}) {
  const Typed typed = typecheck({}, delta, t(term));
  const Scope scope = Scope::of({}, delta, cfg);
  return plays_of(judgment_arrow(scope, denote(scope, typed.term)), cfg.max_len);
}

std::set<Moves> closed_plays(const char* term, const DenoteConfig& cfg = {}) {
  ClosedDenotation d = denote_closed(t(term), {}, cfg);
  REQUIRE_FALSE(d.play_set.overflow);
  return d.play_set.strategy.plays;
}

}  // namespace

TEST_SUITE("algol") {

TEST_CASE("parse and print round trip") {
  for (const char* s : {"skip", "T", "F", "7", "x", "!x", "\\x. x", "\\x:Nat -> Bool. x 3", "f x y", "f (g x)",
                        "x := 3", "new x := 0 in x := 1; !x", "zero(!x)", "if T then 1 else 2", "<1, <T, skip>>",
                        "fst(p)", "snd(<1, 2>)", "(x := 1; x := 2); skip", "(\\x. x) 3",
                        "if zero(!x) then x := 5 else x := 6", "new t := !x in x := !y; y := !t"}) {
    CAPTURE(s);
    const TermP m = t(s);
    const std::string printed = print_term(m);
    CHECK(same_term(parse_term(printed), m));
    CHECK(print_term(parse_term(printed)) == printed);
  }
  CHECK(same_term(t("pi1(<1, 2>)"), t("fst(<1, 2>)")));
  CHECK(same_term(t("x := 1; y := 2 # trailing comment"), t("x := 1; y := 2")));
  CHECK(print_type(ty("Nat -> Bool -> Unit")) == print_type(ty("Nat -> (Bool -> Unit)")));
  CHECK(print_type(ty("(Nat -> Bool) * Unit")) == "(Nat -> Bool) * Unit");
  CHECK(print_store(parse_store("x := 1, y := \\z. z")) == "x := 1, y := \\z. z");
}

TEST_CASE("parse errors carry a position") {
  for (const char* s : {"x :=", "(1, 2", "new x in 1", "\\. x", "if T then 1", "zero 1 2)", "fst 1", ""}) {
    CAPTURE(s);
    CHECK_THROWS_AS(parse_term(s), ParseError);
  }
  try {
    parse_term("new x := 1\nin )");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
  CHECK_THROWS_AS(parse_type("Nat ->"), ParseError);
}

TEST_CASE("typing") {
  CHECK(type_of("skip") == "Unit");
  CHECK(type_of("zero(3)") == "Bool");
  CHECK(type_of("new x := 1 in !x") == "Nat");
  CHECK(type_of("\\x:Nat. zero(x)") == "Nat -> Bool");
  CHECK(type_of("\\x. zero(x)") == "Nat -> Bool");
  CHECK(type_of("\\x. x") == "Unit -> Unit");
  CHECK(type_of("<1, \\b. if b then 1 else 2>") == "Nat * (Bool -> Nat)");
  CHECK(type_of("fst(<1, T>)") == "Nat");
  CHECK(type_of("new f := (\\n. zero(n)) in !f 0") == "Bool");
  CHECK(type_of("new x := 0 in x := 1; x := 2") == "Unit");
  CHECK(print_type(typecheck({}, {{"x", ty("Nat")}}, t("!x")).type) == "Nat");
  CHECK(print_type(typecheck({{"x", ty("Bool")}}, {}, t("x")).type) == "Bool");
  // binders shadow lexically
  CHECK(type_of("\\y. (\\y:Nat. y) 3") == "Unit -> Nat");
  for (const char* s : {"skip; 3", "zero(T)", "if 1 then 2 else 3", "if T then 1 else F", "x", "!x", "x := 1",
                        "new x := 0 in x := T", "(\\x:Nat. x) T", "3 4", "fst(3)", "new x := 0 in x"}) {
    CAPTURE(s);
    CHECK_THROWS_AS(typecheck({}, {}, t(s)), TypeError);
  }
  // a variable is not a reference and the contexts may not overlap
  CHECK_THROWS_AS(typecheck({{"x", ty("Nat")}}, {}, t("!x")), TypeError);
  CHECK_THROWS_AS(typecheck({{"x", ty("Nat")}}, {{"x", ty("Nat")}}, t("skip")), TypeError);
  // lambda annotations are filled in
  const Typed typed = typecheck({}, {}, t("\\x. zero(x)"));
  REQUIRE(typed.term->annot);
  CHECK(print_type(typed.term->annot) == "Nat");
}

TEST_CASE("configuration typing") {
  const TypedConfig c =
      typecheck_config(t("if !f 3 then x := !y else skip"), parse_store("x := 0, y := 2, f := \\n. zero(n)"));
  CHECK(print_type(c.term.type) == "Unit");
  REQUIRE(c.delta.size() == 3);
  CHECK(print_type(c.delta[2].type) == "Nat -> Bool");
  CHECK_THROWS_AS(typecheck_config(t("!x"), parse_store("x := zero(0)")), TypeError);
  CHECK_THROWS_AS(typecheck_config(t("!z"), parse_store("x := 0")), TypeError);
}

TEST_CASE("evaluation") {
  CHECK(print_term(run("(\\x. \\y. x) 3 skip").term) == "3");
  CHECK(print_term(run("new x := 0 in new y := (x := 5) in !x").term) == "5");
  CHECK(print_term(run("(\\x. if x then x else F) zero(0)").term) == "T");
  // call by name: the argument is never run
  CHECK(print_term(run("new x := 0 in new u := (\\y. skip) (x := 1) in !x").term) == "0");
  // call by name: the argument runs once per use
  CHECK(print_term(run("new x := T in new u := (\\y. (y; y)) (x := if !x then F else T) in !x").term) == "T");
  CHECK(print_term(run("new x := T in new u := (\\y. y) (x := if !x then F else T) in !x").term) == "F");
  const Config c = run("x := 4; y := zero(!x)", "x := 0, y := T");
  CHECK(print_store(c.store) == "x := 4, y := F");
  // assignment to an absent reference appends it
  CHECK(print_store(run("z := 1", "x := 0").store) == "x := 0, z := 1");
  // capture-avoiding substitution
  CHECK(print_term(run("(\\x. \\y. x) y").term) == "\\y'. y");
}

TEST_CASE("store deletion after new") {
  const Config c = run("new y := 1 in x := !y", "x := 0");
  CHECK(print_store(c.store) == "x := 1");
  // a local named like a global shadows it and leaves it untouched
  const Config d = run("new x := 9 in x := 3", "x := 1");
  CHECK(print_store(d.store) == "x := 1");
  const Config e = run("new x := 0 in new x := 1 in skip");
  CHECK(e.store.empty());
}

TEST_CASE("evaluation errors") {
  try {
    eval({t("!x"), {}}, kFuel);
    FAIL("expected a store miss");
  } catch (const EvalError& e) {
    CHECK(e.kind == EvalError::Kind::StoreMiss);
  }
  try {
    eval({t("(\\f. f f) (\\f. f f)"), {}}, 200);
    FAIL("expected fuel exhaustion");
  } catch (const EvalError& e) {
    CHECK(e.kind == EvalError::Kind::FuelExhausted);
  }
  try {
    eval({t("zero(T)"), {}}, kFuel);
    FAIL("expected a stuck term");
  } catch (const EvalError& e) {
    CHECK(e.kind == EvalError::Kind::Stuck);
  }
  // fuel bounds the derivation height
  EvalStats st;
  eval({t("if zero(0) then 1 else 2"), {}}, kFuel, &st);
  CHECK(st.height == 3);
  CHECK_NOTHROW(eval({t("if zero(0) then 1 else 2"), {}}, 3));
  CHECK_THROWS_AS(eval({t("if zero(0) then 1 else 2"), {}}, 2), EvalError);
}

TEST_CASE("corpus evaluates to the recorded results") {
  const auto corpus = load_programs(data_file("algol/corpus.txt"));
  REQUIRE(corpus.size() == 25);
  const auto t0 = std::chrono::steady_clock::now();
  for (const ProgramCase& c : corpus) {
    CAPTURE(c.name);
    const RunOutcome r = run_program(c, kFuel);
    CHECK_MESSAGE(r.ok, r.detail);
  }
  CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() < 1.0);
}

TEST_CASE("subject reduction and determinism on the corpora") {
  auto corpus = load_programs(data_file("algol/corpus.txt"));
  const auto outside = load_programs(data_file("algol/outside.txt"));
  corpus.insert(corpus.end(), outside.begin(), outside.end());
  for (const ProgramCase& c : corpus) {
    CAPTURE(c.name);
    const TypedConfig before = typecheck_config(c.term, c.store);
    const Config a = eval({c.term, c.store}, kFuel);
    const Config b = eval({c.term, c.store}, kFuel);
    CHECK(same_term(a.term, b.term));
    CHECK(print_store(a.store) == print_store(b.store));
    CHECK(is_canonical(a.term));
    const TypedConfig after = typecheck_config(a.term, a.store);
    CHECK(same_type(before.term.type, after.term.type));
    for (const Binding& r : after.delta)
      for (const Binding& l : before.delta)
        if (l.name == r.name) CHECK(same_type(l.type, r.type));
  }
}

TEST_CASE("program file errors name the line") {
  CHECK_THROWS_WITH_AS(parse_programs("[a]\nterm = x :=\nvalue = skip\n"), doctest::Contains("line 2"),
                       std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_programs("term = skip\n"), doctest::Contains("line 1"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_programs("[a]\nterm = skip\nbogus = 1\n"), doctest::Contains("unknown key"),
                       std::runtime_error);
  CHECK_THROWS_AS(parse_programs("[a]\nvalue = skip\n"), std::runtime_error);
}

TEST_CASE("closed constants") {
  const DenoteConfig cfg;
  const ClosedDenotation d = denote_closed(t("T"), {}, cfg);
  const Strategy s = d.on_type();
  const Game& b = s.game;
  CHECK(b == bool_game());
  CHECK(s.plays == std::set<Moves>{Moves{}, parse_moves(b, "q V")});
  CHECK(closed_plays("zero(0)") == closed_plays("T"));
  CHECK(closed_plays("zero(5)") == closed_plays("F"));
  CHECK(closed_plays("if T then 3 else 4") == closed_plays("3"));
  CHECK_FALSE(closed_plays("3") == closed_plays("4"));
}

TEST_CASE("a variable is read by dereliction") {
  const DenoteConfig cfg;
  const Scope scope = Scope::of({{"x", ty("Bool")}}, {}, cfg);
  const Den d = denote(scope, typecheck({{"x", ty("Bool")}}, {}, t("x")).term);
  CHECK(plays_of(d.result, cfg.max_len) == plays_of(var_thunk(scope.context(), 0), cfg.max_len));
  CHECK_FALSE(d.changed[0]);
}

TEST_CASE("traced and direct denotations agree on the corpus") {
  const DenoteConfig cfg;
  for (const ProgramCase& c : load_programs(data_file("algol/corpus.txt"))) {
    CAPTURE(c.name);
    const Typed typed = typecheck({}, {}, new_prefix(c.store, c.term));
    const Scope scope({}, cfg);
    CHECK(plays_of(denote(scope, typed.term).result, cfg.max_len) ==
          plays_of(denote_direct(scope, typed.term).result, cfg.max_len));
  }
}

TEST_CASE("correction on the corpus") {
  const DenoteConfig cfg{2, 12, 8};
  for (const ProgramCase& c : load_programs(data_file("algol/corpus.txt"))) {
    CAPTURE(c.name);
    const CorrectionReport r = correction_check(c.term, c.store, cfg, kFuel);
    CHECK_MESSAGE(r.ok(), status_name(r.status) << " " << r.witness);
    CHECK(r.plays > 0);
    CHECK(r.store_observed == !c.store.empty());
  }
}

TEST_CASE("programs outside the tracked fragment are told apart") {
  const DenoteConfig cfg{2, 12, 8};
  const auto outside = load_programs(data_file("algol/outside.txt"));
  REQUIRE(outside.size() == 5);
  for (const ProgramCase& c : outside) {
    CAPTURE(c.name);
    CHECK(run_program(c, kFuel).ok);
    const CorrectionReport r = correction_check(c.term, c.store, cfg, kFuel);
    CHECK(r.status == CorrectionReport::Status::Different);
    CHECK_FALSE(r.witness.empty());
  }
}

TEST_CASE("equational soundness on the corpus") {
  const DenoteConfig cfg{2, 12, 8};
  auto cases = load_programs(data_file("algol/corpus.txt"));
  // closed values of the corpus types, so that there are equal pairs to test
  for (const char* v : {"T", "F", "0", "1", "5", "skip", "\\y:Unit. 3", "zero(4)"}) {
    ProgramCase c;
    c.name = v;
    c.term = t(v);
    c.value = c.term;
    cases.push_back(c);
  }
  const SoundnessReport r = equational_soundness(cases, cfg, kFuel);
  for (const std::string& f : r.failures) CAPTURE(f);
  CHECK(r.ok());
  CHECK(r.equal_pairs >= 20);
  CHECK(r.observations >= r.equal_pairs);
}

TEST_CASE("observations close every corpus type") {
  for (const char* s : {"Unit", "Bool", "Nat", "Nat * Bool", "Unit -> Nat", "(Bool -> Bool) -> Nat"}) {
    CAPTURE(s);
    const auto obs = observations(ty(s));
    CHECK_FALSE(obs.empty());
    for (const Observation& o : obs) {
      CHECK(o.name.find("[]") != std::string::npos);
      const TypeP hole = ty(s);
      const Typed typed = typecheck({{"h", hole}}, {}, o.wrap(mk_var("h")));
      CHECK(typed.type->kind != Type::Kind::Arrow);
      CHECK(typed.type->kind != Type::Kind::Prod);
    }
  }
}

TEST_CASE("weakening leaves the denotation unchanged") {
  const DenoteConfig cfg;
  const TypeEnv gamma{{"b", ty("Bool")}};
  for (const char* s : {"b", "if b then 1 else 2", "zero(if b then 0 else 3)", "<b, T>"}) {
    CAPTURE(s);
    const Typed typed = typecheck(gamma, {}, t(s));
    const Scope small = Scope::of(gamma, {}, cfg);
    const Scope big = small.push({"n", type_game(ty("Nat"), cfg), false});
    const Arrow direct = denote(big, typed.term).result;
    const Arrow via = compose_arrows(weaken_arrow(big.context(), small.context(), {1}),
                                     denote(small, typed.term).result);
    CHECK(plays_of(direct, cfg.max_len) == plays_of(via, cfg.max_len));
  }
}

TEST_CASE("local reference equations") {
  // independent initialisations commute
  for (const char* body : {"!x", "!y", "new u := (y := zero(!x)) in !y", "new u := (x := 0) in if !y then !x else 1"}) {
    CAPTURE(body);
    const std::string xy = std::string("new x := 3 in new y := T in ") + body;
    const std::string yx = std::string("new y := T in new x := 3 in ") + body;
    CHECK(closed_plays(xy.c_str()) == closed_plays(yx.c_str()));
  }
  // an assignment to an outer reference moves across a fresh initialisation
  const TypeEnv delta{{"x", ty("Nat")}};
  for (const char* body : {"skip", "x := !y", "x := 4", "if zero(!x) then x := !y else skip"}) {
    CAPTURE(body);
    const std::string inside = std::string("new y := 2 in x := 1; ") + body;
    const std::string outside = std::string("x := 1; new y := 2 in ") + body;
    CHECK(judgment_plays(delta, inside.c_str()) == judgment_plays(delta, outside.c_str()));
  }
  // reading a reference holding V as an argument is the same as passing V
  for (const char* fn : {"\\y. zero(y)", "\\y. if zero(y) then y else 0", "\\y. 3"}) {
    CAPTURE(fn);
    const std::string read = std::string("new x := 2 in (") + fn + ") (!x)";
    const std::string value = std::string("new x := 2 in (") + fn + ") 2";
    CHECK(closed_plays(read.c_str()) == closed_plays(value.c_str()));
  }
}

TEST_CASE("natural literals above the bound are rejected") {
  const DenoteConfig cfg{2, 12, 3};
  CHECK_NOTHROW(denote_closed(t("3"), {}, cfg));
  CHECK_THROWS_AS(denote_closed(t("4"), {}, cfg), DenoteError);
  CHECK(correction_check(t("4"), {}, DenoteConfig{2, 12, 8}, kFuel).ok());
}

}  // TEST_SUITE
