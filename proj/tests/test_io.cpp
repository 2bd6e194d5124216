#include "doctest.h"

#include "cgw/corpus.hpp"
#include "cgw/io.hpp"

using namespace cgw;

namespace {

std::string data(const char* rel) { return std::string(CGW_DATA_DIR) + "/" + rel; }

bool same_spec(const GameSpec& a, const GameSpec& b) { return print_game_spec(a) == print_game_spec(b); }

}  // namespace

TEST_SUITE("io") {

TEST_CASE("game files round trip") {
  for (const char* f : {"games/base.game", "games/violations.game"}) {
    CAPTURE(f);
    const std::string text = read_file(data(f));
    const auto specs = parse_game_file(text);
    const std::string printed = print_game_file(specs);
    const auto again = parse_game_file(printed);
    REQUIRE(again.size() == specs.size());
    for (std::size_t i = 0; i < specs.size(); ++i) CHECK(same_spec(specs[i], again[i]));
    CHECK(print_game_file(again) == printed);
  }
  // builtins survive describe, print and parse
  for (const Game& g : {bool_game(), game_two(), nat_game(3), unit_game()}) {
    const auto specs = parse_game_file(print_game_spec(describe(g)));
    REQUIRE(specs.size() == 1);
    CHECK(build_game(specs[0]) == g);
  }
  // random games too
  Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    const Game g = random_game(rng, 7, "r" + std::to_string(i));
    const auto specs = parse_game_file(print_game_spec(describe(g)));
    CHECK(build_game(specs.at(0)) == g);
  }
}

TEST_CASE("the bundled bool is the builtin one") {
  const GameLibrary lib = load_game_library(data("games/base.game"));
  CHECK(lib.at("bool") == bool_game());
  CHECK(isomorphic(lib.at("nat3"), nat_game(3)));
  CHECK(lib.at("two") == game_two());
}

TEST_CASE("violation tables are rejected with the axiom named") {
  const GameLibrary lib = load_game_library(data("games/violations.game"));
  const std::pair<const char*, Axiom> cases[] = {{"bad-norm", Axiom::Norm},
                                                 {"bad-subadditivity", Axiom::SubAdditivity},
                                                 {"bad-suffix", Axiom::SuffixDomination},
                                                 {"bad-compatibility", Axiom::Compatibility}};
  for (const auto& [name, axiom] : cases) {
    CAPTURE(name);
    const PayoffReport r = validate_payoff(lib.at(name));
    bool named = false;
    for (const PayoffViolation& v : r.violations) named = named || v.axiom == axiom;
    CHECK(named);
  }
}

TEST_CASE("game file errors name the line") {
  CHECK_THROWS_WITH_AS(parse_game_file("game g\npositions *\nroot *\nedges\n  e * * e x 0 0\nend\n"),
                       doctest::Contains("line 5"), IoError);
  CHECK_THROWS_WITH_AS(parse_game_file("game g\npositions *\nroot *\n"), doctest::Contains("not closed"), IoError);
  CHECK_THROWS_WITH_AS(parse_game_file("game g\nroot *\nend\n"), doctest::Contains("no positions"), IoError);
  CHECK_THROWS_WITH_AS(parse_game_file("positions *\n"), doctest::Contains("line 1"), IoError);
  CHECK_THROWS_WITH_AS(parse_game_file("game g\npositions * a\nroot *\nedges\n  e * a e - 0 x\nend\n"),
                       doctest::Contains("count"), IoError);
  CHECK_THROWS_AS(parse_game_file("game g\npositions * a\nroot *\npath_payoffs\n  e 0 0\nend\n"), IoError);
}

TEST_CASE("game expressions") {
  const GameLibrary lib = builtin_games();
  const Game b = bool_game();
  CHECK(parse_game_expr("bool", lib) == b);
  CHECK(parse_game_expr("tensor(bool, dual(bool))", lib) == tensor(b, dual(b)));
  CHECK(parse_game_expr("tensor(bool, bool, two)", lib) == tensor(b, tensor(b, game_two())));
  CHECK(parse_game_expr("loli(loli(bool,bool),bool)", lib) == loli(loli(b, b), b));
  CHECK(parse_game_expr("bang(bool, 2)", lib) == bang_game(b, 2));
  CHECK(parse_game_expr("product(nat(3), bool)", lib) == product(nat_game(3), b));
  CHECK(parse_game_expr("neg(dual(bool))", lib) == neg(dual(b)));
  for (const char* bad : {"", "boo", "tensor(bool)", "dual(bool", "bang(bool, x)", "bool bool", "frob(bool)"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_game_expr(bad, lib), GameError);
  }
}

TEST_CASE("strategy files") {
  const auto loaded = load_strategies(data("strategies/bool.strat"));
  REQUIRE(loaded.size() == 6);
  const Game b = bool_game();
  CHECK(loaded[1].name == "identity");
  CHECK(loaded[1].strategy.plays == copycat(b).plays);
  for (const NamedStrategy& s : loaded) CHECK(validate_strategy(s.strategy).ok());

  const auto specs = parse_strategy_file(read_file(data("strategies/bool.strat")));
  const std::string printed = print_strategy_file(specs);
  CHECK(print_strategy_file(parse_strategy_file(printed)) == printed);

  // describe keeps only maximal plays and resolves back to the same strategy
  const StrategySpec d = describe_strategy("cc", "", "tensor(dual(bool), bool)", copycat(b));
  CHECK(d.plays.size() == 2);
  CHECK(resolve_strategy(d, builtin_games()).strategy == copycat(b));
  CHECK(describe_strategy("bot", "", "bool", bottom(b)).plays.empty());

  CHECK_THROWS_AS(resolve_strategy({"x", "", "bool", {"V q"}}, builtin_games()), GameError);
  CHECK_THROWS_AS(resolve_strategy({"x", "", "bool", {"q W"}}, builtin_games()), GameError);
  CHECK_THROWS_WITH_AS(parse_strategy_file("strategy s\nplays\n  q V\nend\n"), doctest::Contains("no 'on'"), IoError);
  CHECK_THROWS_WITH_AS(parse_strategy_file("strategy s\non bool\nfoo\nend\n"), doctest::Contains("line 3"), IoError);
}

}  // TEST_SUITE
