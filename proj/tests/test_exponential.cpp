#include "doctest.h"

#include "cgw/corpus.hpp"
#include "cgw/exponential.hpp"

using namespace cgw;

namespace {

Moves mv(const Game& g, const char* text) { return parse_moves(g, text); }

}  // namespace

TEST_SUITE("exponential") {

TEST_CASE("bang sizes and prefix support") {
  const Game b = bool_game();
  CHECK(reachable_positions(bang(b, 2).game).size() == 13);
  CHECK(isomorphic(bang(b, 1).game, b));
  const Game g = bang(b, 2).game;
  CHECK(g.is_negative());
  CHECK_FALSE(g.is_path(g.root(), mv(g, "c1.q")));
  CHECK(g.is_path(g.root(), mv(g, "c0.q c1.q c1.V c0.F")));
  CHECK_THROWS_AS(bang(dual(b), 2), GameError);
  CHECK_THROWS_AS(bang(b, 0), GameError);
}

TEST_CASE("bang embeds into one more copy") {
  for (const Game& a : {bool_game(), nat_game(2), game_two(), unit_game()}) {
    for (unsigned k = 1; k <= 2; ++k) {
      auto rep = bang_embedding_check(a, k);
      INFO(a.expression() << " k=" << k << " " << rep.witness);
      CHECK(rep.ok);
      CHECK(rep.paths > 0);
    }
  }
}

TEST_CASE("structure maps") {
  const Game b = bool_game();
  ComonoidStructure one = comonoid(b, 1);
  CHECK(one.counit.strat.plays == std::set<Moves>{{}});
  // dereliction on a single copy is copycat up to the one-copy iso
  CHECK(one.dereliction.strat.plays.size() == copycat(b).plays.size());
  ComonoidStructure two = comonoid(b, 2);
  for (const auto* m : {&two.counit, &two.comult, &two.dereliction}) CHECK(validate_strategy(m->strat).ok());
  // right copy 0 goes to source copy 1 once left copy 0 holds source copy 0
  const Game& g = two.comult.strat.game;
  CHECK(two.comult.strat.contains(mv(g, "R.L.c0.q L.c0.q R.R.c0.q L.c1.q")));
  CHECK(two.comult.strat.contains(mv(g, "R.R.c0.q L.c0.q")));
}

TEST_CASE("comonoid laws") {
  for (const Game& a : {bool_game(), nat_game(1), game_two()}) {
    for (unsigned k = 1; k <= 2; ++k) {
      auto rep = comonoid_law_check(a, k, 8);
      for (const auto& l : rep.laws) {
        INFO(a.expression() << " k=" << k << " " << l.law << " " << l.witness);
        CHECK(l.pass);
      }
    }
  }
}

TEST_CASE("broken wiring is caught") {
  auto rep = comonoid_law_check(bool_game(), 2, 6, Wiring::LeftOnly);
  CHECK_FALSE(rep.ok());
  bool cocomm_caught = false;
  for (const auto& l : rep.laws)
    if (l.law == "cocommutativity") {
      cocomm_caught = !l.pass;
      CHECK(l.witness.find("only:") != std::string::npos);
    }
  CHECK(cocomm_caught);
}

TEST_CASE("comonoids are negative") {
  const Game b = bool_game();
  const Game d = dual(b);
  CHECK(check_comonoid_negative(b, make_morphism(b, tensor(b, b), bottom(tensor(dual(b), tensor(b, b))))).comonoid_possible);
  CHECK(check_comonoid_negative(unit_game(), make_morphism(unit_game(), tensor(unit_game(), unit_game()),
                                                           bottom(tensor(dual(unit_game()), tensor(unit_game(), unit_game())))))
            .comonoid_possible);
  // every strategy d on dual(Bool) -> dual(Bool) (x) dual(Bool) fails
  const Game dd = tensor(dual(d), tensor(d, d));
  std::size_t seen = 0;
  for (const Strategy& s : all_strategies(dd, 6)) {
    auto rep = check_comonoid_negative(d, make_morphism(d, tensor(d, d), s));
    CHECK_FALSE(rep.comonoid_possible);
    CHECK_FALSE(rep.witness.empty());
    bool uses_target = false;
    for (const Moves& p : s.plays)
      for (Move m : p) uses_target |= m >= static_cast<Move>(d.move_count());
    // a d answering inside its source is symmetric but breaks the counit law
    CHECK(rep.reason == (uses_target ? "cocommutativity" : "counit"));
    ++seen;
  }
  CHECK(seen > 1);
}

TEST_CASE("fan-out allocates context copies per instance") {
  const Game b = bool_game();
  Context ctx({b}, 2);
  Arrow x = var_thunk(ctx, 0);
  Arrow two = fan_out(ctx, {{x, false, 1}, {x, false, 1}});
  Strategy s = materialize_all(*two.b);
  CHECK(validate_strategy(s).ok());
  const Game& g = s.game;
  CHECK(s.contains(mv(g, "R.L.q L.L.c0.q L.L.c0.V R.L.V R.R.q L.L.c1.q")));
  Arrow three = fan_out(ctx, {{x, true, 3}});
  Materialized m = materialize(*three.b, 20);
  CHECK(m.overflow);
}

}  // TEST_SUITE
