#include "doctest.h"

#include "cgw/corpus.hpp"
#include "cgw/monoidal.hpp"

using namespace cgw;

namespace {

Moves mv(const Game& g, const char* text) { return parse_moves(g, text); }

// Oracle for the trace: the set of plays t of A*(x)B for which some interaction
// of f with a copycat loop exists, found by brute force over explicit strategies.
std::set<Moves> trace_oracle(const StrategyMorphism& f, const Game& x) {
  // Build the loop as explicit strategies and hide with compose_by_interactions.
  const Game a = f.src.child(1), b = f.dst.child(1);
  Arrow fa = to_arrow(f);
  // Route f onto (X* (x) X)* (x) (A* (x) B) by hand, without the engine's slot logic.
  const Game loop = tensor(dual(x), x);
  const Game inner = tensor(dual(a), b);
  const Game hat = tensor(dual(loop), inner);
  const Move nx = static_cast<Move>(x.move_count()), na = static_cast<Move>(a.move_count());
  // f's move layout: [X_in | A | X_out | B]; hat layout: [X_out' | X_in' | A | B].
  Strategy fh = bottom(hat);
  for (const Moves& p : f.strat.plays) {
    Moves q;
    for (Move m : p) {
      if (m < nx) q.push_back(nx + m);
      else if (m < nx + na) q.push_back(nx + m);
      else if (m < 2 * nx + na) q.push_back(m - nx - na);
      else q.push_back(m);
    }
    fh.plays.insert(q);
  }
  Strategy eta = copycat(x);
  Strategy eta1{tensor(unit_game(), loop), eta.plays};
  Strategy closed = compose_by_interactions(eta1, fh);
  return closed.plays;
}

}  // namespace

TEST_SUITE("monoidal") {

TEST_CASE("curry and uncurry are inverse") {
  Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    Game a = random_game(rng, 4, "a"), b = random_game(rng, 4, "b"), c = random_game(rng, 4, "c");
    StrategyMorphism f = make_morphism(tensor(a, b), c, random_strategy(tensor(dual(tensor(a, b)), c), rng));
    StrategyMorphism g = curry(f);
    CHECK(g.src == b);
    CHECK(g.dst == tensor(dual(a), c));
    CHECK(g.strat.plays.size() == f.strat.plays.size());
    StrategyMorphism back = uncurry(g);
    CHECK(back.strat == f.strat);
    CHECK(is_winning(g.strat).winning == is_winning(f.strat).winning);
  }
}

TEST_CASE("curry of copycat") {
  Game b = bool_game();
  Game ab = tensor(b, b);
  StrategyMorphism id = make_morphism(ab, ab, copycat(ab));
  StrategyMorphism cur = curry(id);
  CHECK(validate_strategy(cur.strat).ok());
  CHECK(cur.strat.plays.size() == id.strat.plays.size());
}

TEST_CASE("trace agrees with brute-force interaction hiding") {
  Rng rng(9);
  for (int i = 0; i < 25; ++i) {
    Game x = random_game(rng, 4, "x"), a = random_game(rng, 4, "a"), b = random_game(rng, 4, "b");
    Game src = tensor(x, a), dst = tensor(x, b);
    StrategyMorphism f = make_morphism(src, dst, random_strategy(tensor(dual(src), dst), rng));
    StrategyMorphism t = trace(f, x);
    CHECK(t.strat.plays == trace_oracle(f, x));
    CHECK(validate_strategy(t.strat).ok());
  }
}

TEST_CASE("yanking on bool is literally copycat") {
  Game b = bool_game();
  StrategyMorphism t = to_morphism(trace_arrow(symmetry_arrow(b, b), b));
  CHECK(t.strat == copycat(b));
}

TEST_CASE("trace over the unit") {
  Rng rng(2);
  Game a = random_game(rng, 5, "a"), b = random_game(rng, 5, "b");
  Game u = unit_game();
  Strategy s = random_strategy(tensor(dual(tensor(u, a)), tensor(u, b)), rng);
  StrategyMorphism f = make_morphism(tensor(u, a), tensor(u, b), s);
  CHECK(trace(f, u).strat.plays == s.plays);
}

TEST_CASE("feedback loop of length two traces to bottom") {
  // X = two (one opponent move o). f on X(x)1 -> X(x)1 answers the output copy's
  // o by playing o on the input copy, which the loop feeds back to itself.
  Game x = game_two();
  Game u = unit_game();
  Game g = tensor(dual(tensor(x, u)), tensor(x, u));
  Strategy f = from_plays(g, {mv(g, "R.L.o L.L.o")});
  StrategyMorphism m = make_morphism(tensor(x, u), tensor(x, u), f);
  CHECK(trace(m, x).strat.plays == std::set<Moves>{{}});
}

TEST_CASE("axiom suite on a small seeded corpus") {
  auto corpus = trace_corpus(3, 6, 5);
  auto par = trace_axiom_suite(corpus);
  auto ser = trace_axiom_suite_serial(corpus);
  REQUIRE(par.size() == ser.size());
  for (std::size_t i = 0; i < par.size(); ++i) {
    INFO(par[i].id << " " << par[i].axiom << " " << par[i].witness);
    CHECK(par[i].pass);
    CHECK(par[i].plays == ser[i].plays);
  }
}

TEST_CASE("neg adjunction") {
  Game b = bool_game();
  auto same = neg_adjunction_check(b, b, 4);
  CHECK(same.ok);
  CHECK(same.left_count == same.right_count);
  auto flipped = neg_adjunction_check(b, dual(b), 4);
  CHECK(flipped.ok);
  CHECK(flipped.right_count == 1);
  auto unit = neg_adjunction_check(unit_game(), tensor(b, dual(b)), 4);
  CHECK(unit.ok);
  CHECK(unit.right_count == all_strategies(neg(tensor(b, dual(b))), 4).size());
  CHECK_THROWS_AS(neg_adjunction_check(dual(b), b, 4), GameError);
}

}  // TEST_SUITE
