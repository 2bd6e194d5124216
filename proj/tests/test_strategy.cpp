#include "doctest.h"

#include "cgw/corpus.hpp"
#include "cgw/engine.hpp"
#include "cgw/strategy.hpp"

using namespace cgw;

namespace {

Moves mv(const Game& g, const char* text) { return parse_moves(g, text); }

// Oracle: copycat as the filter "alternating, even, every even prefix projects
// equally onto both copies" over all paths of A* (x) A.
std::set<Moves> copycat_oracle(const Game& a) {
  Game g = tensor(dual(a), a);
  std::set<Moves> out;
  for (const Path& p : enumerate_paths(g, g.root(), g.max_path_length())) {
    if (p.moves.size() % 2) continue;
    bool ok = true;
    for (std::size_t i = 0; i < p.moves.size() && ok; ++i)
      if (g.polarity(p.moves[i]) != (i % 2 ? 1 : -1)) ok = false;
    for (std::size_t n = 0; n <= p.moves.size() && ok; n += 2) {
      Path pre{p.source, Moves(p.moves.begin(), p.moves.begin() + static_cast<std::ptrdiff_t>(n))};
      if (project_path(g, pre, 0).moves != project_path(g, pre, 1).moves) ok = false;
    }
    if (ok) out.insert(p.moves);
  }
  return out;
}

Strategy early_answer_strategy() {
  Game b = bool_game();
  Game g = loli(loli(b, b), b);
  return from_plays(g, {mv(g, "R.q L.R.q L.L.q R.V")});
}

}  // namespace

TEST_SUITE("strategy") {

TEST_CASE("validate_strategy clauses") {
  Game b = bool_game();
  CHECK(validate_strategy(bottom(b)).ok());
  Strategy nondet{b, {{}, mv(b, "q V"), mv(b, "q F")}};
  auto r = validate_strategy(nondet);
  REQUIRE_FALSE(r.ok());
  CHECK(r.issues[0].clause == "deterministic");
  Strategy noeps{b, {mv(b, "q V")}};
  CHECK(validate_strategy(noeps).issues[0].clause == "empty");
  Strategy odd{b, {{}, mv(b, "q")}};
  CHECK_FALSE(validate_strategy(odd).ok());
}

TEST_CASE("copycat matches the projection filter") {
  CHECK(copycat(unit_game()).plays == std::set<Moves>{{}});
  for (const Game& a : {bool_game(), dual(bool_game()), nat_game(2), tensor(bool_game(), bool_game()),
                        loli(bool_game(), bool_game()), product(bool_game(), game_two())}) {
    Strategy cc = copycat(a);
    CHECK(cc.plays == copycat_oracle(a));
    CHECK(validate_strategy(cc).ok());
  }
  Game b = bool_game();
  Strategy cc = copycat(b);
  CHECK(cc.contains(mv(cc.game, "R.q L.q L.V R.V")));
  CHECK_FALSE(cc.contains(mv(cc.game, "R.q L.q L.V R.F")));
}

TEST_CASE("engine composition agrees with interaction hiding") {
  Rng rng(7);
  std::vector<Game> pool = small_games();
  for (int i = 0; i < 3; ++i) pool.push_back(random_game(rng, 5, "g" + std::to_string(i)));
  for (int trial = 0; trial < 60; ++trial) {
    Game a = pool[rng.below(pool.size())], b = pool[rng.below(pool.size())], c = pool[rng.below(pool.size())];
    Strategy s = random_strategy(tensor(dual(a), b), rng);
    Strategy t = random_strategy(tensor(dual(b), c), rng);
    Strategy lazy = compose(s, t);
    Strategy brute = compose_by_interactions(s, t);
    CHECK(lazy == brute);
    CHECK(validate_strategy(lazy).ok());
    CHECK(materialize_serial(*trie_behaviour(lazy), 64).strategy.plays == lazy.plays);
  }
}

TEST_CASE("identity laws and interactions on copycat") {
  Game b = bool_game();
  Strategy cc = copycat(b);
  auto ints = interactions(cc, cc);
  CHECK(!ints.items.empty());
  for (const Interaction& u : ints.items) {
    Moves pa, pb, pc;
    for (auto [k, m] : u.moves) (k == 0 ? pa : k == 1 ? pb : pc).push_back(m);
    CHECK(pa.size() == pb.size());
    CHECK(pb.size() == pc.size());
  }
  CHECK(compose(cc, cc) == cc);
  Rng rng(3);
  Strategy s = random_strategy(tensor(dual(b), nat_game(2)), rng);
  CHECK(compose(copycat(b), s) == s);
  CHECK(compose(s, copycat(nat_game(2))) == s);
  CHECK(interactions(bottom(tensor(dual(b), b)), bottom(tensor(dual(b), b))).items.size() == 1);
  CHECK_THROWS_AS(compose(cc, copycat(nat_game(1))), GameError);
}

TEST_CASE("disjoint support: sigma never enters B") {
  Game b = bool_game();
  Game a = nat_game(1);
  // sigma answers A-side opponent moves only; it has no plays touching B.
  Game ab = tensor(dual(a), b);
  Strategy sigma = bottom(ab);
  Strategy tau = from_plays(tensor(dual(b), b), {mv(tensor(dual(b), b), "R.q L.q L.V R.V")});
  auto ints = interactions(sigma, tau);
  for (const Interaction& u : ints.items)
    for (auto [k, m] : u.moves) CHECK(k != 1);
  CHECK(compose(sigma, tau).plays == std::set<Moves>{{}});
}

TEST_CASE("unique witness") {
  Game b = bool_game();
  Strategy cc = copycat(b);
  Strategy comp = compose(cc, cc);
  for (const Moves& s : comp.plays) {
    auto ws = witnesses(s, cc, cc);
    REQUIRE(ws.size() == 1);
    for (std::size_t n = 0; n < s.size(); n += 2) {
      Interaction w = unique_witness(Moves(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(n)), cc, cc);
      CHECK(std::equal(w.moves.begin(), w.moves.end(), ws[0].moves.begin()));
    }
  }
  Interaction w = unique_witness(mv(comp.game, "R.q L.q L.V R.V"), cc, cc);
  CHECK(w.moves.size() == 6);
  CHECK(w.moves[1].first == 1);
  CHECK(unique_witness({}, cc, cc).moves.empty());
  CHECK_THROWS_AS(unique_witness(mv(comp.game, "R.q L.q L.V R.F"), cc, cc), GameError);
}

TEST_CASE("winning: bool answerer, bottom, early answer") {
  Game b = bool_game();
  CHECK(is_winning(from_plays(b, {mv(b, "q V")})).winning);
  CHECK(is_winning(bottom(b)).winning);
  Strategy early = early_answer_strategy();
  CHECK(validate_strategy(early).ok());
  auto r = is_winning(early);
  REQUIRE_FALSE(r.winning);
  REQUIRE(r.violations.size() == 1);
  CHECK(format_moves(early.game, r.violations[0].moves) == "L.L.q R.V");
  CHECK(r.violations[0].payoff == Payoff{0, 1});
  auto serial = is_winning_serial(early);
  CHECK(serial.violations.size() == r.violations.size());
}

TEST_CASE("well-bracketing of the full and early plays") {
  Game b = bool_game();
  Game g = loli(loli(b, b), b);
  Moves full = mv(g, "R.q L.R.q L.L.q L.L.V L.R.V R.V");
  CHECK(is_well_bracketed(g, full, Bracketing::Both));
  CHECK(is_well_bracketed(g, {}, Bracketing::Both));
  Moves early = mv(g, "R.q L.R.q L.L.q R.V");
  CHECK_FALSE(is_well_bracketed(g, early, Bracketing::Player));
}

TEST_CASE("interact_two") {
  Game b = bool_game();
  Game tg = tensor(dual(b), game_two());
  Strategy answer = from_plays(b, {mv(b, "q V")});
  Strategy ask = from_plays(tg, {mv(tg, "R.o L.q")});
  CHECK(interact_two(bottom(b), ask) == std::set<Moves>{{}});
  CHECK(interact_two(answer, ask) == std::set<Moves>{{}, mv(b, "q V")});
}

TEST_CASE("winning strategies play well-bracketed plays") {
  Rng rng(11);
  for (int i = 0; i < 40; ++i) {
    Game a = random_game(rng, 6, "w");
    Strategy s = random_winning_strategy(tensor(dual(a), bool_game()), rng);
    for (const Moves& p : s.plays) CHECK(is_well_bracketed(s.game, p, Bracketing::Player));
  }
}

}  // TEST_SUITE
