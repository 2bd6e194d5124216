#include "doctest.h"

#include "cgw/game.hpp"

#include <set>

using namespace cgw;

namespace {

Moves mv(const Game& g, const char* text) { return parse_moves(g, text); }

GameSpec bool_spec_with(std::vector<PathPayoffSpec> overrides, Payoff q = {0, 1}) {
  GameSpec s{"badbool", {"*", "q", "V", "F"}, "*",
             {{"q", "*", "q", "q", -1, q}, {"V", "q", "V", "V", 1, {0, 0}}, {"F", "q", "F", "F", 1, {0, 0}}},
             std::move(overrides)};
  return s;
}

bool has_violation(const PayoffReport& r, Axiom a) {
  for (const auto& v : r.violations)
    if (v.axiom == a) return true;
  return false;
}

}  // namespace

TEST_SUITE("game") {

TEST_CASE("bool arena shape and payoff table") {
  Game b = bool_game();
  CHECK(b.move_count() == 3);
  CHECK(reachable_positions(b).size() == 4);
  CHECK(b.payoff(b.root(), mv(b, "q")) == Payoff{0, 1});
  CHECK(b.payoff(b.root(), mv(b, "q V")) == Payoff{0, 0});
  CHECK(b.payoff(b.root(), mv(b, "q F")) == Payoff{0, 0});
  CHECK(b.polarity(*b.find_move("q")) == -1);
  CHECK(b.polarity(*b.find_move("V")) == 1);
  CHECK(b.is_negative());
  CHECK(validate_payoff(b).ok());
}

TEST_CASE("unit and two") {
  CHECK(unit_game().move_count() == 0);
  CHECK(reachable_positions(unit_game()).size() == 1);
  Game t = game_two();
  CHECK(t.move_count() == 1);
  CHECK(t.polarity(0) == -1);
  CHECK(t.payoff(t.root(), Moves{0}) == Payoff{0, 0});
  CHECK(validate_payoff(t).ok());
}

TEST_CASE("build_game errors") {
  CHECK_THROWS_AS(build_game(GameSpec{"x", {"*"}, "*", {{"e", "*", "nowhere", "e", -1, {}}}, {}}), GameError);
  CHECK_THROWS_AS(build_game(GameSpec{"x", {"*", "a"}, "*", {{"e", "*", "a", "e", -1, {}}, {"f", "a", "*", "f", 1, {}}}, {}}),
                  GameError);
  CHECK_THROWS_AS(build_game(GameSpec{"x", {"*", "a"}, "*", {}, {}}), GameError);
  CHECK_THROWS_AS(build_game(GameSpec{"x", {"*", "a"}, "*", {{"e", "*", "a", "e", 0, {}}}, {}}), GameError);
  CHECK_THROWS_AS(build_game(bool_spec_with({{"", {"V", "q"}, {0, 0}}})), GameError);
  Game lone = build_game(GameSpec{"lone", {"*"}, "*", {}, {}});
  CHECK(lone.move_count() == 0);
}

TEST_CASE("dual") {
  Game b = bool_game();
  Game d = dual(b);
  CHECK(d.polarity(*d.find_move("q")) == 1);
  CHECK(d.polarity(*d.find_move("V")) == -1);
  CHECK(d.payoff(d.root(), mv(d, "q")) == Payoff{1, 0});
  CHECK(dual(d).node() == b.node());
  CHECK(dual(unit_game()) == unit_game());
  CHECK(validate_payoff(d).ok());
  CHECK_FALSE(d.is_negative());
}

TEST_CASE("tensor payoff is the sum of projections") {
  Game b = bool_game();
  Game bb = tensor(b, b);
  CHECK(reachable_positions(bb).size() == 16);
  CHECK(bb.payoff(bb.root(), mv(bb, "L.q R.q")) == Payoff{0, 2});
  // Oracle: hand table of Bool payoffs indexed by path text.
  auto kb = [](const Moves& local) -> Payoff {
    if (local.size() == 1) return {0, 1};
    return {0, 0};
  };
  for (const Path& p : enumerate_paths(bb, bb.root(), 10)) {
    Path l = project_path(bb, p, 0);
    Path r = project_path(bb, p, 1);
    CHECK(bb.payoff(p.source, p.moves) == kb(l.moves) + kb(r.moves));
  }
  CHECK(isomorphic(tensor(b, unit_game()), b));
  CHECK(validate_payoff(bb).ok());
}

TEST_CASE("project_path") {
  Game bb = tensor(bool_game(), bool_game());
  Path s{bb.root(), mv(bb, "L.q R.q")};
  CHECK(project_path(bb, s, 0).moves == Moves{*bool_game().find_move("q")});
  CHECK(project_path(bb, Path{bb.root(), {}}, 1).moves.empty());
  CHECK_THROWS_AS(project_path(bool_game(), s, 0), GameError);
}

TEST_CASE("neg") {
  Game b = bool_game();
  CHECK(neg(b) == b);
  Game nd = neg(dual(b));
  CHECK(isomorphic(nd, unit_game()));
  CHECK(neg(nd) == nd);
  // neg keeps exactly the plays whose first move is an opponent move.
  Game t = tensor(dual(b), b);
  std::set<Moves> expect, got;
  for (const Path& p : enumerate_paths(t, t.root(), 8))
    if (p.moves.empty() || t.polarity(p.moves[0]) < 0) expect.insert(p.moves);
  Game n = neg(t);
  for (const Path& p : enumerate_paths(n, n.root(), 8)) got.insert(p.moves);
  CHECK(got == expect);
}

TEST_CASE("product") {
  Game b = bool_game();
  Game p = product(b, b);
  CHECK(p.enabled(p.root()).size() == 2);
  CHECK(isomorphic(product(b, unit_game()), b));
  CHECK_THROWS_AS(product(dual(b), b), GameError);
  for (const Path& s : enumerate_paths(p, p.root(), 8)) {
    std::set<int> sides;
    for (Move m : s.moves) sides.insert(p.split_move(m).first);
    CHECK(sides.size() <= 1);
  }
  CHECK(validate_payoff(p).ok());
}

TEST_CASE("loli") {
  Game b = bool_game();
  Game l = loli(b, b);
  std::vector<std::string> init;
  for (Move m : l.enabled(l.root())) init.push_back(l.move_name(m));
  CHECK(init == std::vector<std::string>{"R.q"});
  CHECK(l.is_path(l.root(), mv(l, "R.q L.q L.V R.V")));
  CHECK(isomorphic(loli(unit_game(), b), neg(b)));
  CHECK(validate_payoff(l).ok());
}

TEST_CASE("enumerate_paths") {
  Game b = bool_game();
  CHECK(enumerate_paths(b, b.root(), 0).size() == 1);
  auto all = enumerate_paths(b, b.root(), 2);
  REQUIRE(all.size() == 4);
  CHECK(all[0].moves.empty());
  CHECK(format_moves(b, all[1].moves) == "q");
  CHECK(format_moves(b, all[2].moves) == "q F");
  CHECK(format_moves(b, all[3].moves) == "q V");
}

TEST_CASE("nat game") {
  CHECK(nat_game(0).move_count() == 2);
  CHECK(reachable_positions(nat_game(3)).size() == 6);
  Game n = nat_game(8);
  CHECK(validate_payoff(n).ok());
  CHECK(n.payoff(n.root(), mv(n, "q 7")) == Payoff{0, 0});
}

TEST_CASE("violating tables name the broken axiom") {
  Game norm = build_game(bool_spec_with({{"*", {}, {1, 0}}}));
  auto rn = validate_payoff(norm);
  CHECK(has_violation(rn, Axiom::Norm));

  Game sub = build_game(bool_spec_with({{"", {"q", "V"}, {0, 2}}}));
  auto rs = validate_payoff(sub);
  REQUIRE(has_violation(rs, Axiom::SubAdditivity));
  bool witness = false;
  for (const auto& v : rs.violations)
    if (v.axiom == Axiom::SubAdditivity && format_moves(sub, v.first) == "q" && format_moves(sub, v.second) == "V")
      witness = true;
  CHECK(witness);

  Game suf = build_game(bool_spec_with({{"", {"V"}, {1, 0}}, {"", {"q", "V"}, {0, 0}}}));
  CHECK(has_violation(validate_payoff(suf), Axiom::SuffixDomination));

  Game comp = build_game(bool_spec_with({}, {1, 1}));
  CHECK(has_violation(validate_payoff(comp), Axiom::Compatibility));
}

TEST_CASE("serial and parallel validators agree") {
  for (const Game& g : {bool_game(), tensor(bool_game(), dual(nat_game(3))), loli(loli(bool_game(), bool_game()), bool_game()),
                        build_game(bool_spec_with({{"", {"q", "V"}, {0, 2}}}))}) {
    auto a = validate_payoff(g);
    auto b = validate_payoff_serial(g);
    CHECK(a.paths_checked == b.paths_checked);
    CHECK(a.violations.size() == b.violations.size());
  }
}

TEST_CASE("bang game positions") {
  Game bb = bang_game(bool_game(), 2);
  CHECK(reachable_positions(bb).size() == 13);
  CHECK(isomorphic(bang_game(bool_game(), 1), bool_game()));
  CHECK_FALSE(bb.is_path(bb.root(), mv(bb, "c1.q")));
  CHECK(bb.is_path(bb.root(), mv(bb, "c0.q c1.q")));
  CHECK(validate_payoff(bb).ok());
  CHECK_THROWS_AS(bang_game(dual(bool_game()), 2), GameError);
}

}  // TEST_SUITE
