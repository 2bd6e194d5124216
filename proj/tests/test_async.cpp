#include "doctest.h"

#include "cgw/async_graph.hpp"
#include "cgw/corpus.hpp"

using namespace cgw;

namespace {

Moves mv(const Game& g, const char* text) { return parse_moves(g, text); }

}  // namespace

TEST_SUITE("async") {

TEST_CASE("default labels are path injective") {
  for (const Game& g : {bool_game(), tensor(bool_game(), bool_game()), bang_game(bool_game(), 2), nat_game(2)})
    CHECK_FALSE(repeated_label(async_game(g)).has_value());
  const Game b = bool_game();
  // labelling V and F alike is fine (never on one path); q and V alike is not
  std::vector<std::string> ok(b.move_count()), bad(b.move_count());
  for (Move m = 0; m < static_cast<Move>(b.move_count()); ++m) {
    ok[static_cast<std::size_t>(m)] = b.move_name(m) == "q" ? "ask" : "tell";
    bad[static_cast<std::size_t>(m)] = "same";
  }
  CHECK_NOTHROW(async_game(b, ok));
  CHECK_THROWS_AS(async_game(b, bad), GameError);
}

TEST_CASE("homotopy") {
  const Game b = bool_game();
  const Game bb = tensor(b, b);
  const AsyncGame g = async_game(bb);
  CHECK(homotopic(g, bb.root(), mv(bb, "L.q R.q"), mv(bb, "R.q L.q")));
  CHECK(homotopic(g, bb.root(), mv(bb, "L.q R.q L.V"), mv(bb, "L.q L.V R.q")));
  CHECK_FALSE(homotopic(g, bb.root(), mv(bb, "L.q L.V R.q R.F"), mv(bb, "L.q L.F R.q R.V")));
  const AsyncGame single = async_game(b);
  const Moves qv = mv(b, "q V");
  CHECK(homotopic(single, b.root(), qv, qv));
  CHECK_FALSE(b.is_path(b.root(), mv(b, "V q")));
  CHECK(homotopy_class(single, b.root(), qv).size() == 1);
  // the projection shortcut agrees with the search on every pair of paths
  std::vector<Moves> paths;
  for_each_path(bb, bb.root(), 4, [&](const Moves& s) { paths.push_back(s); });
  for (const Moves& s : paths) {
    const auto cls = homotopy_class(g, bb.root(), s);
    for (const Moves& t : paths) CHECK(homotopic(g, bb.root(), s, t) == (cls.count(t) > 0));
  }
  // in bang, copies may not be opened out of order
  const Game bg = bang_game(b, 2);
  const AsyncGame ab = async_game(bg);
  CHECK(homotopy_class(ab, bg.root(), mv(bg, "c0.q c1.q")).size() == 1);
  CHECK(homotopic(ab, bg.root(), mv(bg, "c0.q c1.q c0.V"), mv(bg, "c0.q c0.V c1.q")));
}

TEST_CASE("concatenation respects homotopy") {
  const Game b = bool_game();
  for (const Game& g : {tensor(b, b), tensor(b, game_two()), product(b, b), bang_game(b, 2)}) {
    auto rep = concat_respects_homotopy_check(async_game(g), 2, 2);
    INFO(g.expression() << " " << rep.witness);
    CHECK(rep.ok);
    CHECK(rep.checks > 0);
  }
}

TEST_CASE("independence") {
  const Game b = bool_game();
  const Game bb = tensor(b, b);
  const Position r = bb.root();
  CHECK(independent(bb, r, Moves{}, mv(bb, "R.q R.V")));
  CHECK(independent(bb, r, mv(bb, "L.q")[0], mv(bb, "R.q")));
  CHECK(independent(bb, r, mv(bb, "L.q"), mv(bb, "R.q R.V")));
  CHECK_FALSE(independent(b, b.root(), mv(b, "q")[0], mv(b, "q")));
  CHECK_THROWS_AS(independent(bb, r, mv(bb, "L.q")[0], Moves{mv(bb, "L.q L.V")[1]}), GameError);
}

TEST_CASE("innocence") {
  const Game b = bool_game();
  CHECK(is_innocent(bottom(b)).innocent());
  for (const Game& a : {b, tensor(b, b), tensor(b, tensor(b, game_two())), tensor(std::vector<Game>{b, b, b})}) {
    Strategy cc = copycat(a);
    INFO(a.expression());
    CHECK(is_innocent(cc).innocent());
    CHECK(is_positional(cc).positional);
  }
  // answering R.q depends on whether L.q was asked first
  const Game bb = tensor(b, b);
  Strategy s = from_plays(bb, {mv(bb, "L.q L.V R.q R.F"), mv(bb, "R.q R.V L.q L.V")});
  REQUIRE(validate_strategy(s).ok());
  auto rep = is_innocent(s);
  CHECK(rep.verdict == InnocenceReport::Verdict::NotInnocent);
  CHECK(rep.clause == "backward");
  CHECK(format_moves(bb, rep.witness) == "L.q L.V R.q R.F");
  // its two maximal plays reach different positions
  CHECK(is_positional(s).positional);
  // only the first half of each diamond is played
  Strategy f = from_plays(bb, {mv(bb, "L.q L.V"), mv(bb, "R.q R.V")});
  auto fwd = is_innocent(f);
  CHECK(fwd.verdict == InnocenceReport::Verdict::NotInnocent);
  CHECK(fwd.clause == "forward");
  const Game early = tensor(dual(b), b);
  Strategy cheat = from_plays(early, {mv(early, "R.q L.q"), mv(early, "R.q L.q L.V R.V")});
  CHECK(is_innocent(cheat).verdict != InnocenceReport::Verdict::NotWinning);
}

TEST_CASE("positionality") {
  const Game b = bool_game();
  CHECK(is_positional(bottom(tensor(b, b))).positional);
  // after both questions are answered true, the future depends on the order
  const Game g3 = tensor(std::vector<Game>{b, b, b});
  Strategy t = from_plays(g3, {mv(g3, "L.q L.V R.L.q R.L.V R.R.q R.R.V"), mv(g3, "R.L.q R.L.V L.q L.V")});
  auto rep = is_positional(t);
  CHECK_FALSE(rep.positional);
  CHECK(format_moves(g3, rep.first) == "L.q L.V R.L.q R.L.V");
  CHECK(format_moves(g3, rep.suffix) == "R.R.q R.R.V");
  CHECK_FALSE(is_innocent(t).innocent());
}

TEST_CASE("positions") {
  const Game b = bool_game();
  CHECK(positions_of(bottom(b)) == std::set<Position>{b.root()});
  Strategy ans = from_plays(b, {mv(b, "q V")});
  auto pos = positions_of(ans);
  CHECK(pos.size() == 2);
  CHECK(pos.count(*b.target(b.root(), mv(b, "q V"))));
}

TEST_CASE("relations") {
  auto e = [](int v) { return Elem{v}; };
  auto e2 = [](int x, int v) { return Elem{x, v}; };
  Relation r;
  for (int x : {1, 2}) {
    r.domain.insert(e2(x, 0));
    r.codomain.insert(e2(x, 0));
  }
  r.pairs.insert({e2(2, 0), e2(2, 0)});
  Relation t = rel_trace(r, 1);
  CHECK(t.pairs == std::set<std::pair<Elem, Elem>>{{e(0), e(0)}});
  Relation empty = r;
  empty.pairs.clear();
  CHECK(rel_trace(empty, 1).pairs.empty());
  std::set<Elem> xa{e2(0, 0), e2(0, 1), e2(1, 0), e2(1, 1)};
  CHECK(rel_trace(rel_identity(xa), 1) == rel_identity({e(0), e(1)}));
  Relation c = rel_compose(rel_identity(xa), rel_identity(xa));
  CHECK(c == rel_identity(xa));
  Relation bad = rel_identity({e(0)});
  CHECK_THROWS_AS(rel_compose(bad, rel_identity({e(1)})), GameError);
}

TEST_CASE("traced relations against brute force") {
  // every relation X x A -> X x B with |X x A| <= 4 and |X x B| <= 4
  std::size_t checked = 0;
  for (int nx = 1; nx <= 4; ++nx)
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
          CHECK(rel_trace(r, 1).pairs == expect);
          ++checked;
        }
      }
  CHECK(checked > 70000);
}

TEST_CASE("positional collapse is functorial on the corpus") {
  const AsyncCorpus c = async_corpus(7, 24);
  std::size_t innocent = 0;
  for (const Strategy& s : c.strategies) {
    auto inn = is_innocent(s);
    if (inn.innocent()) {
      ++innocent;
      CHECK(is_positional(s).positional);
    }
  }
  CHECK(innocent >= 5);
  std::size_t pairs = 0;
  for (const auto& [s, t] : c.composable) {
    if (!is_positional(s).positional || !is_positional(t).positional) continue;
    auto rep = positional_functoriality_check(s, t);
    INFO(format_strategy(s) << "\n" << format_strategy(t) << "\n" << rep.witness);
    CHECK(rep.ok());
    ++pairs;
    if (is_innocent(s).innocent() && is_innocent(t).innocent()) CHECK(is_innocent(compose(s, t)).innocent());
  }
  CHECK(pairs >= 10);
}

}  // TEST_SUITE
