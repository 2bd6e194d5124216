#include "cgw/corpus.hpp"

#include <algorithm>
#include <functional>

namespace cgw {

Game random_game(Rng& rng, std::size_t max_positions, const std::string& name, bool negative,
                 std::size_t min_positions) {
  const std::size_t lo = std::min(std::max<std::size_t>(min_positions, 1), max_positions);
  const std::size_t n = lo + rng.below(max_positions - lo + 1);
  GameSpec s;
  s.name = name;
  s.root = "x0";
  for (std::size_t i = 0; i < n; ++i) s.positions.push_back("x" + std::to_string(i));
  std::size_t next_edge = 0;
  auto add = [&](std::size_t from, std::size_t to) {
    int pol = rng.percent(50) ? -1 : 1;
    if (negative && from == 0) pol = -1;
    const bool question = rng.percent(50);
    Payoff k = question ? (pol < 0 ? Payoff{0, 1} : Payoff{1, 0}) : Payoff{0, 0};
    std::string id(1, static_cast<char>('a' + next_edge++));
    s.edges.push_back({id, s.positions[from], s.positions[to], id, pol, k});
  };
  for (std::size_t i = 1; i < n; ++i) add(rng.below(i), i);
  const std::size_t extra = n > 2 ? rng.below(n - 1) : 0;
  for (std::size_t e = 0; e < extra; ++e) {
    const std::size_t to = 1 + rng.below(n - 1);
    add(rng.below(to), to);
  }
  return build_game(s);
}

Strategy random_strategy(const Game& g, Rng& rng, unsigned reply_percent) {
  Strategy s = bottom(g);
  Moves play;
  std::function<void(const Position&)> rec = [&](const Position& pos) {
    for (Move o : g.enabled(pos)) {
      if (g.polarity(o) >= 0 || !rng.percent(reply_percent)) continue;
      Position mid = pos;
      g.step(mid, o);
      std::vector<Move> replies;
      for (Move p : g.enabled(mid))
        if (g.polarity(p) > 0) replies.push_back(p);
      if (replies.empty()) continue;
      const Move p = replies[rng.below(replies.size())];
      Position next = mid;
      g.step(next, p);
      play.push_back(o);
      play.push_back(p);
      s.plays.insert(play);
      rec(next);
      play.pop_back();
      play.pop_back();
    }
  };
  rec(g.root());
  return s;
}

Strategy random_winning_strategy(const Game& g, Rng& rng, unsigned tries) {
  for (unsigned i = 0; i < tries; ++i) {
    Strategy s = random_strategy(g, rng, 50 + 10 * (i % 5));
    if (is_winning(s).winning) return s;
  }
  return bottom(g);
}

std::vector<Game> small_games() {
  return {bool_game(), game_two(), nat_game(2), dual(bool_game()), unit_game()};
}

std::vector<Triple> category_corpus(std::uint64_t seed, std::size_t count) {
  Rng rng(seed);
  std::vector<Game> pool = small_games();
  for (int i = 0; i < 4; ++i) pool.push_back(random_game(rng, 6, "r" + std::to_string(i)));
  std::vector<Triple> out;
  for (std::size_t i = 0; i < count; ++i) {
    Game a = pool[rng.below(pool.size())];
    Game b = pool[rng.below(pool.size())];
    Game c = pool[rng.below(pool.size())];
    Game d = pool[rng.below(pool.size())];
    Triple t;
    t.id = "triple-" + std::to_string(i);
    t.f = random_strategy(tensor(dual(a), b), rng);
    t.g = random_strategy(tensor(dual(b), c), rng);
    t.h = random_strategy(tensor(dual(c), d), rng);
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace cgw
