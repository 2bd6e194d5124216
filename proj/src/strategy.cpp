#include "cgw/strategy.hpp"

#include "cgw/engine.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace cgw {

Strategy bottom(const Game& g) { return Strategy{g, {Moves{}}}; }

Strategy from_plays(const Game& g, const std::vector<Moves>& plays) {
  Strategy s = bottom(g);
  for (const Moves& p : plays)
    for (std::size_t n = 2; n <= p.size(); n += 2) s.plays.insert(Moves(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(n)));
  return s;
}

StrategyReport validate_strategy(const Strategy& s) {
  StrategyReport r;
  const Game& g = s.game;
  if (!s.contains({})) r.issues.push_back({"empty", {}, "the empty play is missing"});
  std::map<Moves, Move> reply;  // odd prefix -> player move
  for (const Moves& p : s.plays) {
    if (!g.is_path(g.root(), p)) {
      r.issues.push_back({"path", p, "not a play of " + g.expression()});
      continue;
    }
    if (p.size() % 2 != 0) r.issues.push_back({"even-length", p, "odd length " + std::to_string(p.size())});
    if (!p.empty() && g.polarity(p[0]) > 0) r.issues.push_back({"opponent-start", p, "first move is a player move"});
    for (std::size_t i = 0; i < p.size(); ++i) {
      const int want = i % 2 == 0 ? -1 : 1;
      if (g.polarity(p[i]) != want) {
        r.issues.push_back({"alternating", p, "move " + std::to_string(i) + " has polarity " + std::to_string(g.polarity(p[i]))});
        break;
      }
    }
    if (p.size() >= 2 && p.size() % 2 == 0) {
      Moves prefix(p.begin(), p.end() - 2);
      if (!s.contains(prefix)) r.issues.push_back({"prefix-closed", p, "even prefix " + format_moves(g, prefix) + " missing"});
      Moves odd(p.begin(), p.end() - 1);
      auto [it, fresh] = reply.emplace(odd, p.back());
      if (!fresh && it->second != p.back())
        r.issues.push_back({"deterministic", p,
                            "after " + format_moves(g, odd) + " both " + g.move_name(it->second) + " and " +
                                g.move_name(p.back())});
    }
  }
  return r;
}

Strategy copycat(const Game& a) { return materialize_all(*rearrangement(a, a)); }

MorphismShape shape_of(const Game& g) {
  if (g.kind() != GameKind::Tensor) {
    // A game with no opponent-side factor is read as 1 -> g.
    return {unit_game(), g};
  }
  return {dual(g.child(0)), g.child(1)};
}

namespace {

void check_composable(const Strategy& sigma, const Strategy& tau, MorphismShape& f, MorphismShape& g) {
  f = shape_of(sigma.game);
  g = shape_of(tau.game);
  if (!(f.dst == g.src))
    throw GameError("game mismatch: " + f.dst.expression() + " vs " + g.src.expression());
}

}  // namespace

Strategy compose(const Strategy& sigma, const Strategy& tau) {
  MorphismShape f, g;
  check_composable(sigma, tau, f, g);
  Arrow a{f.src, f.dst, trie_behaviour(sigma)};
  Arrow b{g.src, g.dst, trie_behaviour(tau)};
  return materialize_all(*compose_arrows(a, b).b);
}

Moves Interaction::project_ab(const Game& ab) const {
  Moves out;
  for (auto [k, m] : moves)
    if (k != 2) out.push_back(ab.join_move(k, m));
  return out;
}
Moves Interaction::project_bc(const Game& bc) const {
  Moves out;
  for (auto [k, m] : moves)
    if (k != 0) out.push_back(bc.join_move(k - 1, m));
  return out;
}
Moves Interaction::project_ac(const Game& ac) const {
  Moves out;
  for (auto [k, m] : moves)
    if (k != 1) out.push_back(ac.join_move(k == 0 ? 0 : 1, m));
  return out;
}

namespace {

// Prefix trie over all prefixes (odd and even) of a strategy's plays.
struct PrefixTrie {
  std::vector<std::map<Move, int>> next;
  std::vector<char> member;

  explicit PrefixTrie(const Strategy& s) {
    next.emplace_back();
    member.push_back(0);
    for (const Moves& p : s.plays) {
      int cur = 0;
      for (Move m : p) {
        auto it = next[static_cast<std::size_t>(cur)].find(m);
        if (it == next[static_cast<std::size_t>(cur)].end()) {
          const int fresh = static_cast<int>(next.size());
          next[static_cast<std::size_t>(cur)].emplace(m, fresh);
          next.emplace_back();
          member.push_back(0);
          cur = fresh;
        } else {
          cur = it->second;
        }
      }
      member[static_cast<std::size_t>(cur)] = 1;
    }
  }
  int step(int node, Move m) const {
    auto it = next[static_cast<std::size_t>(node)].find(m);
    return it == next[static_cast<std::size_t>(node)].end() ? -1 : it->second;
  }
};

struct InteractionSearch {
  Game a, b, c, ab, bc, ac;
  PrefixTrie ts, tt;
  const Moves* target = nullptr;  // restricts u|A,C to prefixes of *target
  std::vector<Interaction> found;

  InteractionSearch(const Strategy& sigma, const Strategy& tau) : ts(sigma), tt(tau) {
    MorphismShape f, g;
    check_composable(sigma, tau, f, g);
    a = f.src;
    b = f.dst;
    c = g.dst;
    ab = sigma.game;
    bc = tau.game;
    ac = tensor(dual(a), c);
  }

  void run() {
    Interaction u;
    dfs(u, a.root(), b.root(), c.root(), 0, 0, 0);
    std::sort(found.begin(), found.end());
  }

  void dfs(Interaction& u, const Position& pa, const Position& pb, const Position& pc, int ns, int nt, std::size_t nac) {
    if (ts.member[static_cast<std::size_t>(ns)] && tt.member[static_cast<std::size_t>(nt)] &&
        (!target || nac == target->size()))
      found.push_back(u);
    auto visible = [&](Move outer) {
      const int want = nac % 2 == 0 ? -1 : 1;
      if (ac.polarity(outer) != want) return false;
      return !target || (nac < target->size() && (*target)[nac] == outer);
    };
    for (Move m : a.enabled(pa)) {
      const Move outer = ac.join_move(0, m);
      if (!visible(outer)) continue;
      const int s2 = ts.step(ns, ab.join_move(0, m));
      if (s2 < 0) continue;
      Position next = pa;
      a.step(next, m);
      u.moves.push_back({0, m});
      dfs(u, next, pb, pc, s2, nt, nac + 1);
      u.moves.pop_back();
    }
    for (Move m : b.enabled(pb)) {
      const int s2 = ts.step(ns, ab.join_move(1, m));
      const int t2 = tt.step(nt, bc.join_move(0, m));
      if (s2 < 0 || t2 < 0) continue;
      Position next = pb;
      b.step(next, m);
      u.moves.push_back({1, m});
      dfs(u, pa, next, pc, s2, t2, nac);
      u.moves.pop_back();
    }
    for (Move m : c.enabled(pc)) {
      const Move outer = ac.join_move(1, m);
      if (!visible(outer)) continue;
      const int t2 = tt.step(nt, bc.join_move(1, m));
      if (t2 < 0) continue;
      Position next = pc;
      c.step(next, m);
      u.moves.push_back({2, m});
      dfs(u, pa, pb, next, ns, t2, nac + 1);
      u.moves.pop_back();
    }
  }
};

}  // namespace

InteractionSet interactions(const Strategy& sigma, const Strategy& tau) {
  InteractionSearch s(sigma, tau);
  s.run();
  return {s.a, s.b, s.c, std::move(s.found)};
}

Strategy compose_by_interactions(const Strategy& sigma, const Strategy& tau) {
  InteractionSearch s(sigma, tau);
  s.run();
  Strategy out = bottom(s.ac);
  for (const Interaction& u : s.found) out.plays.insert(u.project_ac(s.ac));
  return out;
}

std::vector<Interaction> witnesses(const Moves& target, const Strategy& sigma, const Strategy& tau) {
  InteractionSearch s(sigma, tau);
  s.target = &target;
  s.run();
  return std::move(s.found);
}

Interaction unique_witness(const Moves& target, const Strategy& sigma, const Strategy& tau) {
  auto ws = witnesses(target, sigma, tau);
  if (ws.empty()) throw GameError("unique_witness: play is not in the composite");
  if (ws.size() > 1) throw std::logic_error("unique_witness: " + std::to_string(ws.size()) + " witnesses");
  return ws.front();
}

namespace {

void segments_of(const Game& g, const Moves& p, std::vector<PlayedPath>& bad, std::size_t& count) {
  std::vector<Position> at{g.root()};
  for (Move m : p) {
    Position next = at.back();
    g.step(next, m);
    at.push_back(std::move(next));
  }
  for (std::size_t i = 0; i < p.size(); i += 2)
    for (std::size_t j = i + 2; j <= p.size(); j += 2) {
      ++count;
      std::span<const Move> t(p.data() + i, j - i);
      const Payoff k = g.payoff(at[i], t);
      if (k.plus == 0 && k.minus != 0) bad.push_back({at[i], Moves(t.begin(), t.end()), k});
    }
}

void normalise(std::vector<PlayedPath>& v) {
  auto key = [](const PlayedPath& x) { return std::tie(x.source, x.moves); };
  std::sort(v.begin(), v.end(), [&](const PlayedPath& x, const PlayedPath& y) { return key(x) < key(y); });
  v.erase(std::unique(v.begin(), v.end(), [&](const PlayedPath& x, const PlayedPath& y) { return key(x) == key(y); }),
          v.end());
}

}  // namespace

WinningReport is_winning_serial(const Strategy& s) {
  WinningReport r;
  for (const Moves& p : s.plays) segments_of(s.game, p, r.violations, r.paths_checked);
  normalise(r.violations);
  r.winning = r.violations.empty();
  return r;
}

WinningReport is_winning(const Strategy& s) {
  const std::vector<Moves> plays(s.plays.begin(), s.plays.end());
  std::vector<std::vector<PlayedPath>> bad(plays.size());
  std::vector<std::size_t> counts(plays.size(), 0);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(plays.size()); ++i)
    segments_of(s.game, plays[static_cast<std::size_t>(i)], bad[static_cast<std::size_t>(i)],
                counts[static_cast<std::size_t>(i)]);
  WinningReport r;
  for (std::size_t i = 0; i < plays.size(); ++i) {
    r.paths_checked += counts[i];
    for (auto& v : bad[i]) r.violations.push_back(std::move(v));
  }
  normalise(r.violations);
  r.winning = r.violations.empty();
  return r;
}

bool is_well_bracketed(const Game& g, const Moves& play, Bracketing mode) {
  std::vector<Position> at{g.root()};
  for (Move m : play) {
    Position next = at.back();
    if (!g.step(next, m)) throw GameError("is_well_bracketed: not a play of " + g.expression());
    at.push_back(std::move(next));
  }
  const bool player = mode != Bracketing::Opponent;
  const bool opponent = mode != Bracketing::Player;
  for (std::size_t i = 0; i < play.size(); ++i)
    for (std::size_t j = i + 2; j <= play.size(); j += 2) {
      const int last = g.polarity(play[j - 1]);
      std::span<const Move> t(play.data() + i, j - i);
      if (player && last > 0) {
        const Payoff k = g.payoff(at[i], t);
        if (k.plus == 0 && k.minus != 0) return false;
      }
      if (opponent && last < 0) {
        const Payoff k = g.payoff(at[i], t);
        if (k.minus == 0 && k.plus != 0) return false;
      }
    }
  return true;
}

std::set<Moves> interact_two(const Strategy& sigma, const Strategy& tau) {
  const Game& g = tau.game;
  if (g.kind() != GameKind::Tensor || !(g.child(0) == dual(sigma.game)) || !(g.child(1) == game_two()))
    throw GameError("interact_two: expected a strategy on dual(" + sigma.game.expression() + ") (x) two");
  const Move o = g.join_move(1, 0);
  std::set<Moves> out{Moves{}};
  for (const Moves& sm : sigma.plays) {
    if (sm.empty()) continue;
    Moves os{o};
    os.insert(os.end(), sm.begin(), sm.end() - 1);
    if (tau.contains(os)) out.insert(sm);
  }
  return out;
}

std::string format_strategy(const Strategy& s) {
  std::ostringstream os;
  for (const Moves& p : s.plays) os << format_moves(s.game, p) << '\n';
  return os.str();
}

}  // namespace cgw
