#include "cgw/async_graph.hpp"

#include "cgw/corpus.hpp"
#include "cgw/engine.hpp"
#include "cgw/monoidal.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace cgw {

namespace {

constexpr std::size_t kClassCap = 400000;

bool default_labels(const AsyncGame& g) {
  for (std::size_t m = 0; m < g.labels.size(); ++m)
    if (g.labels[m] != g.game.move_name(static_cast<Move>(m))) return false;
  return true;
}

// Tensor/dual trees over leaves without internal concurrency: transpositions
// are exactly the swaps of moves from different leaves.
bool static_independence(const Game& g) {
  switch (g.kind()) {
    case GameKind::Tensor:
      return static_independence(g.child(0)) && static_independence(g.child(1));
    case GameKind::Dual:
      return static_independence(g.child(0));
    case GameKind::Base:
    case GameKind::Product:
      return true;
    case GameKind::Neg:
      return g.child(0).kind() == GameKind::Base;
    case GameKind::Bang:
      return false;
  }
  return false;
}

int leaves(const Game& g) {
  if (g.kind() == GameKind::Tensor) return leaves(g.child(0)) + leaves(g.child(1));
  if (g.kind() == GameKind::Dual) return leaves(g.child(0));
  return 1;
}

int leaf_of(const Game& g, Move m, int base) {
  switch (g.kind()) {
    case GameKind::Tensor: {
      auto [side, local] = g.split_move(m);
      return side == 0 ? leaf_of(g.child(0), local, base) : leaf_of(g.child(1), local, base + leaves(g.child(0)));
    }
    case GameKind::Dual:
      return leaf_of(g.child(0), m, base);
    default:
      return base;
  }
}

std::map<int, Moves> projections(const Game& g, const Moves& s) {
  std::map<int, Moves> out;
  for (Move m : s) out[leaf_of(g, m, 0)].push_back(m);
  return out;
}

std::vector<Position> trail(const Game& g, const Position& source, const Moves& s) {
  std::vector<Position> out{source};
  for (Move m : s) {
    Position p = out.back();
    if (!g.step(p, m)) throw GameError("not a path: " + format_moves(g, s));
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Moves> neighbours(const AsyncGame& g, const Position& source, const Moves& s) {
  std::vector<Moves> out;
  const auto pos = trail(g.game, source, s);
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    const std::string& lm = g.labels[static_cast<std::size_t>(s[i])];
    const std::string& ln = g.labels[static_cast<std::size_t>(s[i + 1])];
    for (Move a : g.game.enabled(pos[i])) {
      if (g.labels[static_cast<std::size_t>(a)] != ln) continue;
      Position mid = pos[i];
      g.game.step(mid, a);
      for (Move b : g.game.enabled(mid)) {
        if (g.labels[static_cast<std::size_t>(b)] != lm) continue;
        Position end = mid;
        g.game.step(end, b);
        if (end != pos[i + 2]) continue;
        Moves t = s;
        t[i] = a;
        t[i + 1] = b;
        if (t != s) out.push_back(std::move(t));
      }
    }
  }
  return out;
}

std::string show(const Game& g, const Moves& s) { return format_moves(g, s); }

}  // namespace

AsyncGame async_game(const Game& g) {
  AsyncGame a{g, {}};
  for (std::size_t m = 0; m < g.move_count(); ++m) a.labels.push_back(g.move_name(static_cast<Move>(m)));
  return a;
}

AsyncGame async_game(const Game& g, std::vector<std::string> labels) {
  if (labels.size() != g.move_count()) throw GameError("async_game: one label per move required");
  AsyncGame a{g, std::move(labels)};
  if (auto bad = repeated_label(a)) throw GameError("async_game: path repeats a label: " + show(g, *bad));
  return a;
}

std::optional<Moves> repeated_label(const AsyncGame& g) {
  std::optional<Moves> bad;
  for_each_path(g.game, g.game.root(), g.game.max_path_length(), [&](const Moves& s) {
    if (bad || s.empty()) return;
    const std::string& last = g.labels[static_cast<std::size_t>(s.back())];
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
      if (g.labels[static_cast<std::size_t>(s[i])] == last) {
        bad = s;
        return;
      }
  });
  return bad;
}

std::set<Moves> homotopy_class(const AsyncGame& g, const Position& source, const Moves& s) {
  std::set<Moves> seen{s};
  std::deque<Moves> todo{s};
  while (!todo.empty()) {
    Moves cur = std::move(todo.front());
    todo.pop_front();
    for (Moves& n : neighbours(g, source, cur)) {
      if (seen.insert(n).second) {
        if (seen.size() > kClassCap) throw GameError("homotopy class larger than " + std::to_string(kClassCap));
        todo.push_back(std::move(n));
      }
    }
  }
  return seen;
}

bool homotopic(const AsyncGame& g, const Position& source, const Moves& s1, const Moves& s2) {
  auto t1 = g.game.target(source, s1);
  auto t2 = g.game.target(source, s2);
  if (!t1 || !t2) throw GameError("homotopic: arguments must be paths from the given source");
  if (*t1 != *t2 || s1.size() != s2.size()) return false;
  if (s1 == s2) return true;
  if (default_labels(g) && static_independence(g.game)) return projections(g.game, s1) == projections(g.game, s2);
  return homotopy_class(g, source, s1).count(s2) > 0;
}

HomotopyConcatReport concat_respects_homotopy_check(const AsyncGame& g, std::size_t len1, std::size_t len2) {
  HomotopyConcatReport rep;
  const Game& G = g.game;
  const Position root = G.root();
  for_each_path(G, root, len1, [&](const Moves& s1) {
    if (!rep.ok) return;
    const Position mid = *G.target(root, s1);
    const auto c1 = homotopy_class(g, root, s1);
    for_each_path(G, mid, len2, [&](const Moves& s2) {
      if (!rep.ok) return;
      const auto c2 = homotopy_class(g, mid, s2);
      Moves whole = s1;
      whole.insert(whole.end(), s2.begin(), s2.end());
      const auto c12 = homotopy_class(g, root, whole);
      for (const Moves& a : c1)
        for (const Moves& b : c2) {
          ++rep.checks;
          Moves ab = a;
          ab.insert(ab.end(), b.begin(), b.end());
          if (!c12.count(ab)) {
            rep.ok = false;
            rep.witness = show(G, whole) + " vs " + show(G, ab);
            return;
          }
        }
    });
  });
  return rep;
}

bool independent(const Game& g, const Position& source, Move m, const Moves& s) {
  if (!g.is_path(source, s)) throw GameError("independent: not a path from the source: " + show(g, s));
  for (std::size_t k = 0; k <= s.size(); ++k) {
    Moves t(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(k));
    t.push_back(m);
    t.insert(t.end(), s.begin() + static_cast<std::ptrdiff_t>(k), s.end());
    if (!g.is_path(source, t)) return false;
  }
  return true;
}

bool independent(const Game& g, const Position& source, const Moves& s, const Moves& t) {
  for (Move m : s)
    if (!independent(g, source, m, t)) return false;
  return true;
}

bool commute(const Game& g, const Position& x, Move m, Move n) {
  auto a = g.target(x, Moves{m, n});
  auto b = g.target(x, Moves{n, m});
  return a && b && *a == *b;
}

namespace {

// Independence of edge m and the one-move path [n] at x.
bool tile(const Game& g, const std::optional<Position>& x, Move m, Move n) {
  if (!x || !g.is_path(*x, Moves{n})) return false;
  return independent(g, *x, m, Moves{n});
}

std::optional<Position> after(const Game& g, const Position& x, std::initializer_list<Move> ms) {
  return g.target(x, Moves(ms));
}

}  // namespace

InnocenceReport is_innocent(const Strategy& s, const AsyncGame& ag) {
  InnocenceReport rep;
  const Game& g = s.game;
  if (!is_winning(s).winning) {
    rep.verdict = InnocenceReport::Verdict::NotWinning;
    rep.detail = "innocence is defined for winning strategies";
    return rep;
  }
  (void)ag;
  // backward
  for (const Moves& p : s.plays) {
    for (std::size_t i = 0; i + 4 <= p.size(); i += 2) {
      const Moves s1(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(i));
      const Move m1 = p[i], n1 = p[i + 1], m2 = p[i + 2], n2 = p[i + 3];
      const Position x0 = *g.target(g.root(), s1);
      if (!tile(g, x0, m1, m2) || !tile(g, after(g, x0, {m1}), n1, m2)) continue;
      std::string broken;
      if (!tile(g, after(g, x0, {m2}), m1, n2)) broken = "m1 I n2";
      else if (!tile(g, after(g, x0, {m1, m2}), n1, n2)) broken = "n1 I n2";
      else {
        Moves q = s1;
        q.insert(q.end(), {m2, n2, m1, n1});
        q.insert(q.end(), p.begin() + static_cast<std::ptrdiff_t>(i + 4), p.end());
        if (!s.contains(q)) broken = "permuted play " + show(g, q) + " missing";
      }
      if (!broken.empty()) {
        rep.verdict = InnocenceReport::Verdict::NotInnocent;
        rep.clause = "backward";
        rep.witness = p;
        rep.detail = "at " + std::to_string(i) + ": " + broken;
        return rep;
      }
    }
  }
  // forward
  std::map<Moves, std::vector<std::pair<Move, Move>>> children;
  for (const Moves& p : s.plays)
    if (p.size() >= 2) children[Moves(p.begin(), p.end() - 2)].push_back({p[p.size() - 2], p.back()});
  for (const auto& [s1, kids] : children) {
    const Position x0 = *g.target(g.root(), s1);
    for (const auto& [m1, n1] : kids)
      for (const auto& [m2, n2] : kids) {
        if (m1 == m2) continue;
        if (!tile(g, x0, m1, m2) || !tile(g, after(g, x0, {m1}), n1, m2)) continue;
        std::string broken;
        if (!tile(g, after(g, x0, {m2}), m1, n2)) broken = "m1 I n2";
        else if (!tile(g, after(g, x0, {m1, m2}), n1, n2)) broken = "n1 I n2";
        else {
          Moves q = s1;
          q.insert(q.end(), {m1, n1, m2, n2});
          if (!s.contains(q)) broken = "joined play " + show(g, q) + " missing";
        }
        if (!broken.empty()) {
          rep.verdict = InnocenceReport::Verdict::NotInnocent;
          rep.clause = "forward";
          rep.witness = s1;
          rep.witness.insert(rep.witness.end(), {m1, n1, m2, n2});
          rep.detail = broken;
          return rep;
        }
      }
  }
  return rep;
}

InnocenceReport is_innocent(const Strategy& s) { return is_innocent(s, async_game(s.game)); }

PositionalReport is_positional(const Strategy& s, const AsyncGame& ag) {
  PositionalReport rep;
  const Game& g = s.game;
  const bool fast = default_labels(ag) && static_independence(g);
  // classes of pairwise homotopic plays reaching the same position
  std::vector<std::vector<Moves>> classes;
  {
    std::map<Position, std::vector<Moves>> by_target;
    for (const Moves& p : s.plays) by_target[*g.target(g.root(), p)].push_back(p);
    for (auto& [pos, plays] : by_target) {
      if (fast) {
        std::map<std::map<int, Moves>, std::vector<Moves>> sig;
        for (const Moves& p : plays) sig[projections(g, p)].push_back(p);
        for (auto& [k, v] : sig)
          if (v.size() > 1) classes.push_back(std::move(v));
      } else {
        std::vector<bool> used(plays.size(), false);
        for (std::size_t i = 0; i < plays.size(); ++i) {
          if (used[i]) continue;
          std::vector<Moves> cls{plays[i]};
          for (std::size_t j = i + 1; j < plays.size(); ++j)
            if (!used[j] && homotopic(ag, g.root(), plays[i], plays[j])) {
              used[j] = true;
              cls.push_back(plays[j]);
            }
          if (cls.size() > 1) classes.push_back(std::move(cls));
        }
      }
    }
  }
  auto suffixes = [&](const Moves& pre) {
    std::set<Moves> out;
    for (auto it = s.plays.lower_bound(pre); it != s.plays.end(); ++it) {
      if (it->size() < pre.size() || !std::equal(pre.begin(), pre.end(), it->begin())) break;
      out.insert(Moves(it->begin() + static_cast<std::ptrdiff_t>(pre.size()), it->end()));
    }
    return out;
  };
  for (const auto& cls : classes) {
    const auto base = suffixes(cls[0]);
    for (std::size_t j = 1; j < cls.size(); ++j) {
      const auto other = suffixes(cls[j]);
      if (other == base) continue;
      std::vector<Moves> diff;
      std::set_symmetric_difference(base.begin(), base.end(), other.begin(), other.end(), std::back_inserter(diff));
      const bool in_base = base.count(diff[0]) > 0;
      rep.positional = false;
      rep.first = in_base ? cls[0] : cls[j];
      rep.second = in_base ? cls[j] : cls[0];
      rep.suffix = diff[0];
      return rep;
    }
  }
  return rep;
}

PositionalReport is_positional(const Strategy& s) { return is_positional(s, async_game(s.game)); }

std::set<Position> positions_of(const Strategy& s) {
  std::set<Position> out;
  for (const Moves& p : s.plays) out.insert(*s.game.target(s.game.root(), p));
  return out;
}

Relation rel_identity(const std::set<Elem>& s) {
  Relation r{s, s, {}};
  for (const Elem& e : s) r.pairs.insert({e, e});
  return r;
}

Relation rel_compose(const Relation& r, const Relation& s) {
  if (r.codomain != s.domain) throw GameError("rel_compose: codomain and domain differ");
  Relation out{r.domain, s.codomain, {}};
  std::map<Elem, std::vector<Elem>> from;
  for (const auto& [b, c] : s.pairs) from[b].push_back(c);
  for (const auto& [a, b] : r.pairs) {
    auto it = from.find(b);
    if (it == from.end()) continue;
    for (const Elem& c : it->second) out.pairs.insert({a, c});
  }
  return out;
}

namespace {
Elem cat(const Elem& a, const Elem& b) {
  Elem e = a;
  e.insert(e.end(), b.begin(), b.end());
  return e;
}
std::set<Elem> product_set(const std::set<Elem>& a, const std::set<Elem>& b) {
  std::set<Elem> out;
  for (const Elem& x : a)
    for (const Elem& y : b) out.insert(cat(x, y));
  return out;
}
}  // namespace

Relation rel_tensor(const Relation& r, const Relation& s) {
  Relation out{product_set(r.domain, s.domain), product_set(r.codomain, s.codomain), {}};
  for (const auto& [a, b] : r.pairs)
    for (const auto& [c, d] : s.pairs) out.pairs.insert({cat(a, c), cat(b, d)});
  return out;
}

Relation rel_trace(const Relation& r, std::size_t x_width) {
  auto split = [&](const Elem& e) {
    if (e.size() < x_width) throw GameError("rel_trace: element narrower than the traced component");
    return std::make_pair(Elem(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(x_width)),
                          Elem(e.begin() + static_cast<std::ptrdiff_t>(x_width), e.end()));
  };
  Relation out;
  for (const Elem& e : r.domain) out.domain.insert(split(e).second);
  for (const Elem& e : r.codomain) out.codomain.insert(split(e).second);
  for (const auto& [l, rr] : r.pairs) {
    auto [x, a] = split(l);
    auto [y, b] = split(rr);
    if (x == y) out.pairs.insert({a, b});
  }
  return out;
}

Relation relation_of(const Strategy& s) {
  const MorphismShape sh = shape_of(s.game);
  const std::size_t w = sh.src.width();
  Relation r;
  for (const Position& p : reachable_positions(sh.src)) r.domain.insert(p);
  for (const Position& p : reachable_positions(sh.dst)) r.codomain.insert(p);
  for (const Position& p : positions_of(s))
    r.pairs.insert({Elem(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(w)),
                    Elem(p.begin() + static_cast<std::ptrdiff_t>(w), p.end())});
  return r;
}

namespace {
std::string first_pair_difference(const Relation& a, const Relation& b, const char* la, const char* lb) {
  std::vector<std::pair<Elem, Elem>> diff;
  std::set_symmetric_difference(a.pairs.begin(), a.pairs.end(), b.pairs.begin(), b.pairs.end(),
                                std::back_inserter(diff));
  if (diff.empty()) return {};
  auto str = [](const Elem& e) {
    std::string s = "(";
    for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
    return s + ")";
  };
  return std::string(a.pairs.count(diff[0]) ? la : lb) + " only: " + str(diff[0].first) + " -> " +
         str(diff[0].second);
}
}  // namespace

FunctorialityReport positional_functoriality_check(const Strategy& sigma, const Strategy& tau) {
  if (!is_positional(sigma).positional || !is_positional(tau).positional)
    throw GameError("positional_functoriality_check: inputs must be positional");
  FunctorialityReport rep;
  const Relation rs = relation_of(sigma), rt = relation_of(tau);
  {
    const Relation lhs = relation_of(compose(sigma, tau));
    const Relation rhs = rel_compose(rs, rt);
    rep.witness = first_pair_difference(lhs, rhs, "(sigma;tau)*", "sigma*;tau*");
    rep.compose_ok = rep.witness.empty();
  }
  {
    const Strategy both = strategy_of(tensor_arrows(arrow_of(sigma), arrow_of(tau)));
    const Relation lhs = relation_of(both);
    const Relation rhs = rel_tensor(rs, rt);
    std::string w = first_pair_difference(lhs, rhs, "(sigma(x)tau)*", "sigma*(x)tau*");
    rep.tensor_ok = w.empty();
    if (rep.witness.empty()) rep.witness = w;
  }
  return rep;
}

TraceCollapseReport trace_collapse_check(const Strategy& f, const Game& x) {
  TraceCollapseReport rep;
  const MorphismShape sh = shape_of(f.game);
  const StrategyMorphism t = trace(make_morphism(sh.src, sh.dst, f), x);
  const Relation lhs = relation_of(t.strat);
  const Relation rhs = rel_trace(relation_of(f), x.width());
  rep.detail = first_pair_difference(lhs, rhs, "Tr(f)*", "Tr(f*)");
  rep.equal = rep.detail.empty();
  return rep;
}

AsyncCorpus async_corpus(std::uint64_t seed, std::size_t count) {
  Rng rng(seed);
  const Game b = bool_game(), two = game_two(), n1 = nat_game(1);
  const std::vector<Game> pool{b, two, n1, tensor(b, two), tensor(b, b), tensor(two, n1)};
  AsyncCorpus c;
  for (const std::vector<Game>& parts :
       std::vector<std::vector<Game>>{{b}, {b, b}, {b, two}, {b, b, b}, {two, n1, b}}) {
    const Game a = tensor(parts);
    c.strategies.push_back(copycat(a));
  }
  auto pick = [&] { return pool[rng.below(pool.size())]; };
  for (std::size_t i = 0; i < count; ++i) {
    const Game a = pick(), m = pick(), z = pick();
    Strategy s = random_winning_strategy(tensor(dual(a), m), rng);
    Strategy t = random_winning_strategy(tensor(dual(m), z), rng);
    c.strategies.push_back(s);
    c.strategies.push_back(t);
    c.composable.push_back({s, t});
    if (i % 3 == 0) c.composable.push_back({copycat(a), s});
  }
  return c;
}

}  // namespace cgw
