#include "cgw/monoidal.hpp"

#include "cgw/corpus.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cgw {

StrategyMorphism make_morphism(const Game& src, const Game& dst, Strategy s) {
  if (!(s.game == tensor(dual(src), dst)))
    throw GameError("morphism: strategy game " + s.game.expression() + " is not dual(" + src.expression() + ") (x) " +
                    dst.expression());
  return {src, dst, std::move(s)};
}

StrategyMorphism to_morphism(const Arrow& f) { return {f.src, f.dst, materialize_all(*f.b)}; }
Arrow to_arrow(const StrategyMorphism& f) { return {f.src, f.dst, trie_behaviour(f.strat)}; }

namespace {

int slots(const Game& g) { return static_cast<int>(flatten(g).size()); }

std::vector<int> iota_perm(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

void append_range(std::vector<int>& p, int from, int count) {
  for (int i = 0; i < count; ++i) p.push_back(from + i);
}

BehaviourPtr transport_identity(const BehaviourPtr& b, const Game& to) {
  const int n = slots(to);
  if (n == 0) return transport(b, to);
  return transport(b, to, iota_perm(n));
}

Arrow rearrange_arrow(const Game& from, const Game& to, const std::vector<int>& perm) {
  if (perm.empty()) return {from, to, rearrangement(from, to)};
  return {from, to, rearrangement(from, to, perm)};
}

}  // namespace

Arrow curry_arrow(const Arrow& f) {
  if (f.src.kind() != GameKind::Tensor) throw GameError("curry: domain " + f.src.expression() + " is not a tensor");
  const Game a = f.src.child(0), b = f.src.child(1), c = f.dst;
  const int sa = slots(a), sb = slots(b), sc = slots(c);
  std::vector<int> perm;
  append_range(perm, sa, sb);
  append_range(perm, 0, sa);
  append_range(perm, sa + sb, sc);
  const Game dst = tensor(dual(a), c);
  const Game to = tensor(dual(b), dst);
  return {b, dst, perm.empty() ? transport(f.b, to) : transport(f.b, to, perm)};
}

StrategyMorphism curry(const StrategyMorphism& f) { return to_morphism(curry_arrow(to_arrow(f))); }

StrategyMorphism uncurry(const StrategyMorphism& f) {
  if (f.dst.kind() != GameKind::Tensor) throw GameError("uncurry: codomain " + f.dst.expression() + " is not a tensor");
  const Game b = f.src, a = dual(f.dst.child(0)), c = f.dst.child(1);
  const int sa = slots(a), sb = slots(b), sc = slots(c);
  std::vector<int> perm;
  append_range(perm, sb, sa);
  append_range(perm, 0, sb);
  append_range(perm, sa + sb, sc);
  const Game src = tensor(a, b);
  const Game to = tensor(dual(src), c);
  BehaviourPtr moved = perm.empty() ? transport(trie_behaviour(f.strat), to) : transport(trie_behaviour(f.strat), to, perm);
  return {src, c, materialize_all(*moved)};
}

Arrow trace_arrow(const Arrow& f, const Game& x) {
  if (f.src.kind() != GameKind::Tensor || f.dst.kind() != GameKind::Tensor || !(f.src.child(0) == x) ||
      !(f.dst.child(0) == x))
    throw GameError("trace: " + f.src.expression() + " -> " + f.dst.expression() + " does not have " + x.expression() +
                    " as left factor on both sides");
  const Game a = f.src.child(1), b = f.dst.child(1);
  const int sx = slots(x), sa = slots(a), sb = slots(b);
  std::vector<int> perm;
  append_range(perm, sx + sa, sx);  // X output, seen from the dual side
  append_range(perm, 0, sx);        // X input
  append_range(perm, sx, sa);
  append_range(perm, 2 * sx + sa, sb);
  const Game loop = tensor(dual(x), x);
  const Game inner = tensor(dual(a), b);
  const Game hat_game = tensor(dual(loop), inner);
  Arrow fhat{loop, inner, perm.empty() ? transport(f.b, hat_game) : transport(f.b, hat_game, perm)};
  Arrow eta{unit_game(), loop, transport_identity(identity_arrow(x).b, tensor(unit_game(), loop))};
  Arrow closed = compose_arrows(eta, fhat);
  return {a, b, transport_identity(closed.b, inner)};
}

StrategyMorphism trace(const StrategyMorphism& f, const Game& x) { return to_morphism(trace_arrow(to_arrow(f), x)); }

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  std::uint64_t z = h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct RandomState : StateBase {
  RandomState(Position p, std::uint64_t hh) : pos(std::move(p)), h(hh) {}
  Position pos;
  std::uint64_t h;
};

class RandomBehaviour final : public Behaviour {
 public:
  RandomBehaviour(Game g, std::uint64_t seed, unsigned pct) : game_(std::move(g)), seed_(seed), pct_(pct) {}
  const Game& game() const override { return game_; }
  State initial() const override { return std::make_shared<RandomState>(game_.root(), mix(seed_, 0x5eed)); }
  Response respond(const State& s, Move o) const override {
    const auto& st = static_cast<const RandomState&>(*s);
    Position mid = st.pos;
    if (!game_.step(mid, o)) return Response::silent();
    const std::uint64_t h = mix(st.h, static_cast<std::uint64_t>(o) + 1);
    if (h % 100 >= pct_) return Response::silent();
    std::vector<Move> replies;
    for (Move p : game_.enabled(mid))
      if (game_.polarity(p) > 0) replies.push_back(p);
    if (replies.empty()) return Response::silent();
    const Move p = replies[(h >> 8) % replies.size()];
    Position next = mid;
    game_.step(next, p);
    return Response::reply(p, std::make_shared<RandomState>(std::move(next), mix(h, static_cast<std::uint64_t>(p) + 1)));
  }

 private:
  Game game_;
  std::uint64_t seed_;
  unsigned pct_;
};

AxiomCheck compare(const std::string& id, const std::string& axiom, const Arrow& lhs, const Arrow& rhs) {
  AxiomCheck c;
  c.id = id;
  c.axiom = axiom;
  const Strategy l = materialize_all(*lhs.b);
  const Strategy r = materialize_all(*rhs.b);
  c.plays = l.plays.size();
  if (!(l.game == r.game)) {
    c.witness = "games differ: " + l.game.expression() + " vs " + r.game.expression();
    return c;
  }
  std::vector<Moves> diff;
  std::set_symmetric_difference(l.plays.begin(), l.plays.end(), r.plays.begin(), r.plays.end(), std::back_inserter(diff));
  c.pass = diff.empty();
  if (!diff.empty()) c.witness = (l.contains(diff[0]) ? "lhs only: " : "rhs only: ") + format_moves(l.game, diff[0]);
  return c;
}

}  // namespace

BehaviourPtr random_behaviour(const Game& g, std::uint64_t seed, unsigned reply_percent) {
  return std::make_shared<RandomBehaviour>(g, seed, reply_percent);
}

Arrow random_arrow(const Game& src, const Game& dst, std::uint64_t seed, unsigned reply_percent) {
  return {src, dst, random_behaviour(tensor(dual(src), dst), seed, reply_percent)};
}

std::vector<TraceCorpusInstance> trace_corpus(std::uint64_t seed, std::size_t count, std::size_t max_positions) {
  Rng rng(seed);
  std::vector<TraceCorpusInstance> out;
  for (std::size_t i = 0; i < count; ++i) {
    TraceCorpusInstance t;
    t.id = "trace-" + std::to_string(i);
    const std::string tag = std::to_string(i);
    // Negative games keep the opponent able to open every component, so the
    // traced loops carry moves; every third instance mixes in arbitrary games.
    const bool negative = i % 3 != 2;
    t.x = random_game(rng, max_positions, "x" + tag, negative, 3);
    t.y = random_game(rng, max_positions, "y" + tag, negative, 3);
    t.a = random_game(rng, max_positions, "a" + tag, negative, 3);
    t.b = random_game(rng, max_positions, "b" + tag, negative, 3);
    t.c = random_game(rng, max_positions, "c" + tag, negative, 3);
    t.d = random_game(rng, max_positions, "d" + tag, negative, 3);
    const std::uint64_t s = rng.below(1u << 30);
    t.f = random_arrow(tensor(t.x, t.a), tensor(t.x, t.b), mix(s, 1), 90);
    t.f2 = random_arrow(tensor(t.y, tensor(t.x, t.a)), tensor(t.x, tensor(t.y, t.b)), mix(s, 2), 90);
    t.g = random_arrow(t.c, t.d, mix(s, 3), 90);
    t.pre = random_arrow(t.c, t.a, mix(s, 4), 90);
    t.post = random_arrow(t.b, t.d, mix(s, 5), 90);
    out.push_back(std::move(t));
  }
  return out;
}

AxiomCheck check_yanking(const std::string& id, const Game& x) {
  Arrow sym = symmetry_arrow(x, x);
  Arrow traced = trace_arrow(sym, x);
  return compare(id, "yanking", traced, identity_arrow(x));
}

AxiomCheck check_strength(const TraceCorpusInstance& t) {
  Arrow fg = tensor_arrows(t.f, t.g);
  const Game src = tensor(t.x, tensor(t.a, t.c));
  const Game dst = tensor(t.x, tensor(t.b, t.d));
  Arrow reassoc{src, dst, transport_identity(fg.b, tensor(dual(src), dst))};
  Arrow lhs = trace_arrow(reassoc, t.x);
  Arrow rhs = tensor_arrows(trace_arrow(t.f, t.x), t.g);
  return compare(t.id, "strength", lhs, rhs);
}

AxiomCheck check_naturality(const TraceCorpusInstance& t) {
  Arrow before = tensor_arrows(identity_arrow(t.x), t.pre);
  Arrow after = tensor_arrows(identity_arrow(t.x), t.post);
  Arrow lhs = trace_arrow(compose_arrows(compose_arrows(before, t.f), after), t.x);
  Arrow rhs = compose_arrows(compose_arrows(t.pre, trace_arrow(t.f, t.x)), t.post);
  return compare(t.id, "naturality", lhs, rhs);
}

AxiomCheck check_sliding(const TraceCorpusInstance& t) {
  const int sx = slots(t.x), sy = slots(t.y), sa = slots(t.a), sb = slots(t.b);
  std::vector<int> swap_b, swap_a;
  append_range(swap_b, sx, sy);
  append_range(swap_b, 0, sx);
  append_range(swap_b, sx + sy, sb);
  append_range(swap_a, sx, sy);
  append_range(swap_a, 0, sx);
  append_range(swap_a, sx + sy, sa);
  Arrow c_b = rearrange_arrow(tensor(t.x, tensor(t.y, t.b)), tensor(t.y, tensor(t.x, t.b)), swap_b);
  Arrow c_a = rearrange_arrow(tensor(t.x, tensor(t.y, t.a)), tensor(t.y, tensor(t.x, t.a)), swap_a);
  Arrow lhs = trace_arrow(trace_arrow(compose_arrows(t.f2, c_b), t.y), t.x);
  Arrow rhs = trace_arrow(trace_arrow(compose_arrows(c_a, t.f2), t.x), t.y);
  return compare(t.id, "sliding", lhs, rhs);
}

AxiomCheck check_vanishing(const TraceCorpusInstance& t) {
  // Tr over the unit is the identity operation, and Tr over X(x)Y is Tr_Y Tr_X.
  const Game u = unit_game();
  Arrow padded{tensor(u, t.c), tensor(u, t.a), transport(t.pre.b, tensor(dual(tensor(u, t.c)), tensor(u, t.a)))};
  AxiomCheck unit = compare(t.id, "vanishing", trace_arrow(padded, u), t.pre);
  if (!unit.pass) return unit;
  const int sx = slots(t.x), sy = slots(t.y), sa = slots(t.a);
  std::vector<int> swap_a;
  append_range(swap_a, sx, sy);
  append_range(swap_a, 0, sx);
  append_range(swap_a, sx + sy, sa);
  Arrow c_a = rearrange_arrow(tensor(t.x, tensor(t.y, t.a)), tensor(t.y, tensor(t.x, t.a)), swap_a);
  Arrow h = compose_arrows(c_a, t.f2);  // X(x)(Y(x)A) -> X(x)(Y(x)B)
  const Game xy = tensor(t.x, t.y);
  const Game src = tensor(xy, t.a), dst = tensor(xy, t.b);
  Arrow grouped{src, dst, transport_identity(h.b, tensor(dual(src), dst))};
  AxiomCheck pair = compare(t.id, "vanishing", trace_arrow(grouped, xy), trace_arrow(trace_arrow(h, t.x), t.y));
  pair.plays += unit.plays;
  return pair;
}

namespace {

std::vector<AxiomCheck> run_instance(const TraceCorpusInstance& t) {
  return {check_yanking(t.id, t.x), check_strength(t), check_naturality(t), check_sliding(t), check_vanishing(t)};
}

}  // namespace

std::vector<AxiomCheck> trace_axiom_suite_serial(const std::vector<TraceCorpusInstance>& corpus) {
  std::vector<AxiomCheck> out;
  for (const auto& t : corpus)
    for (auto& c : run_instance(t)) out.push_back(std::move(c));
  return out;
}

std::vector<AxiomCheck> trace_axiom_suite(const std::vector<TraceCorpusInstance>& corpus) {
  std::vector<std::vector<AxiomCheck>> parts(corpus.size());
  std::vector<std::string> errors(corpus.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(corpus.size()); ++i) {
    try {
      parts[static_cast<std::size_t>(i)] = run_instance(corpus[static_cast<std::size_t>(i)]);
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(i)] = e.what();
    }
  }
  for (const auto& e : errors)
    if (!e.empty()) throw std::logic_error(e);
  std::vector<AxiomCheck> out;
  for (auto& p : parts)
    for (auto& c : p) out.push_back(std::move(c));
  return out;
}

namespace {

using Alternatives = std::vector<std::vector<Moves>>;

Alternatives subtree(const Game& g, Moves& play, const Position& pos, std::size_t max_len, std::size_t cap) {
  Alternatives acc{{}};
  if (play.size() + 2 > max_len) return acc;
  for (Move o : g.enabled(pos)) {
    if (g.polarity(o) >= 0) continue;
    Position mid = pos;
    g.step(mid, o);
    Alternatives options{{}};
    for (Move p : g.enabled(mid)) {
      if (g.polarity(p) <= 0) continue;
      Position next = mid;
      g.step(next, p);
      play.push_back(o);
      play.push_back(p);
      for (auto& rest : subtree(g, play, next, max_len, cap)) {
        rest.push_back(play);
        options.push_back(std::move(rest));
      }
      play.pop_back();
      play.pop_back();
    }
    Alternatives product;
    for (const auto& x : acc)
      for (const auto& y : options) {
        auto z = x;
        z.insert(z.end(), y.begin(), y.end());
        product.push_back(std::move(z));
        if (product.size() > cap) throw std::length_error("all_strategies: more than " + std::to_string(cap) + " strategies");
      }
    acc = std::move(product);
  }
  return acc;
}

}  // namespace

std::vector<Strategy> all_strategies(const Game& g, std::size_t max_len, std::size_t cap) {
  Moves play;
  std::vector<Strategy> out;
  for (auto& plays : subtree(g, play, g.root(), max_len, cap)) {
    Strategy s = bottom(g);
    s.plays.insert(plays.begin(), plays.end());
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const Strategy& x, const Strategy& y) { return x.plays < y.plays; });
  return out;
}

AdjunctionReport neg_adjunction_check(const Game& a, const Game& b, std::size_t max_len) {
  if (!a.is_negative()) throw GameError("neg_adjunction_check: " + a.expression() + " is not negative");
  AdjunctionReport r;
  const Game left = tensor(dual(a), b);
  const Game right = tensor(dual(a), neg(b));
  const auto ls = all_strategies(left, max_len);
  const auto rs = all_strategies(right, max_len);
  r.left_count = ls.size();
  r.right_count = rs.size();
  if (ls.size() != rs.size()) {
    r.detail = "counts differ";
    return r;
  }
  // The bijection keeps the play set; check it lands on valid strategies both ways.
  for (std::size_t i = 0; i < ls.size(); ++i) {
    Strategy there{right, ls[i].plays};
    Strategy back{left, rs[i].plays};
    if (!validate_strategy(there).ok() || !validate_strategy(back).ok() || ls[i].plays != rs[i].plays) {
      r.detail = "strategy " + std::to_string(i) + " does not transfer";
      return r;
    }
  }
  r.ok = true;
  return r;
}

}  // namespace cgw
