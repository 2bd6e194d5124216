#include "cgw/engine.hpp"

#include <stdexcept>
#include <unordered_map>

namespace cgw {

namespace {

struct NodeState : StateBase {
  explicit NodeState(int n) : node(n) {}
  int node;
};

class TrieBehaviour final : public Behaviour {
 public:
  explicit TrieBehaviour(const Strategy& s) : game_(s.game) {
    next_.emplace_back();
    for (const Moves& p : s.plays) {
      int cur = 0;
      for (std::size_t i = 0; i + 1 < p.size(); i += 2) {
        auto it = next_[static_cast<std::size_t>(cur)].find(p[i]);
        if (it == next_[static_cast<std::size_t>(cur)].end()) {
          const int fresh = static_cast<int>(next_.size());
          next_[static_cast<std::size_t>(cur)].emplace(p[i], std::make_pair(p[i + 1], fresh));
          next_.emplace_back();
          cur = fresh;
        } else {
          if (it->second.first != p[i + 1]) throw GameError("trie_behaviour: strategy is not deterministic");
          cur = it->second.second;
        }
      }
    }
    for (std::size_t i = 0; i < next_.size(); ++i) states_.push_back(std::make_shared<NodeState>(static_cast<int>(i)));
  }

  const Game& game() const override { return game_; }
  State initial() const override { return states_[0]; }
  Response respond(const State& s, Move o) const override {
    const int n = static_cast<const NodeState&>(*s).node;
    auto it = next_[static_cast<std::size_t>(n)].find(o);
    if (it == next_[static_cast<std::size_t>(n)].end()) return Response::silent();
    return Response::reply(it->second.first, states_[static_cast<std::size_t>(it->second.second)]);
  }

 private:
  Game game_;
  std::vector<std::unordered_map<Move, std::pair<Move, int>>> next_;
  std::vector<State> states_;
};

class PairingBehaviour final : public Behaviour {
 public:
  PairingBehaviour(Game g, std::vector<Move> partner) : game_(std::move(g)), partner_(std::move(partner)) {}
  const Game& game() const override { return game_; }
  State initial() const override { return nullptr; }
  Response respond(const State&, Move o) const override {
    const Move p = partner_.at(static_cast<std::size_t>(o));
    if (p < 0) return Response::silent();
    return Response::reply(p, nullptr);
  }

 private:
  Game game_;
  std::vector<Move> partner_;
};

struct PairState : StateBase {
  PairState(State a, State b) : l(std::move(a)), r(std::move(b)) {}
  State l, r;
};

class ComposeBehaviour final : public Behaviour {
 public:
  ComposeBehaviour(const Game& a, const Game& b, const Game& c, BehaviourPtr sigma, BehaviourPtr tau)
      : game_(tensor(dual(a), c)),
        sigma_(std::move(sigma)),
        tau_(std::move(tau)),
        na_(static_cast<Move>(a.move_count())),
        nb_(static_cast<Move>(b.move_count())),
        limit_(b.max_path_length() + 2) {}

  const Game& game() const override { return game_; }
  State initial() const override { return std::make_shared<PairState>(sigma_->initial(), tau_->initial()); }

  Response respond(const State& s, Move o) const override {
    const auto& st = static_cast<const PairState&>(*s);
    State sl = st.l, sr = st.r;
    bool left = o < na_;
    Move m = left ? o : nb_ + (o - na_);
    for (std::size_t iter = 0;; ++iter) {
      if (iter > limit_) throw std::logic_error("compose: internal exchange does not terminate");
      Response r = left ? sigma_->respond(sl, m) : tau_->respond(sr, m);
      if (r.kind != Response::Kind::Reply) return r;
      if (left) {
        sl = std::move(r.next);
        if (r.move < na_) return Response::reply(r.move, std::make_shared<PairState>(sl, sr));
        m = r.move - na_;
      } else {
        sr = std::move(r.next);
        if (r.move >= nb_) return Response::reply(na_ + (r.move - nb_), std::make_shared<PairState>(sl, sr));
        m = na_ + r.move;
      }
      left = !left;
    }
  }

 private:
  Game game_;
  BehaviourPtr sigma_, tau_;
  Move na_, nb_;
  std::size_t limit_;
};

struct VecState : StateBase {
  std::vector<State> parts;
};

class RoutedBehaviour final : public Behaviour {
 public:
  RoutedBehaviour(Game g, std::vector<BehaviourPtr> parts, Routing r)
      : game_(std::move(g)), parts_(std::move(parts)), routing_(std::move(r)) {}

  const Game& game() const override { return game_; }
  State initial() const override {
    auto s = std::make_shared<VecState>();
    for (const auto& p : parts_) s->parts.push_back(p->initial());
    return s;
  }
  Response respond(const State& s, Move o) const override {
    const auto& st = static_cast<const VecState&>(*s);
    auto [k, local] = routing_.route.at(static_cast<std::size_t>(o));
    if (k < 0) return Response::silent();
    Response r = parts_[static_cast<std::size_t>(k)]->respond(st.parts[static_cast<std::size_t>(k)], local);
    if (r.kind != Response::Kind::Reply) return r;
    const Move back = routing_.back[static_cast<std::size_t>(k)].at(static_cast<std::size_t>(r.move));
    if (back < 0) throw std::logic_error("routed behaviour: reply has no image in the outer game");
    auto next = std::make_shared<VecState>(st);
    next->parts[static_cast<std::size_t>(k)] = std::move(r.next);
    return Response::reply(back, std::move(next));
  }

 private:
  Game game_;
  std::vector<BehaviourPtr> parts_;
  Routing routing_;
};

void explore(const Behaviour& b, std::size_t max_len, Moves& play, const Position& pos, const State& st,
             Materialized& out) {
  const Game& g = b.game();
  out.strategy.plays.insert(play);
  for (Move o : g.enabled(pos)) {
    if (g.polarity(o) >= 0) continue;
    Response r = b.respond(st, o);
    if (r.kind == Response::Kind::Silent) continue;
    Moves longer = play;
    longer.push_back(o);
    if (r.kind == Response::Kind::Overflow) {
      out.overflow = true;
      out.overflow_plays.push_back(longer);
      if (out.note.empty()) out.note = r.note;
      continue;
    }
    longer.push_back(r.move);
    Position next = pos;
    if (!g.step(next, o) || !g.step(next, r.move) || g.polarity(r.move) <= 0)
      throw std::logic_error("behaviour replied " + g.move_name(r.move) + " illegally after " +
                             format_moves(g, Moves(longer.begin(), longer.end() - 1)) + " in " + g.expression());
    if (longer.size() > max_len) {
      out.overflow = true;
      out.overflow_plays.push_back(longer);
      if (out.note.empty()) out.note = "play longer than " + std::to_string(max_len);
      continue;
    }
    play.push_back(o);
    play.push_back(r.move);
    explore(b, max_len, play, next, r.next, out);
    play.pop_back();
    play.pop_back();
  }
}

}  // namespace

BehaviourPtr trie_behaviour(const Strategy& s) { return std::make_shared<TrieBehaviour>(s); }

BehaviourPtr pairing_behaviour(const Game& g, std::vector<Move> partner) {
  if (partner.size() != g.move_count()) throw GameError("pairing_behaviour: partner table size mismatch");
  return std::make_shared<PairingBehaviour>(g, std::move(partner));
}

BehaviourPtr compose_behaviour(const Game& a, const Game& b, const Game& c, BehaviourPtr sigma, BehaviourPtr tau) {
  return std::make_shared<ComposeBehaviour>(a, b, c, std::move(sigma), std::move(tau));
}

BehaviourPtr routed_behaviour(const Game& game, std::vector<BehaviourPtr> parts, Routing routing) {
  return std::make_shared<RoutedBehaviour>(game, std::move(parts), std::move(routing));
}

Materialized materialize_serial(const Behaviour& b, std::size_t max_len) {
  Materialized out;
  out.strategy.game = b.game();
  Moves play;
  explore(b, max_len, play, b.game().root(), b.initial(), out);
  return out;
}

Materialized materialize(const Behaviour& b, std::size_t max_len) {
  const Game& g = b.game();
  const State init = b.initial();
  std::vector<Move> first;
  for (Move o : g.enabled(g.root()))
    if (g.polarity(o) < 0) first.push_back(o);
  std::vector<Materialized> parts(first.size());
  std::vector<std::string> errors(first.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(first.size()); ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      Materialized& part = parts[k];
      const Move o = first[k];
      Response r = b.respond(init, o);
      if (r.kind == Response::Kind::Overflow) {
        part.overflow = true;
        part.overflow_plays.push_back({o});
        part.note = r.note;
      } else if (r.kind == Response::Kind::Reply) {
        Moves play{o, r.move};
        Position next = g.root();
        if (!g.step(next, o) || !g.step(next, r.move) || g.polarity(r.move) <= 0)
          throw std::logic_error("behaviour replied " + g.move_name(r.move) + " illegally after " +
                                 g.move_name(o) + " in " + g.expression());
        if (play.size() > max_len) {
          part.overflow = true;
          part.overflow_plays.push_back(play);
          part.note = "play longer than " + std::to_string(max_len);
        } else {
          explore(b, max_len, play, next, r.next, part);
        }
      }
    } catch (const std::exception& e) {
      errors[k] = e.what();
    }
  }
  for (const auto& e : errors)
    if (!e.empty()) throw std::logic_error(e);
  Materialized out;
  out.strategy.game = g;
  out.strategy.plays.insert(Moves{});
  for (auto& p : parts) {
    out.strategy.plays.merge(p.strategy.plays);
    if (p.overflow) {
      out.overflow = true;
      if (out.note.empty()) out.note = p.note;
      for (auto& q : p.overflow_plays) out.overflow_plays.push_back(std::move(q));
    }
  }
  return out;
}

Strategy materialize_all(const Behaviour& b) {
  Materialized m = materialize(b, b.game().max_path_length());
  if (m.overflow) throw std::logic_error("materialize: resource bound hit (" + m.note + ")");
  return std::move(m.strategy);
}

namespace {

void flatten_into(const Game& g, bool flip, Move offset, std::vector<Slot>& out) {
  if (g.move_count() == 0) return;
  switch (g.kind()) {
    case GameKind::Tensor:
      flatten_into(g.child(0), flip, offset, out);
      flatten_into(g.child(1), flip, offset + static_cast<Move>(g.child(0).move_count()), out);
      return;
    case GameKind::Dual:
      flatten_into(g.child(0), !flip, offset, out);
      return;
    default:
      out.push_back({g, flip, offset});
  }
}

}  // namespace

std::vector<Slot> flatten(const Game& g) {
  std::vector<Slot> out;
  flatten_into(g, false, 0, out);
  return out;
}

std::vector<Move> slot_map(const Game& from, const Game& to, std::vector<int> perm) {
  const auto fs = flatten(from);
  const auto ts = flatten(to);
  if (fs.size() != ts.size() || from.move_count() != to.move_count())
    throw GameError("rearrangement: " + from.expression() + " and " + to.expression() + " differ in shape");
  if (perm.empty()) {
    std::vector<char> used(fs.size(), 0);
    for (const Slot& t : ts) {
      int found = -1;
      for (std::size_t i = 0; i < fs.size() && found < 0; ++i)
        if (!used[i] && same_atom(fs[i], t)) found = static_cast<int>(i);
      if (found < 0) throw GameError("rearrangement: no slot of " + from.expression() + " matches " + t.atom.expression());
      used[static_cast<std::size_t>(found)] = 1;
      perm.push_back(found);
    }
  }
  if (perm.size() != ts.size()) throw GameError("rearrangement: permutation has wrong size");
  std::vector<Move> map(from.move_count(), -1);
  for (std::size_t j = 0; j < ts.size(); ++j) {
    const Slot& f = fs.at(static_cast<std::size_t>(perm[j]));
    if (!same_atom(f, ts[j]))
      throw GameError("rearrangement: slot " + std::to_string(j) + " of " + to.expression() + " is " +
                      ts[j].atom.expression() + ", permutation gives " + f.atom.expression());
    for (Move l = 0; l < static_cast<Move>(f.atom.move_count()); ++l) {
      if (map[static_cast<std::size_t>(f.offset + l)] >= 0) throw GameError("rearrangement: permutation is not injective");
      map[static_cast<std::size_t>(f.offset + l)] = ts[j].offset + l;
    }
  }
  return map;
}

BehaviourPtr transport(const BehaviourPtr& b, const Game& to, std::vector<int> perm) {
  const std::vector<Move> map = slot_map(b->game(), to, std::move(perm));
  Routing r;
  r.route.assign(to.move_count(), {-1, -1});
  r.back.assign(1, std::vector<Move>(map.size(), -1));
  for (std::size_t m = 0; m < map.size(); ++m) {
    r.route[static_cast<std::size_t>(map[m])] = {0, static_cast<Move>(m)};
    r.back[0][m] = map[m];
  }
  return routed_behaviour(to, {b}, std::move(r));
}

BehaviourPtr rearrangement(const Game& from, const Game& to, std::vector<int> perm) {
  const std::vector<Move> map = slot_map(from, to, std::move(perm));
  Game g = tensor(dual(from), to);
  const Move nf = static_cast<Move>(from.move_count());
  std::vector<Move> partner(g.move_count(), -1);
  for (std::size_t m = 0; m < map.size(); ++m) {
    partner[m] = nf + map[m];
    partner[static_cast<std::size_t>(nf + map[m])] = static_cast<Move>(m);
  }
  return pairing_behaviour(g, std::move(partner));
}

Arrow identity_arrow(const Game& a) { return {a, a, rearrangement(a, a)}; }

Arrow compose_arrows(const Arrow& f, const Arrow& g) {
  if (!(f.dst == g.src))
    throw GameError("compose: codomain " + f.dst.expression() + " does not match domain " + g.src.expression());
  return {f.src, g.dst, compose_behaviour(f.src, f.dst, g.dst, f.b, g.b)};
}

Arrow tensor_arrows(const Arrow& f, const Arrow& g) {
  Game src = tensor(f.src, g.src);
  Game dst = tensor(f.dst, g.dst);
  Game t = tensor(dual(src), dst);
  const Move na = static_cast<Move>(f.src.move_count()), nc = static_cast<Move>(g.src.move_count());
  const Move nb = static_cast<Move>(f.dst.move_count()), nd = static_cast<Move>(g.dst.move_count());
  Routing r;
  r.route.resize(t.move_count());
  r.back = {std::vector<Move>(static_cast<std::size_t>(na + nb)), std::vector<Move>(static_cast<std::size_t>(nc + nd))};
  auto link = [&](int k, Move local, Move outer) {
    r.route[static_cast<std::size_t>(outer)] = {k, local};
    r.back[static_cast<std::size_t>(k)][static_cast<std::size_t>(local)] = outer;
  };
  for (Move m = 0; m < na; ++m) link(0, m, m);
  for (Move m = 0; m < nc; ++m) link(1, m, na + m);
  for (Move m = 0; m < nb; ++m) link(0, na + m, na + nc + m);
  for (Move m = 0; m < nd; ++m) link(1, nc + m, na + nc + nb + m);
  return {src, dst, routed_behaviour(t, {f.b, g.b}, std::move(r))};
}

Arrow symmetry_arrow(const Game& a, const Game& b) {
  const int sa = static_cast<int>(flatten(a).size());
  const int sb = static_cast<int>(flatten(b).size());
  std::vector<int> perm;
  for (int j = 0; j < sb; ++j) perm.push_back(sa + j);
  for (int j = 0; j < sa; ++j) perm.push_back(j);
  Game from = tensor(a, b), to = tensor(b, a);
  if (perm.empty()) return {from, to, rearrangement(from, to)};
  return {from, to, rearrangement(from, to, perm)};
}

Arrow arrow_of(const Strategy& s) {
  MorphismShape sh = shape_of(s.game);
  return {sh.src, sh.dst, trie_behaviour(s)};
}

Strategy strategy_of(const Arrow& f) { return materialize_all(*f.b); }

}  // namespace cgw
