#include "cgw/exponential.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>

namespace cgw {

BangGame bang(const Game& a, unsigned k) { return {a, k, bang_game(a, k)}; }

Move bang_move(const BangGame& b, unsigned copy, Move e) {
  if (copy >= b.copies || e < 0 || static_cast<std::size_t>(e) >= b.base.move_count())
    throw GameError("bang_move: copy " + std::to_string(copy) + " move " + std::to_string(e) + " out of range");
  return static_cast<Move>(copy * b.base.move_count()) + e;
}

Arrow counit_arrow(const BangGame& b) {
  return {b.game, unit_game(), trie_behaviour(bottom(tensor(dual(b.game), unit_game())))};
}

Arrow dereliction_arrow(const BangGame& b) {
  const Game g = tensor(dual(b.game), b.base);
  const Move nb = static_cast<Move>(b.base.move_count());
  const Move ns = static_cast<Move>(b.game.move_count());
  std::vector<Move> partner(g.move_count(), -1);
  for (Move e = 0; e < nb; ++e) {
    partner[static_cast<std::size_t>(e)] = ns + e;
    partner[static_cast<std::size_t>(ns + e)] = e;
  }
  return {b.game, b.base, pairing_behaviour(g, std::move(partner))};
}

namespace {

struct CopyTable : StateBase {
  std::vector<int> source_of;  // (side * width + copy) -> source copy
  std::vector<int> target_of;  // source copy -> side * width + copy
  int next = 0;
};

class ComultBehaviour final : public Behaviour {
 public:
  ComultBehaviour(const Game& base, unsigned source, unsigned left, unsigned right, Wiring w)
      : game_(tensor(dual(bang_game(base, source)), tensor(bang_game(base, left), bang_game(base, right)))),
        nb_(static_cast<Move>(base.move_count())),
        source_(source),
        left_(left),
        right_(right),
        width_(std::max(left, right)),
        wiring_(w) {}

  const Game& game() const override { return game_; }
  State initial() const override {
    auto s = std::make_shared<CopyTable>();
    s->source_of.assign(2 * width_, -1);
    s->target_of.assign(source_, -1);
    return s;
  }

  Response respond(const State& st, Move o) const override {
    const auto& t = static_cast<const CopyTable&>(*st);
    const Move ns = static_cast<Move>(source_) * nb_;
    const Move nl = static_cast<Move>(left_) * nb_;
    if (o < ns) {
      const int sc = o / nb_;
      const int tgt = t.target_of[static_cast<std::size_t>(sc)];
      if (tgt < 0) return Response::silent();
      const int side = tgt / static_cast<int>(width_), copy = tgt % static_cast<int>(width_);
      const Move base = ns + (side == 0 ? 0 : nl);
      return Response::reply(base + copy * nb_ + o % nb_, st);
    }
    const int side = o < ns + nl ? 0 : 1;
    const Move local = o - ns - (side == 0 ? 0 : nl);
    const int copy = local / nb_;
    if (side == 1 && wiring_ == Wiring::LeftOnly) return Response::silent();
    const std::size_t key = static_cast<std::size_t>(side) * width_ + static_cast<std::size_t>(copy);
    int sc = t.source_of[key];
    State next = st;
    if (sc < 0) {
      if (t.next >= static_cast<int>(source_))
        return Response::overflow("comult: more than " + std::to_string(source_) + " source copies needed");
      auto n = std::make_shared<CopyTable>(t);
      sc = n->next++;
      n->source_of[key] = sc;
      n->target_of[static_cast<std::size_t>(sc)] = static_cast<int>(key);
      next = std::move(n);
    }
    return Response::reply(sc * nb_ + local % nb_, std::move(next));
  }

 private:
  Game game_;
  Move nb_;
  unsigned source_, left_, right_, width_;
  Wiring wiring_;
};

// Comult that leaves plays unanswered instead of overflowing.
class SilentOnExhaust final : public Behaviour {
 public:
  explicit SilentOnExhaust(BehaviourPtr b) : b_(std::move(b)) {}
  const Game& game() const override { return b_->game(); }
  State initial() const override { return b_->initial(); }
  Response respond(const State& s, Move o) const override {
    Response r = b_->respond(s, o);
    if (r.kind == Response::Kind::Overflow) return Response::silent();
    return r;
  }

 private:
  BehaviourPtr b_;
};

std::string first_difference(const Strategy& l, const Strategy& r, const char* left, const char* right) {
  std::vector<Moves> diff;
  std::set_symmetric_difference(l.plays.begin(), l.plays.end(), r.plays.begin(), r.plays.end(),
                                std::back_inserter(diff));
  if (diff.empty()) return {};
  return std::string(l.contains(diff[0]) ? left : right) + " only: " + format_moves(l.game, diff[0]);
}

LawResult compare_law(const std::string& law, const Arrow& lhs, const Arrow& rhs, std::size_t max_len) {
  LawResult res;
  res.law = law;
  Materialized l = materialize(*lhs.b, max_len);
  Materialized r = materialize(*rhs.b, max_len);
  res.plays = l.strategy.plays.size();
  if (!(l.strategy.game == r.strategy.game)) {
    res.witness = "games differ: " + l.strategy.game.expression() + " vs " + r.strategy.game.expression();
    return res;
  }
  res.witness = first_difference(l.strategy, r.strategy, "lhs", "rhs");
  if (res.witness.empty()) {
    std::sort(l.overflow_plays.begin(), l.overflow_plays.end());
    std::sort(r.overflow_plays.begin(), r.overflow_plays.end());
    if (l.overflow_plays != r.overflow_plays) res.witness = "sides differ past length " + std::to_string(max_len);
  }
  res.pass = res.witness.empty();
  return res;
}

Arrow iso(const Game& from, const Game& to) { return {from, to, rearrangement(from, to)}; }

}  // namespace

Arrow comult_arrow(const Game& base, unsigned source, unsigned left, unsigned right, Wiring wiring) {
  if (!base.is_negative()) throw GameError("comult: base game must be negative");
  auto b = std::make_shared<ComultBehaviour>(base, source, left, right, wiring);
  return {bang_game(base, source), tensor(bang_game(base, left), bang_game(base, right)), b};
}

Arrow truncate_arrow(const Game& base, unsigned from, unsigned to) {
  if (to > from) throw GameError("truncate: cannot widen " + std::to_string(from) + " copies to " + std::to_string(to));
  const Game src = bang_game(base, from), dst = bang_game(base, to);
  const Game g = tensor(dual(src), dst);
  const Move ns = static_cast<Move>(src.move_count());
  std::vector<Move> partner(g.move_count(), -1);
  for (Move m = 0; m < static_cast<Move>(dst.move_count()); ++m) {
    partner[static_cast<std::size_t>(m)] = ns + m;
    partner[static_cast<std::size_t>(ns + m)] = m;
  }
  return {src, dst, pairing_behaviour(g, std::move(partner))};
}

ComonoidStructure comonoid(const Game& a, unsigned k) {
  ComonoidStructure s;
  s.bang = bang(a, k);
  s.counit = to_morphism(counit_arrow(s.bang));
  s.dereliction = to_morphism(dereliction_arrow(s.bang));
  Arrow d = comult_arrow(a, k, k, k);
  Arrow quiet{d.src, d.dst, std::make_shared<SilentOnExhaust>(d.b)};
  s.comult = to_morphism(quiet);
  return s;
}

bool ComonoidReport::ok() const {
  return std::all_of(laws.begin(), laws.end(), [](const LawResult& l) { return l.pass; });
}

ComonoidReport comonoid_law_check(const Game& a, unsigned k, std::size_t max_len, Wiring wiring) {
  ComonoidReport rep;
  const BangGame bk = bang(a, k);
  const Game one = unit_game();
  const Arrow id = identity_arrow(bk.game);
  const Arrow eps = counit_arrow(bk);
  const Arrow d = comult_arrow(a, 2 * k, k, k, wiring);
  const Arrow restrict = truncate_arrow(a, 2 * k, k);

  {
    Arrow lhs = compose_arrows(compose_arrows(d, tensor_arrows(eps, id)), iso(tensor(one, bk.game), bk.game));
    rep.laws.push_back(compare_law("counit-left", lhs, restrict, max_len));
  }
  {
    Arrow lhs = compose_arrows(compose_arrows(d, tensor_arrows(id, eps)), iso(tensor(bk.game, one), bk.game));
    rep.laws.push_back(compare_law("counit-right", lhs, restrict, max_len));
  }
  {
    Arrow left = compose_arrows(comult_arrow(a, 3 * k, 2 * k, k, wiring), tensor_arrows(d, id));
    left = compose_arrows(left, iso(tensor(tensor(bk.game, bk.game), bk.game), tensor(bk.game, tensor(bk.game, bk.game))));
    Arrow right = compose_arrows(comult_arrow(a, 3 * k, k, 2 * k, wiring), tensor_arrows(id, d));
    rep.laws.push_back(compare_law("coassociativity", left, right, max_len));
  }
  {
    Arrow lhs = compose_arrows(d, symmetry_arrow(bk.game, bk.game));
    rep.laws.push_back(compare_law("cocommutativity", lhs, d, max_len));
  }
  {
    // dereliction after comult on either side, then the counit on the other,
    // is dereliction on the truncated source.
    Arrow der = dereliction_arrow(bk);
    Arrow lhs = compose_arrows(compose_arrows(d, tensor_arrows(eps, der)), iso(tensor(one, a), a));
    Arrow rhs = compose_arrows(restrict, der);
    rep.laws.push_back(compare_law("dereliction-counit", lhs, rhs, max_len));
  }
  return rep;
}

EmbeddingReport bang_embedding_check(const Game& a, unsigned k) {
  EmbeddingReport rep;
  const Game small = bang_game(a, k), big = bang_game(a, k + 1);
  Position pad = small.root();
  for (Coord c : a.root()) pad.push_back(c);
  if (pad != big.root()) {
    rep.ok = false;
    rep.witness = "root does not pad to the larger root";
    return rep;
  }
  for_each_path(small, small.root(), small.max_path_length(), [&](const Moves& s) {
    ++rep.paths;
    if (!rep.ok) return;
    auto t = small.target(small.root(), s);
    auto u = big.target(big.root(), s);
    Position padded = *t;
    for (Coord c : a.root()) padded.push_back(c);
    if (!u || *u != padded || !(small.payoff(small.root(), s) == big.payoff(big.root(), s))) {
      rep.ok = false;
      rep.witness = format_moves(small, s);
    }
  });
  return rep;
}

NegativityReport check_comonoid_negative(const Game& m, const StrategyMorphism& d) {
  NegativityReport rep;
  if (m.is_negative()) {
    rep.comonoid_possible = true;
    rep.reason = "negative";
    return rep;
  }
  if (!(d.src == m) || !(d.dst == tensor(m, m)))
    throw GameError("check_comonoid_negative: d must be a morphism m -> m (x) m");
  Strategy swapped = materialize_all(*compose_arrows(to_arrow(d), symmetry_arrow(m, m)).b);
  rep.witness = first_difference(swapped, d.strat, "d;symmetry", "d");
  if (!rep.witness.empty()) {
    rep.reason = "cocommutativity";
    return rep;
  }
  Arrow bot{m, unit_game(), trie_behaviour(bottom(tensor(dual(m), unit_game())))};
  Arrow lhs = compose_arrows(compose_arrows(to_arrow(d), tensor_arrows(bot, identity_arrow(m))),
                             iso(tensor(unit_game(), m), m));
  Strategy l = materialize_all(*lhs.b);
  rep.witness = first_difference(l, copycat(m), "d;(counit (x) id)", "id");
  rep.reason = "counit";
  if (rep.witness.empty()) rep.witness = "initial player move with a symmetric d";
  return rep;
}

// ---- copy routing ----

Context::Context(std::vector<Game> bases, unsigned k) : bases_(std::move(bases)), copies_(k) {
  if (k == 0) throw GameError("context: at least one copy required");
  Game acc = unit_game();
  for (std::size_t i = bases_.size(); i-- > 0;) acc = tensor(bang_game(bases_[i], k), acc);
  game_ = acc;
  Move off = 0;
  for (const Game& b : bases_) {
    offset_.push_back(off);
    off += static_cast<Move>(b.move_count() * k);
  }
}

Move Context::encode(std::size_t comp, unsigned copy, Move e) const {
  return offset_.at(comp) + static_cast<Move>(copy * bases_[comp].move_count()) + e;
}

Context::Coords Context::decode(Move m) const {
  auto it = std::upper_bound(offset_.begin(), offset_.end(), m);
  std::size_t comp = static_cast<std::size_t>(it - offset_.begin()) - 1;
  // skip components without moves that share the same offset
  while (comp + 1 < offset_.size() && offset_[comp + 1] <= m) ++comp;
  const Move local = m - offset_[comp];
  const Move nb = static_cast<Move>(bases_[comp].move_count());
  return {comp, static_cast<unsigned>(local / nb), local % nb};
}

Game FanOutput::game() const { return banged ? bang_game(thunk.dst, copies) : thunk.dst; }

namespace {

Game fold_tensor(const std::vector<Game>& gs, std::size_t from = 0) {
  if (from == gs.size()) return unit_game();
  if (from + 1 == gs.size()) return gs[from];
  return tensor(gs[from], fold_tensor(gs, from + 1));
}

struct Instance {
  std::size_t out = 0;
  unsigned copy = 0;
  State st;
  std::vector<std::vector<int>> global;  // per component: local copy -> global copy
};

struct FanState : StateBase {
  std::vector<Instance> inst;
  std::vector<int> used;                                  // per component
  std::vector<std::vector<std::pair<int, int>>> owner;    // per component: global copy -> (instance, local)
  std::vector<std::vector<int>> by_copy;                  // per output: copy -> instance
};

class FanOut final : public Behaviour {
 public:
  FanOut(Context ctx, std::vector<FanOutput> outs) : ctx_(std::move(ctx)), outs_(std::move(outs)) {
    std::vector<Game> gs;
    for (const auto& o : outs_) {
      if (!(o.thunk.src == ctx_.game()))
        throw GameError("fan_out: thunk domain " + o.thunk.src.expression() + " is not the context");
      gs.push_back(o.game());
    }
    dst_ = fold_tensor(gs);
    game_ = tensor(dual(ctx_.game()), dst_);
    Move off = static_cast<Move>(ctx_.moves());
    for (const auto& o : outs_) {
      out_offset_.push_back(off);
      off += static_cast<Move>(o.game().move_count());
    }
  }

  const Game& game() const override { return game_; }
  const Game& dst() const { return dst_; }

  State initial() const override {
    auto s = std::make_shared<FanState>();
    s->used.assign(ctx_.size(), 0);
    s->owner.resize(ctx_.size());
    for (std::size_t i = 0; i < ctx_.size(); ++i) s->owner[i].assign(ctx_.copies(), {-1, -1});
    for (const auto& o : outs_) s->by_copy.push_back(std::vector<int>(o.banged ? o.copies : 1, -1));
    return s;
  }

  Response respond(const State& s, Move o) const override {
    const auto& st = static_cast<const FanState&>(*s);
    const Move nctx = static_cast<Move>(ctx_.moves());
    int which = -1;
    Move local = -1;
    std::shared_ptr<FanState> next;
    if (o < nctx) {
      const auto c = ctx_.decode(o);
      auto [inst, l] = st.owner[c.comp][c.copy];
      if (inst < 0) return Response::silent();
      which = inst;
      local = ctx_.encode(c.comp, static_cast<unsigned>(l), c.e);
    } else {
      std::size_t j = static_cast<std::size_t>(std::upper_bound(out_offset_.begin(), out_offset_.end(), o) -
                                               out_offset_.begin()) - 1;
      while (j + 1 < out_offset_.size() && out_offset_[j + 1] <= o) ++j;
      const FanOutput& out = outs_[j];
      Move e = o - out_offset_[j];
      unsigned copy = 0;
      if (out.banged) {
        const Move nb = static_cast<Move>(out.thunk.dst.move_count());
        copy = static_cast<unsigned>(e / nb);
        e %= nb;
      }
      which = st.by_copy[j][copy];
      if (which < 0) {
        next = std::make_shared<FanState>(st);
        Instance in;
        in.out = j;
        in.copy = copy;
        in.st = out.thunk.b->initial();
        in.global.resize(ctx_.size());
        next->inst.push_back(std::move(in));
        which = static_cast<int>(next->inst.size()) - 1;
        next->by_copy[j][copy] = which;
      }
      local = nctx + e;
    }
    const FanState& cur = next ? *next : st;
    const Instance& in = cur.inst[static_cast<std::size_t>(which)];
    Response r = outs_[in.out].thunk.b->respond(in.st, local);
    if (r.kind != Response::Kind::Reply) return r;
    if (!next) next = std::make_shared<FanState>(st);
    Instance& mine = next->inst[static_cast<std::size_t>(which)];
    mine.st = std::move(r.next);
    Move reply;
    if (r.move >= nctx) {
      const FanOutput& out = outs_[mine.out];
      reply = out_offset_[mine.out] + static_cast<Move>(mine.copy * out.thunk.dst.move_count()) + (r.move - nctx);
    } else {
      const auto c = ctx_.decode(r.move);
      auto& map = mine.global[c.comp];
      if (c.copy >= map.size()) {
        int& used = next->used[c.comp];
        if (used >= static_cast<int>(ctx_.copies()))
          return Response::overflow("context component " + std::to_string(c.comp) + " needs more than " +
                                    std::to_string(ctx_.copies()) + " copies");
        map.resize(c.copy + 1, -1);
        map[c.copy] = used;
        next->owner[c.comp][static_cast<std::size_t>(used)] = {which, static_cast<int>(c.copy)};
        ++used;
      }
      reply = ctx_.encode(c.comp, static_cast<unsigned>(map[c.copy]), c.e);
    }
    return Response::reply(reply, std::move(next));
  }

 private:
  Context ctx_;
  std::vector<FanOutput> outs_;
  std::vector<Move> out_offset_;
  Game dst_, game_;
};

}  // namespace

Arrow fan_out(const Context& ctx, std::vector<FanOutput> outs) {
  auto b = std::make_shared<FanOut>(ctx, std::move(outs));
  return {ctx.game(), b->dst(), b};
}

Arrow var_thunk(const Context& ctx, std::size_t comp) {
  const Game& a = ctx.bases().at(comp);
  const Game g = tensor(dual(ctx.game()), a);
  const Move nctx = static_cast<Move>(ctx.moves());
  std::vector<Move> partner(g.move_count(), -1);
  for (Move e = 0; e < static_cast<Move>(a.move_count()); ++e) {
    const Move c = ctx.encode(comp, 0, e);
    partner[static_cast<std::size_t>(c)] = nctx + e;
    partner[static_cast<std::size_t>(nctx + e)] = c;
  }
  return {ctx.game(), a, pairing_behaviour(g, std::move(partner))};
}

Arrow constant_thunk(const Context& ctx, const Strategy& s) {
  const Game g = tensor(dual(ctx.game()), s.game);
  const Move nctx = static_cast<Move>(ctx.moves());
  Strategy lifted = bottom(g);
  for (const Moves& p : s.plays) {
    Moves q;
    for (Move m : p) q.push_back(nctx + m);
    lifted.plays.insert(q);
  }
  return {ctx.game(), s.game, trie_behaviour(lifted)};
}

}  // namespace cgw
