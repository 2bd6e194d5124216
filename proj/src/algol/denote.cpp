#include "cgw/algol/denote.hpp"

#include "cgw/algol/eval.hpp"
#include "cgw/monoidal.hpp"

namespace cgw::algol {

Game type_game(const TypeP& t, const DenoteConfig& cfg) {
  switch (t->kind) {
    case Type::Kind::Unit:
      return unit_game();
    case Type::Kind::Bool:
      return bool_game();
    case Type::Kind::Nat:
      return nat_game(cfg.nat_max);
    case Type::Kind::Arrow:
      return loli(bang_game(type_game(t->a, cfg), cfg.copies), type_game(t->b, cfg));
    case Type::Kind::Prod:
      return product(type_game(t->a, cfg), type_game(t->b, cfg));
  }
  throw DenoteError("unknown type");
}

namespace {

std::vector<Game> bases_of(const std::vector<ScopeEntry>& es) {
  std::vector<Game> out;
  for (const auto& e : es) out.push_back(e.game);
  return out;
}

}  // namespace

Scope::Scope(std::vector<ScopeEntry> entries, const DenoteConfig& cfg)
    : entries_(std::move(entries)), cfg_(cfg), ctx_(bases_of(entries_), cfg.copies) {}

Scope Scope::of(const TypeEnv& gamma, const TypeEnv& delta, const DenoteConfig& cfg) {
  std::vector<ScopeEntry> es;
  for (const Binding& b : gamma) es.push_back({b.name, type_game(b.type, cfg), false});
  for (const Binding& b : delta) es.push_back({b.name, type_game(b.type, cfg), true});
  return Scope(std::move(es), cfg);
}

Scope Scope::push(ScopeEntry e) const {
  std::vector<ScopeEntry> es{std::move(e)};
  es.insert(es.end(), entries_.begin(), entries_.end());
  return Scope(std::move(es), cfg_);
}

std::size_t Scope::find(const std::string& x) const {
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i].name == x) return i;
  throw DenoteError("name " + x + " is not in scope");
}

namespace {

Move move_named(const Game& g, const std::string& name) {
  auto m = g.find_move(name);
  if (!m) throw DenoteError("game " + g.expression() + " has no move " + name);
  return *m;
}

class Retyped final : public Behaviour {
 public:
  Retyped(BehaviourPtr inner, Game g) : inner_(std::move(inner)), game_(std::move(g)) {
    if (inner_->game().move_count() != game_.move_count()) throw DenoteError("retype: move counts differ");
  }
  const Game& game() const override { return game_; }
  State initial() const override { return inner_->initial(); }
  Response respond(const State& s, Move o) const override { return inner_->respond(s, o); }

 private:
  BehaviourPtr inner_;
  Game game_;
};

struct IfState : StateBase {
  int phase = 0;  // 0 before the first move, 1 waiting for the condition, 2 copying
  Move first = -1;
  int branch = 0;
};

// Bool (x) (A (x) A) -> A: ask the condition, then copy the chosen branch.
class IfBehaviour final : public Behaviour {
 public:
  explicit IfBehaviour(const Game& a)
      : a_(a), game_(tensor(dual(tensor(bool_game(), tensor(a, a))), a)) {
    const Game b = bool_game();
    nb_ = static_cast<Move>(b.move_count());
    na_ = static_cast<Move>(a.move_count());
    q_ = move_named(b, "q");
    v_ = move_named(b, "V");
    f_ = move_named(b, "F");
  }
  const Game& game() const override { return game_; }
  State initial() const override { return std::make_shared<IfState>(); }
  Response respond(const State& s, Move o) const override {
    const auto& st = static_cast<const IfState&>(*s);
    const Move out = nb_ + 2 * na_;
    auto next = std::make_shared<IfState>(st);
    if (st.phase == 0) {
      if (o < out) return Response::silent();
      next->phase = 1;
      next->first = o - out;
      return Response::reply(q_, next);
    }
    if (st.phase == 1) {
      if (o != v_ && o != f_) return Response::silent();
      next->phase = 2;
      next->branch = o == v_ ? 0 : 1;
      return Response::reply(nb_ + next->branch * na_ + st.first, next);
    }
    const Move base = nb_ + st.branch * na_;
    if (o >= out) return Response::reply(base + (o - out), s);
    if (o >= base && o < base + na_) return Response::reply(out + (o - base), s);
    return Response::silent();
  }

 private:
  Game a_, game_;
  Move nb_ = 0, na_ = 0, q_ = 0, v_ = 0, f_ = 0;
};

Arrow pairing_arrow(const Game& src, const Game& dst, const std::vector<std::pair<Move, Move>>& links) {
  const Game g = tensor(dual(src), dst);
  std::vector<Move> partner(g.move_count(), -1);
  for (auto [x, y] : links) {
    partner[static_cast<std::size_t>(x)] = y;
    partner[static_cast<std::size_t>(y)] = x;
  }
  return {src, dst, pairing_behaviour(g, std::move(partner))};
}

Strategy constant_strategy(const TermP& m, const DenoteConfig& cfg) {
  switch (m->tag) {
    case Tag::Skip:
      return bottom(unit_game());
    case Tag::Bool: {
      const Game b = bool_game();
      return from_plays(b, {Moves{move_named(b, "q"), move_named(b, m->bval ? "V" : "F")}});
    }
    case Tag::Nat: {
      if (m->nval > cfg.nat_max)
        throw DenoteError("literal " + std::to_string(m->nval) + " exceeds the Nat bound " + std::to_string(cfg.nat_max));
      const Game n = nat_game(cfg.nat_max);
      return from_plays(n, {Moves{move_named(n, "q"), move_named(n, std::to_string(m->nval))}});
    }
    default:
      throw DenoteError("not a constant");
  }
}

Arrow unit_thunk(const Context& ctx) { return constant_thunk(ctx, bottom(unit_game())); }

Den identity_den(const Scope& scope, Arrow result) {
  Den d;
  for (std::size_t i = 0; i < scope.entries().size(); ++i) d.cells.push_back(var_thunk(scope.context(), i));
  d.changed.assign(scope.entries().size(), false);
  d.result = std::move(result);
  return d;
}

class Denoter {
 public:
  explicit Denoter(bool traced) : traced_(traced) {}

  Den run(const Scope& scope, const TermP& m) {
    const Context& ctx = scope.context();
    const DenoteConfig& cfg = scope.config();
    switch (m->tag) {
      case Tag::Skip:
      case Tag::Bool:
      case Tag::Nat:
        return identity_den(scope, constant_thunk(ctx, constant_strategy(m, cfg)));
      case Tag::Var:
      case Tag::Deref: {
        const std::size_t i = scope.find(m->name);
        if (scope.entries()[i].ref != (m->tag == Tag::Deref))
          throw DenoteError(m->name + (m->tag == Tag::Deref ? " is not a reference" : " is a reference"));
        return identity_den(scope, var_thunk(ctx, i));
      }
      case Tag::Assign: {
        const std::size_t i = scope.find(m->name);
        Den d = run(scope, m->a);
        d.cells[i] = d.result;
        d.changed[i] = true;
        d.result = unit_thunk(ctx);
        return d;
      }
      case Tag::Seq:
        return bind(scope, "", run(scope, m->a), m->b);
      case Tag::New:
        return bind(scope, m->name, run(scope, m->a), m->b);
      case Tag::Zero: {
        Den d = run(scope, m->a);
        d.result = compose_arrows(d.result, zero_arrow(cfg.nat_max));
        return d;
      }
      case Tag::If:
        return branch(scope, m);
      case Tag::Pair: {
        Den l = run(scope, m->a);
        Den r = run(scope, m->b);
        Arrow both = fan_out(ctx, {{l.result, false, 1}, {r.result, false, 1}});
        return identity_den(scope, compose_arrows(both, pair_arrow(l.result.dst, r.result.dst)));
      }
      case Tag::Proj: {
        Den d = run(scope, m->a);
        const Game& p = d.result.dst;
        if (p.kind() != GameKind::Product) throw DenoteError("projection of a non-product");
        d.result = compose_arrows(d.result, proj_arrow(p.child(0), p.child(1), m->index));
        return d;
      }
      case Tag::Lam: {
        if (!m->annot) throw DenoteError("lambda " + m->name + " carries no parameter type");
        const Game param = type_game(m->annot, cfg);
        Den body = run(scope.push({m->name, param, false}), m->a);
        Arrow cur = curry_arrow(body.result);
        const Game fn = loli(bang_game(param, cfg.copies), body.result.dst);
        auto b = std::make_shared<Retyped>(cur.b, tensor(dual(ctx.game()), fn));
        return identity_den(scope, Arrow{ctx.game(), fn, b});
      }
      case Tag::App: {
        Den f = run(scope, m->a);
        Den x = run(scope, m->b);
        const Game& fn = f.result.dst;
        const Game inner = fn.kind() == GameKind::Neg ? fn.child(0) : fn;
        if (inner.kind() != GameKind::Tensor) throw DenoteError("application of a non-function");
        const Game bang_a = dual(inner.child(0));
        const Game b = inner.child(1);
        Arrow arg = compose_arrows(state_arrow(scope, f), x.result);
        Arrow both = fan_out(ctx, {{f.result, false, 1}, {arg, true, static_cast<unsigned>(bang_a.copies())}});
        f.result = compose_arrows(both, eval_arrow(bang_a, b));
        return f;
      }
    }
    throw DenoteError("unknown term");
  }

 private:
  // new x := M in N, with the denotation of M already built.
  Den bind(const Scope& scope, const std::string& x, const Den& init, const TermP& body) {
    const Context& ctx = scope.context();
    const unsigned k = scope.config().copies;
    const Scope inner = scope.push({x, init.result.dst, true});
    const Context& ictx = inner.context();
    std::vector<FanOutput> outs{{init.result, true, k}};
    for (const Arrow& c : init.cells) outs.push_back({c, true, k});
    outs.push_back({unit_thunk(ctx), false, 1});
    const Arrow start = fan_out(ctx, std::move(outs));  // ctx -> ictx
    const Den n = run(inner, body);

    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < scope.entries().size(); ++i) keep.push_back(i + 1);
    const Arrow restart = compose_arrows(weaken_arrow(ictx, ctx, keep), start);  // ictx -> ictx
    const Game bang_x = bang_game(init.result.dst, k);

    auto close = [&](const Arrow& out) {
      if (!traced_) return compose_arrows(start, out);
      Arrow loop = fan_out(ictx, {{compose_arrows(restart, n.cells[0]), true, k}, {compose_arrows(restart, out), false, 1}});
      return trace_arrow(loop, bang_x);
    };

    Den d;
    for (std::size_t i = 0; i < scope.entries().size(); ++i) {
      const bool changed = init.changed[i] || n.changed[i + 1];
      d.changed.push_back(changed);
      d.cells.push_back(changed ? close(n.cells[i + 1]) : var_thunk(ctx, i));
    }
    d.result = close(n.result);
    return d;
  }

  Den branch(const Scope& scope, const TermP& m) {
    const Context& ctx = scope.context();
    Den c = run(scope, m->a);
    Den t = run(scope, m->b);
    Den e = run(scope, m->c);
    const Arrow after = state_arrow(scope, c);
    auto choose = [&](const Arrow& a, const Arrow& b) {
      Arrow all = fan_out(ctx, {{c.result, false, 1}, {compose_arrows(after, a), false, 1}, {compose_arrows(after, b), false, 1}});
      return compose_arrows(all, if_arrow(a.dst));
    };
    Den d;
    for (std::size_t i = 0; i < scope.entries().size(); ++i) {
      if (!t.changed[i] && !e.changed[i]) {
        d.cells.push_back(c.cells[i]);
        d.changed.push_back(c.changed[i]);
      } else {
        d.cells.push_back(choose(t.cells[i], e.cells[i]));
        d.changed.push_back(true);
      }
    }
    d.result = choose(t.result, e.result);
    return d;
  }

  bool traced_;
};

}  // namespace

Den denote(const Scope& scope, const TermP& m) { return Denoter(true).run(scope, m); }
Den denote_direct(const Scope& scope, const TermP& m) { return Denoter(false).run(scope, m); }

Arrow state_arrow(const Scope& scope, const Den& d) {
  const Context& ctx = scope.context();
  std::vector<FanOutput> outs;
  for (const Arrow& c : d.cells) outs.push_back({c, true, ctx.copies()});
  outs.push_back({unit_thunk(ctx), false, 1});
  return fan_out(ctx, std::move(outs));
}

Arrow judgment_arrow(const Scope& scope, const Den& d) {
  const Context& ctx = scope.context();
  std::vector<FanOutput> outs;
  for (std::size_t i = 0; i < d.cells.size(); ++i)
    if (scope.entries()[i].ref) outs.push_back({d.cells[i], true, ctx.copies()});
  outs.push_back({d.result, false, 1});
  return fan_out(ctx, std::move(outs));
}

Arrow zero_arrow(unsigned nat_max) {
  const Game n = nat_game(nat_max);
  const Game b = bool_game();
  const Game g = tensor(dual(n), b);
  const Move nn = static_cast<Move>(n.move_count());
  const Move qb = nn + move_named(b, "q"), vb = nn + move_named(b, "V"), fb = nn + move_named(b, "F");
  const Move qn = move_named(n, "q");
  std::vector<Moves> plays;
  for (unsigned v = 0; v <= nat_max; ++v)
    plays.push_back({qb, qn, move_named(n, std::to_string(v)), v == 0 ? vb : fb});
  return {n, b, trie_behaviour(from_plays(g, plays))};
}

Arrow if_arrow(const Game& a) {
  return {tensor(bool_game(), tensor(a, a)), a, std::make_shared<IfBehaviour>(a)};
}

Arrow pair_arrow(const Game& a, const Game& b) {
  const Game src = tensor(a, b);
  const Game dst = product(a, b);
  const Move n = static_cast<Move>(src.move_count());
  std::vector<std::pair<Move, Move>> links;
  for (Move e = 0; e < n; ++e) links.emplace_back(e, n + e);
  return pairing_arrow(src, dst, links);
}

Arrow proj_arrow(const Game& a, const Game& b, int i) {
  if (i != 1 && i != 2) throw DenoteError("projection index must be 1 or 2");
  const Game src = product(a, b);
  const Game& dst = i == 1 ? a : b;
  const Move n = static_cast<Move>(src.move_count());
  const Move off = i == 1 ? 0 : static_cast<Move>(a.move_count());
  std::vector<std::pair<Move, Move>> links;
  for (Move e = 0; e < static_cast<Move>(dst.move_count()); ++e) links.emplace_back(off + e, n + e);
  return pairing_arrow(src, dst, links);
}

Arrow eval_arrow(const Game& a_bang, const Game& b) {
  const Game fn = loli(a_bang, b);
  const Game src = tensor(fn, a_bang);
  const Move na = static_cast<Move>(a_bang.move_count()), nb = static_cast<Move>(b.move_count());
  const Move nf = static_cast<Move>(fn.move_count());
  std::vector<std::pair<Move, Move>> links;
  for (Move e = 0; e < na; ++e) links.emplace_back(e, nf + e);
  for (Move e = 0; e < nb; ++e) links.emplace_back(na + e, nf + na + e);
  return pairing_arrow(src, b, links);
}

Arrow weaken_arrow(const Context& from, const Context& to, const std::vector<std::size_t>& keep) {
  if (keep.size() != to.size() || from.copies() != to.copies()) throw DenoteError("weaken: shapes differ");
  const Move nfrom = static_cast<Move>(from.moves());
  std::vector<std::pair<Move, Move>> links;
  for (std::size_t j = 0; j < to.size(); ++j) {
    if (!(from.bases().at(keep[j]) == to.bases()[j])) throw DenoteError("weaken: entry types differ");
    for (unsigned c = 0; c < to.copies(); ++c)
      for (Move e = 0; e < static_cast<Move>(to.bases()[j].move_count()); ++e)
        links.emplace_back(from.encode(keep[j], c, e), nfrom + to.encode(j, c, e));
  }
  return pairing_arrow(from.game(), to.game(), links);
}

Strategy ClosedDenotation::on_type() const {
  const Game& g = play_set.strategy.game;
  Strategy s;
  s.game = g.kind() == GameKind::Tensor ? g.child(1) : g;
  s.plays = play_set.strategy.plays;
  return s;
}

ClosedDenotation denote_closed(const TermP& m, const Store& s, const DenoteConfig& cfg) {
  const Typed typed = typecheck({}, {}, new_prefix(s, m));
  const Scope scope({}, cfg);
  const Den d = denote(scope, typed.term);
  return {typed.type, materialize(*d.result.b, cfg.max_len)};
}

std::string status_name(CorrectionReport::Status s) {
  switch (s) {
    case CorrectionReport::Status::Equal:
      return "equal";
    case CorrectionReport::Status::Different:
      return "different";
    case CorrectionReport::Status::Overflow:
      return "overflow";
    case CorrectionReport::Status::EvalFailed:
      return "eval-failed";
    case CorrectionReport::Status::IllTyped:
      return "ill-typed";
  }
  return "?";
}

namespace {

// <!x1, <!x2, ... !xn>>
TermP read_store(const Store& s, std::size_t from = 0) {
  if (from + 1 == s.size()) return mk_deref(s[from].first);
  return mk_pair(mk_deref(s[from].first), read_store(s, from + 1));
}

// Compares two closed denotations; false with rep filled in on a mismatch.
bool same_denotation(const TermP& before, const Store& s, const TermP& after, const Store& s2,
                     const DenoteConfig& cfg, const std::string& label, CorrectionReport& rep) {
  ClosedDenotation lhs, rhs;
  try {
    lhs = denote_closed(before, s, cfg);
    rhs = denote_closed(after, s2, cfg);
  } catch (const TypeError& e) {
    rep.status = CorrectionReport::Status::IllTyped;
    rep.witness = label + e.what();
    return false;
  }
  for (const auto* side : {&lhs, &rhs})
    if (side->play_set.overflow) {
      rep.status = CorrectionReport::Status::Overflow;
      rep.witness = label + (side == &lhs ? "before: " : "after: ") + side->play_set.note;
      return false;
    }
  const auto& a = lhs.play_set.strategy.plays;
  const auto& b = rhs.play_set.strategy.plays;
  rep.plays += a.size();
  if (a == b) return true;
  rep.status = CorrectionReport::Status::Different;
  const Game g = lhs.on_type().game;
  for (const Moves& p : a)
    if (!b.count(p)) {
      rep.witness = label + "before only: " + format_moves(g, p);
      return false;
    }
  for (const Moves& p : b)
    if (!a.count(p)) {
      rep.witness = label + "after only: " + format_moves(g, p);
      return false;
    }
  return false;
}

}  // namespace

CorrectionReport correction_check(const TermP& m, const Store& s, const DenoteConfig& cfg, std::size_t fuel) {
  CorrectionReport rep;
  TypedConfig typed;
  try {
    typed = typecheck_config(m, s);
  } catch (const TypeError& e) {
    rep.status = CorrectionReport::Status::IllTyped;
    rep.witness = e.what();
    return rep;
  }
  Config out;
  try {
    out = eval({typed.term.term, typed.store}, fuel);
  } catch (const EvalError& e) {
    rep.status = CorrectionReport::Status::EvalFailed;
    rep.witness = e.what();
    return rep;
  }
  rep.value = out.term;
  rep.final_store = out.store;
  if (!same_denotation(typed.term.term, typed.store, out.term, out.store, cfg, "", rep)) return rep;
  if (typed.store.empty()) return rep;
  std::set<std::string> avoid = all_names(typed.term.term);
  for (const auto& e : typed.store) avoid.insert(e.first);
  std::string u = "result";
  while (avoid.count(u)) u += "'";
  const TermP r = read_store(typed.store);
  rep.store_observed = true;
  same_denotation(mk_new(u, typed.term.term, r), typed.store, mk_new(u, out.term, r), out.store, cfg, "store: ", rep);
  return rep;
}

}  // namespace cgw::algol
