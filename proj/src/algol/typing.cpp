#include "cgw/algol/typing.hpp"

#include <map>
#include <memory>

namespace cgw::algol {

namespace {

struct TV;
using TVP = std::shared_ptr<TV>;

// Inference type: a concrete constructor or a variable, linked once solved.
struct TV {
  enum class K { Unit, Bool, Nat, Arrow, Prod, Var } k = K::Var;
  TVP a, b;
  TVP link;
  int id = 0;
};

TVP find(TVP t) {
  while (t->k == TV::K::Var && t->link) t = t->link;
  return t;
}

class Inference {
 public:
  TVP fresh() {
    auto t = std::make_shared<TV>();
    t->id = next_++;
    return t;
  }
  TVP con(TV::K k, TVP a = nullptr, TVP b = nullptr) {
    auto t = std::make_shared<TV>();
    t->k = k;
    t->a = std::move(a);
    t->b = std::move(b);
    return t;
  }
  TVP from(const TypeP& t) {
    switch (t->kind) {
      case Type::Kind::Unit:
        return con(TV::K::Unit);
      case Type::Kind::Bool:
        return con(TV::K::Bool);
      case Type::Kind::Nat:
        return con(TV::K::Nat);
      case Type::Kind::Arrow:
        return con(TV::K::Arrow, from(t->a), from(t->b));
      case Type::Kind::Prod:
        return con(TV::K::Prod, from(t->a), from(t->b));
    }
    return fresh();
  }
  TypeP resolve(const TVP& t0) {
    TVP t = find(t0);
    switch (t->k) {
      case TV::K::Unit:
      case TV::K::Var:
        return Type::unit();
      case TV::K::Bool:
        return Type::boolean();
      case TV::K::Nat:
        return Type::nat();
      case TV::K::Arrow:
        return Type::arrow(resolve(t->a), resolve(t->b));
      case TV::K::Prod:
        return Type::prod(resolve(t->a), resolve(t->b));
    }
    return Type::unit();
  }
  std::string show(const TVP& t0) {
    TVP t = find(t0);
    switch (t->k) {
      case TV::K::Unit:
        return "Unit";
      case TV::K::Bool:
        return "Bool";
      case TV::K::Nat:
        return "Nat";
      case TV::K::Var:
        return "'t" + std::to_string(t->id);
      case TV::K::Arrow:
        return "(" + show(t->a) + " -> " + show(t->b) + ")";
      case TV::K::Prod:
        return "(" + show(t->a) + " * " + show(t->b) + ")";
    }
    return "?";
  }
  bool occurs(const TVP& v, const TVP& t0) {
    TVP t = find(t0);
    if (t == v) return true;
    return (t->a && occurs(v, t->a)) || (t->b && occurs(v, t->b));
  }
  void unify(const TVP& x0, const TVP& y0, const std::string& where) {
    TVP x = find(x0), y = find(y0);
    if (x == y) return;
    if (x->k == TV::K::Var) {
      if (occurs(x, y)) throw TypeError(where + ": infinite type");
      x->link = y;
      return;
    }
    if (y->k == TV::K::Var) {
      unify(y, x, where);
      return;
    }
    if (x->k != y->k) throw TypeError(where + ": expected " + show(y) + ", found " + show(x));
    if (x->a) unify(x->a, y->a, where);
    if (x->b) unify(x->b, y->b, where);
  }

 private:
  int next_ = 0;
};

struct Entry {
  std::string name;
  TVP type;
  bool ref;
};

class Checker {
 public:
  explicit Checker(Inference& inf) : inf_(inf) {}

  void push(std::string name, TVP t, bool ref) { env_.push_back({std::move(name), std::move(t), ref}); }

  const Entry* lookup(const std::string& x) const {
    for (auto it = env_.rbegin(); it != env_.rend(); ++it)
      if (it->name == x) return &*it;
    return nullptr;
  }

  TVP infer(const TermP& m) {
    switch (m->tag) {
      case Tag::Skip:
        return inf_.con(TV::K::Unit);
      case Tag::Bool:
        return inf_.con(TV::K::Bool);
      case Tag::Nat:
        return inf_.con(TV::K::Nat);
      case Tag::Var: {
        const Entry* e = lookup(m->name);
        if (!e) throw TypeError("unbound identifier " + m->name);
        if (e->ref) throw TypeError("reference " + m->name + " used as a value (write !" + m->name + ")");
        return e->type;
      }
      case Tag::Deref: {
        const Entry* e = lookup(m->name);
        if (!e) throw TypeError("unbound reference " + m->name);
        if (!e->ref) throw TypeError(m->name + " is not a reference");
        return e->type;
      }
      case Tag::Assign: {
        const Entry* e = lookup(m->name);
        if (!e) throw TypeError("unbound reference " + m->name);
        if (!e->ref) throw TypeError(m->name + " is not a reference");
        TVP cell = e->type;
        inf_.unify(infer(m->a), cell, "assignment to " + m->name);
        return inf_.con(TV::K::Unit);
      }
      case Tag::Lam: {
        TVP param = m->annot ? inf_.from(m->annot) : inf_.fresh();
        params_[m.get()] = param;
        push(m->name, param, false);
        TVP body = infer(m->a);
        env_.pop_back();
        return inf_.con(TV::K::Arrow, param, body);
      }
      case Tag::App: {
        TVP f = infer(m->a);
        TVP x = infer(m->b);
        TVP r = inf_.fresh();
        inf_.unify(f, inf_.con(TV::K::Arrow, x, r), "application");
        return r;
      }
      case Tag::New: {
        TVP init = infer(m->a);
        push(m->name, init, true);
        TVP body = infer(m->b);
        env_.pop_back();
        return body;
      }
      case Tag::Zero:
        inf_.unify(infer(m->a), inf_.con(TV::K::Nat), "zero");
        return inf_.con(TV::K::Bool);
      case Tag::If: {
        inf_.unify(infer(m->a), inf_.con(TV::K::Bool), "if condition");
        TVP t = infer(m->b);
        inf_.unify(infer(m->c), t, "if branches");
        return t;
      }
      case Tag::Pair:
        return inf_.con(TV::K::Prod, infer(m->a), infer(m->b));
      case Tag::Proj: {
        TVP l = inf_.fresh(), r = inf_.fresh();
        inf_.unify(infer(m->a), inf_.con(TV::K::Prod, l, r), "projection");
        return m->index == 1 ? l : r;
      }
      case Tag::Seq:
        inf_.unify(infer(m->a), inf_.con(TV::K::Unit), "sequence (left)");
        inf_.unify(infer(m->b), inf_.con(TV::K::Unit), "sequence (right)");
        return inf_.con(TV::K::Unit);
    }
    throw TypeError("unknown term");
  }

  TermP annotate(const TermP& m) {
    if (!m) return m;
    Term t = *m;
    if (m->tag == Tag::Lam) t.annot = inf_.resolve(params_.at(m.get()));
    t.a = annotate(m->a);
    t.b = annotate(m->b);
    t.c = annotate(m->c);
    return std::make_shared<const Term>(std::move(t));
  }

 private:
  Inference& inf_;
  std::vector<Entry> env_;
  std::map<const Term*, TVP> params_;
};

// Substitution may share one node at several places; inference keys
// parameter types by node, so each occurrence gets its own copy.
TermP unshare(const TermP& m) {
  if (!m) return m;
  Term t = *m;
  t.a = unshare(m->a);
  t.b = unshare(m->b);
  t.c = unshare(m->c);
  return std::make_shared<const Term>(std::move(t));
}

void check_disjoint(const TypeEnv& gamma, const TypeEnv& delta) {
  std::set<std::string> seen;
  for (const auto* env : {&gamma, &delta})
    for (const Binding& b : *env)
      if (!seen.insert(b.name).second) throw TypeError("name " + b.name + " bound twice in the context");
}

}  // namespace

Typed typecheck(const TypeEnv& gamma, const TypeEnv& delta, const TermP& m0) {
  const TermP m = unshare(m0);
  check_disjoint(gamma, delta);
  Inference inf;
  Checker c(inf);
  for (const Binding& b : gamma) c.push(b.name, inf.from(b.type), false);
  for (const Binding& b : delta) c.push(b.name, inf.from(b.type), true);
  TVP t = c.infer(m);
  return {inf.resolve(t), c.annotate(m)};
}

TypedConfig typecheck_config(const TermP& m0, const Store& s0) {
  const TermP m = unshare(m0);
  Store s = s0;
  for (auto& e : s) e.second = unshare(e.second);
  Inference inf;
  Checker c(inf);
  std::vector<TVP> cells;
  std::set<std::string> seen;
  for (const auto& [x, v] : s) {
    if (!seen.insert(x).second) throw TypeError("reference " + x + " stored twice");
    cells.push_back(inf.fresh());
    c.push(x, cells.back(), true);
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!is_canonical(s[i].second)) throw TypeError("store value of " + s[i].first + " is not canonical");
    inf.unify(c.infer(s[i].second), cells[i], "store value of " + s[i].first);
  }
  TVP t = c.infer(m);
  TypedConfig out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    out.delta.push_back({s[i].first, inf.resolve(cells[i])});
    out.store.emplace_back(s[i].first, c.annotate(s[i].second));
  }
  out.term = {inf.resolve(t), c.annotate(m)};
  return out;
}

}  // namespace cgw::algol
