#include "cgw/algol/eval.hpp"

#include <algorithm>

namespace cgw::algol {

namespace {

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  std::string s = base + "'";
  while (avoid.count(s)) s += "'";
  return s;
}

TermP with(const TermP& m, TermP a, TermP b = nullptr, TermP c = nullptr) {
  Term t = *m;
  t.a = std::move(a);
  t.b = std::move(b);
  t.c = std::move(c);
  return std::make_shared<const Term>(std::move(t));
}

TermP with_name(const TermP& m, std::string name, TermP a, TermP b = nullptr) {
  Term t = *m;
  t.name = std::move(name);
  t.a = std::move(a);
  t.b = std::move(b);
  return std::make_shared<const Term>(std::move(t));
}

}  // namespace

TermP rename_free(const TermP& m, const std::string& x, const std::string& y) {
  if (!m) return m;
  switch (m->tag) {
    case Tag::Var:
    case Tag::Deref:
      return m->name == x ? with_name(m, y, nullptr) : m;
    case Tag::Assign:
      return with_name(m, m->name == x ? y : m->name, rename_free(m->a, x, y));
    case Tag::Lam:
      return m->name == x ? m : with(m, rename_free(m->a, x, y));
    case Tag::New:
      return with(m, rename_free(m->a, x, y), m->name == x ? m->b : rename_free(m->b, x, y));
    default:
      return with(m, rename_free(m->a, x, y), rename_free(m->b, x, y), rename_free(m->c, x, y));
  }
}

TermP subst(const TermP& m, const std::string& x, const TermP& n) {
  if (!m) return m;
  switch (m->tag) {
    case Tag::Var:
      return m->name == x ? n : m;
    case Tag::Skip:
    case Tag::Bool:
    case Tag::Nat:
    case Tag::Deref:
      return m;
    case Tag::Assign:
      return with(m, subst(m->a, x, n));
    case Tag::Lam: {
      if (m->name == x) return m;
      const auto fv = free_names(n);
      if (!fv.count(m->name)) return with(m, subst(m->a, x, n));
      std::set<std::string> avoid = all_names(m->a);
      avoid.insert(fv.begin(), fv.end());
      avoid.insert(x);
      const std::string z = fresh_name(m->name, avoid);
      return with_name(m, z, subst(rename_free(m->a, m->name, z), x, n));
    }
    case Tag::New: {
      TermP init = subst(m->a, x, n);
      if (m->name == x) return with(m, init, m->b);
      const auto fv = free_names(n);
      if (!fv.count(m->name)) return with(m, init, subst(m->b, x, n));
      std::set<std::string> avoid = all_names(m->b);
      avoid.insert(fv.begin(), fv.end());
      avoid.insert(x);
      const std::string z = fresh_name(m->name, avoid);
      return with_name(m, z, init, subst(rename_free(m->b, m->name, z), x, n));
    }
    default:
      return with(m, subst(m->a, x, n), subst(m->b, x, n), subst(m->c, x, n));
  }
}

namespace {

const TermP* lookup(const Store& s, const std::string& x) {
  for (const auto& e : s)
    if (e.first == x) return &e.second;
  return nullptr;
}

void assign(Store& s, const std::string& x, TermP v) {
  for (auto& e : s)
    if (e.first == x) {
      e.second = std::move(v);
      return;
    }
  s.emplace_back(x, std::move(v));
}

class Evaluator {
 public:
  explicit Evaluator(EvalStats* stats) : stats_(stats) {}

  Config run(const TermP& m, Store s, std::size_t fuel, std::size_t depth) {
    if (fuel == 0) throw EvalError(EvalError::Kind::FuelExhausted, "fuel exhausted at " + print_term(m));
    if (stats_) {
      ++stats_->rules;
      stats_->height = std::max(stats_->height, depth + 1);
    }
    const std::size_t f = fuel - 1, d = depth + 1;
    if (is_canonical(m)) return {m, std::move(s)};
    switch (m->tag) {
      case Tag::App: {
        Config fn = run(m->a, std::move(s), f, d);
        if (fn.term->tag != Tag::Lam) stuck(m, "applying a non-function " + print_term(fn.term));
        return run(subst(fn.term->a, fn.term->name, m->b), std::move(fn.store), f, d);
      }
      case Tag::If: {
        Config c = run(m->a, std::move(s), f, d);
        if (c.term->tag != Tag::Bool) stuck(m, "condition is " + print_term(c.term));
        return run(c.term->bval ? m->b : m->c, std::move(c.store), f, d);
      }
      case Tag::Seq: {
        Config l = run(m->a, std::move(s), f, d);
        if (l.term->tag != Tag::Skip) stuck(m, "left of ';' gave " + print_term(l.term));
        Config r = run(m->b, std::move(l.store), f, d);
        if (r.term->tag != Tag::Skip) stuck(m, "right of ';' gave " + print_term(r.term));
        return r;
      }
      case Tag::Zero: {
        Config v = run(m->a, std::move(s), f, d);
        if (v.term->tag != Tag::Nat) stuck(m, "zero of " + print_term(v.term));
        return {mk_bool(v.term->nval == 0), std::move(v.store)};
      }
      case Tag::Proj: {
        Config p = run(m->a, std::move(s), f, d);
        if (p.term->tag != Tag::Pair) stuck(m, "projection of " + print_term(p.term));
        return run(m->index == 1 ? p.term->a : p.term->b, std::move(p.store), f, d);
      }
      case Tag::New: {
        Config init = run(m->a, std::move(s), f, d);
        std::string x = m->name;
        TermP body = m->b;
        if (lookup(init.store, x)) {
          std::set<std::string> avoid = all_names(body);
          for (const auto& e : init.store) avoid.insert(e.first);
          const std::string z = fresh_name(x, avoid);
          body = rename_free(body, x, z);
          x = z;
        }
        init.store.emplace_back(x, init.term);
        Config out = run(body, std::move(init.store), f, d);
        std::erase_if(out.store, [&](const auto& e) { return e.first == x; });
        return out;
      }
      case Tag::Assign: {
        Config v = run(m->a, std::move(s), f, d);
        assign(v.store, m->name, v.term);
        return {mk_skip(), std::move(v.store)};
      }
      case Tag::Deref: {
        const TermP* v = lookup(s, m->name);
        if (!v) throw EvalError(EvalError::Kind::StoreMiss, "no reference " + m->name + " in the store");
        return {*v, std::move(s)};
      }
      default:
        stuck(m, "no rule applies");
    }
  }

 private:
  [[noreturn]] static void stuck(const TermP& m, const std::string& why) {
    throw EvalError(EvalError::Kind::Stuck, "stuck at " + print_term(m) + ": " + why);
  }

  EvalStats* stats_;
};

}  // namespace

Config eval(const Config& c, std::size_t fuel, EvalStats* stats) {
  if (stats) *stats = {};
  return Evaluator(stats).run(c.term, c.store, fuel, 0);
}

TermP new_prefix(const Store& s, const TermP& m) {
  // Order so that a reference comes before every stored value naming it.
  std::vector<std::size_t> order;
  std::vector<bool> placed(s.size(), false);
  std::vector<std::set<std::string>> uses(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) uses[i] = free_names(s[i].second);
  while (order.size() < s.size()) {
    bool progress = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (placed[i]) continue;
      bool ready = true;
      for (std::size_t j = 0; j < s.size(); ++j)
        if (j != i && !placed[j] && uses[i].count(s[j].first)) ready = false;
      if (ready) {
        placed[i] = true;
        order.push_back(i);
        progress = true;
      }
    }
    if (!progress) throw EvalError(EvalError::Kind::Stuck, "stored values refer to each other cyclically");
  }
  TermP out = m;
  for (auto it = order.rbegin(); it != order.rend(); ++it) out = mk_new(s[*it].first, s[*it].second, out);
  return out;
}

}  // namespace cgw::algol
