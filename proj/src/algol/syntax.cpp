#include "cgw/algol/syntax.hpp"

#include <cctype>
#include <functional>

namespace cgw::algol {

TypeP Type::unit() {
  static const TypeP t = std::make_shared<Type>(Type{Kind::Unit, nullptr, nullptr});
  return t;
}
TypeP Type::boolean() {
  static const TypeP t = std::make_shared<Type>(Type{Kind::Bool, nullptr, nullptr});
  return t;
}
TypeP Type::nat() {
  static const TypeP t = std::make_shared<Type>(Type{Kind::Nat, nullptr, nullptr});
  return t;
}
TypeP Type::arrow(TypeP a, TypeP b) { return std::make_shared<Type>(Type{Kind::Arrow, std::move(a), std::move(b)}); }
TypeP Type::prod(TypeP a, TypeP b) { return std::make_shared<Type>(Type{Kind::Prod, std::move(a), std::move(b)}); }

bool same_type(const TypeP& x, const TypeP& y) {
  if (!x || !y) return !x && !y;
  if (x->kind != y->kind) return false;
  if (x->kind == Type::Kind::Arrow || x->kind == Type::Kind::Prod) return same_type(x->a, y->a) && same_type(x->b, y->b);
  return true;
}

namespace {

std::string type_at(const TypeP& t, int level) {
  // level 0: arrow allowed; 1: product allowed; 2: atom
  switch (t->kind) {
    case Type::Kind::Unit:
      return "Unit";
    case Type::Kind::Bool:
      return "Bool";
    case Type::Kind::Nat:
      return "Nat";
    case Type::Kind::Arrow: {
      std::string s = type_at(t->a, 1) + " -> " + type_at(t->b, 0);
      return level > 0 ? "(" + s + ")" : s;
    }
    case Type::Kind::Prod: {
      std::string s = type_at(t->a, 2) + " * " + type_at(t->b, 1);
      return level > 1 ? "(" + s + ")" : s;
    }
  }
  return "?";
}

}  // namespace

std::string print_type(const TypeP& t) { return t ? type_at(t, 0) : "?"; }

namespace {

TermP make(Term t) { return std::make_shared<const Term>(std::move(t)); }

}  // namespace

TermP mk_skip() { return make({}); }
TermP mk_bool(bool v) {
  Term t;
  t.tag = Tag::Bool;
  t.bval = v;
  return make(std::move(t));
}
TermP mk_nat(unsigned n) {
  Term t;
  t.tag = Tag::Nat;
  t.nval = n;
  return make(std::move(t));
}
TermP mk_var(std::string x) {
  Term t;
  t.tag = Tag::Var;
  t.name = std::move(x);
  return make(std::move(t));
}
TermP mk_lam(std::string x, TermP body, TypeP annot) {
  Term t;
  t.tag = Tag::Lam;
  t.name = std::move(x);
  t.a = std::move(body);
  t.annot = std::move(annot);
  return make(std::move(t));
}
TermP mk_app(TermP m, TermP n) {
  Term t;
  t.tag = Tag::App;
  t.a = std::move(m);
  t.b = std::move(n);
  return make(std::move(t));
}
TermP mk_assign(std::string x, TermP m) {
  Term t;
  t.tag = Tag::Assign;
  t.name = std::move(x);
  t.a = std::move(m);
  return make(std::move(t));
}
TermP mk_deref(std::string x) {
  Term t;
  t.tag = Tag::Deref;
  t.name = std::move(x);
  return make(std::move(t));
}
TermP mk_new(std::string x, TermP init, TermP body) {
  Term t;
  t.tag = Tag::New;
  t.name = std::move(x);
  t.a = std::move(init);
  t.b = std::move(body);
  return make(std::move(t));
}
TermP mk_zero(TermP m) {
  Term t;
  t.tag = Tag::Zero;
  t.a = std::move(m);
  return make(std::move(t));
}
TermP mk_if(TermP c, TermP th, TermP el) {
  Term t;
  t.tag = Tag::If;
  t.a = std::move(c);
  t.b = std::move(th);
  t.c = std::move(el);
  return make(std::move(t));
}
TermP mk_pair(TermP m, TermP n) {
  Term t;
  t.tag = Tag::Pair;
  t.a = std::move(m);
  t.b = std::move(n);
  return make(std::move(t));
}
TermP mk_proj(int i, TermP m) {
  Term t;
  t.tag = Tag::Proj;
  t.index = i;
  t.a = std::move(m);
  return make(std::move(t));
}
TermP mk_seq(TermP m, TermP n) {
  Term t;
  t.tag = Tag::Seq;
  t.a = std::move(m);
  t.b = std::move(n);
  return make(std::move(t));
}

bool same_term(const TermP& x, const TermP& y) {
  if (!x || !y) return !x && !y;
  if (x == y) return true;
  return x->tag == y->tag && x->bval == y->bval && x->nval == y->nval && x->name == y->name &&
         x->index == y->index && same_type(x->annot, y->annot) && same_term(x->a, y->a) && same_term(x->b, y->b) &&
         same_term(x->c, y->c);
}

bool is_canonical(const TermP& t) {
  switch (t->tag) {
    case Tag::Skip:
    case Tag::Bool:
    case Tag::Nat:
    case Tag::Var:
    case Tag::Lam:
    case Tag::Pair:
      return true;
    default:
      return false;
  }
}

std::set<std::string> free_names(const TermP& t) {
  std::set<std::string> out;
  std::function<void(const TermP&, std::set<std::string>&)> go = [&](const TermP& m, std::set<std::string>& bound) {
    if (!m) return;
    switch (m->tag) {
      case Tag::Var:
      case Tag::Deref:
        if (!bound.count(m->name)) out.insert(m->name);
        return;
      case Tag::Assign:
        if (!bound.count(m->name)) out.insert(m->name);
        go(m->a, bound);
        return;
      case Tag::Lam: {
        const bool fresh = bound.insert(m->name).second;
        go(m->a, bound);
        if (fresh) bound.erase(m->name);
        return;
      }
      case Tag::New: {
        go(m->a, bound);
        const bool fresh = bound.insert(m->name).second;
        go(m->b, bound);
        if (fresh) bound.erase(m->name);
        return;
      }
      default:
        go(m->a, bound);
        go(m->b, bound);
        go(m->c, bound);
    }
  };
  std::set<std::string> bound;
  go(t, bound);
  return out;
}

std::set<std::string> all_names(const TermP& t) {
  std::set<std::string> out;
  std::function<void(const TermP&)> go = [&](const TermP& m) {
    if (!m) return;
    if (!m->name.empty()) out.insert(m->name);
    go(m->a);
    go(m->b);
    go(m->c);
  };
  go(t);
  return out;
}

ParseError::ParseError(std::size_t l, std::size_t c, const std::string& what)
    : std::runtime_error(std::to_string(l) + ":" + std::to_string(c) + ": " + what), line(l), column(c) {}

namespace {

enum class Tok { Ident, Number, Sym, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 1, column = 1;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < s.size() && ident_char(s[j])) ++j;
      t.kind = Tok::Ident;
      t.text = std::string(s.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      t.kind = Tok::Number;
      t.text = std::string(s.substr(i, j - i));
      advance(j - i);
    } else if (s.substr(i, 2) == ":=" || s.substr(i, 2) == "->") {
      t.kind = Tok::Sym;
      t.text = std::string(s.substr(i, 2));
      advance(2);
    } else if (std::string_view("()<>,;.\\:!*").find(c) != std::string_view::npos) {
      t.kind = Tok::Sym;
      t.text = std::string(1, c);
      advance(1);
    } else {
      throw ParseError(line, col, std::string("unexpected character '") + c + "'");
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

const std::set<std::string>& keywords() {
  static const std::set<std::string> k{"skip", "T",   "F",   "new", "in",  "if",   "then", "else",
                                       "zero", "fst", "snd", "pi1", "pi2", "Unit", "Bool", "Nat"};
  return k;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  TermP whole_term() {
    TermP t = seq();
    expect_end();
    return t;
  }

  TypeP whole_type() {
    TypeP t = type();
    expect_end();
    return t;
  }

  Store store() {
    Store out;
    if (peek().kind == Tok::End) return out;
    while (true) {
      std::string x = ident("reference name");
      expect(":=");
      out.emplace_back(x, expr());
      if (!accept(",")) break;
    }
    expect_end();
    return out;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  bool is_sym(const std::string& s, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind == Tok::Sym && t.text == s;
  }
  bool is_kw(const std::string& s) const {
    const Token& t = peek();
    return t.kind == Tok::Ident && t.text == s;
  }
  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    const std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.line, t.column, what + ", found " + found);
  }
  bool accept(const std::string& s) {
    if (is_sym(s) || is_kw(s)) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(const std::string& s) {
    if (!accept(s)) fail("expected '" + s + "'");
  }
  void expect_end() {
    if (peek().kind != Tok::End) fail("expected end of input");
  }
  std::string ident(const std::string& what) {
    const Token& t = peek();
    if (t.kind != Tok::Ident || keywords().count(t.text)) fail("expected " + what);
    ++pos_;
    return t.text;
  }

  TermP seq() {
    TermP first = expr();
    if (accept(";")) return mk_seq(first, seq());
    return first;
  }

  TermP expr() {
    if (accept("\\")) {
      std::string x = ident("parameter name");
      TypeP annot;
      if (accept(":")) annot = type();
      expect(".");
      return mk_lam(x, expr(), annot);
    }
    if (accept("new")) {
      std::string x = ident("reference name");
      expect(":=");
      TermP init = expr();
      expect("in");
      return mk_new(x, init, seq());
    }
    if (accept("if")) {
      TermP c = seq();
      expect("then");
      TermP t = seq();
      expect("else");
      return mk_if(c, t, expr());
    }
    if (peek().kind == Tok::Ident && !keywords().count(peek().text) && is_sym(":=", 1)) {
      std::string x = ident("reference name");
      expect(":=");
      return mk_assign(x, expr());
    }
    return app();
  }

  bool atom_start() const {
    const Token& t = peek();
    if (t.kind == Tok::Number) return true;
    if (t.kind == Tok::Ident) {
      if (!keywords().count(t.text)) return !is_sym(":=", 1);
      return t.text == "skip" || t.text == "T" || t.text == "F" || t.text == "zero" || t.text == "fst" ||
             t.text == "snd" || t.text == "pi1" || t.text == "pi2";
    }
    return is_sym("(") || is_sym("<") || is_sym("!");
  }

  TermP app() {
    if (!atom_start()) fail("expected a term");
    TermP t = atom();
    while (atom_start()) t = mk_app(t, atom());
    return t;
  }

  TermP atom() {
    const Token& t = peek();
    if (t.kind == Tok::Number) {
      ++pos_;
      unsigned long v = 0;
      try {
        v = std::stoul(t.text);
      } catch (const std::exception&) {
        throw ParseError(t.line, t.column, "number out of range");
      }
      if (v > 1000000) throw ParseError(t.line, t.column, "number out of range");
      return mk_nat(static_cast<unsigned>(v));
    }
    if (accept("skip")) return mk_skip();
    if (accept("T")) return mk_bool(true);
    if (accept("F")) return mk_bool(false);
    if (accept("zero")) return mk_zero(parenthesized());
    if (accept("fst") || accept("pi1")) return mk_proj(1, parenthesized());
    if (accept("snd") || accept("pi2")) return mk_proj(2, parenthesized());
    if (accept("!")) return mk_deref(ident("reference name"));
    if (accept("(")) {
      TermP inner = seq();
      expect(")");
      return inner;
    }
    if (accept("<")) {
      TermP l = seq();
      expect(",");
      TermP r = seq();
      expect(">");
      return mk_pair(l, r);
    }
    return mk_var(ident("a term"));
  }

  TermP parenthesized() {
    expect("(");
    TermP t = seq();
    expect(")");
    return t;
  }

  TypeP type() {
    TypeP l = prod_type();
    if (accept("->")) return Type::arrow(l, type());
    return l;
  }
  TypeP prod_type() {
    TypeP l = atom_type();
    if (accept("*")) return Type::prod(l, prod_type());
    return l;
  }
  TypeP atom_type() {
    if (accept("Unit")) return Type::unit();
    if (accept("Bool")) return Type::boolean();
    if (accept("Nat")) return Type::nat();
    if (accept("(")) {
      TypeP t = type();
      expect(")");
      return t;
    }
    fail("expected a type");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// Levels: 0 sequence, 1 binder-like (lambda, new, if, assign), 2 application, 3 atom.
int level_of(const TermP& t) {
  switch (t->tag) {
    case Tag::Seq:
      return 0;
    case Tag::Lam:
    case Tag::New:
    case Tag::If:
    case Tag::Assign:
      return 1;
    case Tag::App:
      return 2;
    default:
      return 3;
  }
}

// A construct whose last component is a sequence would swallow a following ';'.
bool open_tail(const TermP& t) {
  switch (t->tag) {
    case Tag::New:
      return true;
    case Tag::Lam:
    case Tag::Assign:
      return open_tail(t->a);
    case Tag::If:
      return open_tail(t->c);
    default:
      return false;
  }
}

std::string show(const TermP& t, int need);

std::string show_plain(const TermP& t) {
  switch (t->tag) {
    case Tag::Skip:
      return "skip";
    case Tag::Bool:
      return t->bval ? "T" : "F";
    case Tag::Nat:
      return std::to_string(t->nval);
    case Tag::Var:
      return t->name;
    case Tag::Deref:
      return "!" + t->name;
    case Tag::Lam:
      return "\\" + t->name + (t->annot ? ":" + print_type(t->annot) : "") + ". " + show(t->a, 1);
    case Tag::App:
      return show(t->a, 2) + " " + show(t->b, 3);
    case Tag::Assign:
      return t->name + " := " + show(t->a, 1);
    case Tag::New:
      return "new " + t->name + " := " + show(t->a, 1) + " in " + show(t->b, 0);
    case Tag::Zero:
      return "zero(" + show(t->a, 0) + ")";
    case Tag::If:
      return "if " + show(t->a, 0) + " then " + show(t->b, 0) + " else " + show(t->c, 1);
    case Tag::Pair:
      return "<" + show(t->a, 0) + ", " + show(t->b, 0) + ">";
    case Tag::Proj:
      return (t->index == 1 ? "fst(" : "snd(") + show(t->a, 0) + ")";
    case Tag::Seq: {
      std::string l = show_plain(t->a);
      if (level_of(t->a) < 1 || open_tail(t->a)) l = "(" + l + ")";
      return l + "; " + show(t->b, 0);
    }
  }
  return "?";
}

std::string show(const TermP& t, int need) {
  std::string s = show_plain(t);
  return level_of(t) < need ? "(" + s + ")" : s;
}

}  // namespace

TermP parse_term(std::string_view text) { return Parser(text).whole_term(); }
TypeP parse_type(std::string_view text) { return Parser(text).whole_type(); }
Store parse_store(std::string_view text) { return Parser(text).store(); }

std::string print_term(const TermP& t) { return show(t, 0); }

std::string print_store(const Store& s) {
  std::string out;
  for (const auto& [x, v] : s) {
    if (!out.empty()) out += ", ";
    out += x + " := " + show(v, 1);
  }
  return out;
}

}  // namespace cgw::algol
