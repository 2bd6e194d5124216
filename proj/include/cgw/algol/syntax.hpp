#pragma once

// Algol terms and value types, with a parser and printer for the
// concrete syntax described in docs/formats.md.

#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cgw::algol {

struct Type;
using TypeP = std::shared_ptr<const Type>;

struct Type {
  enum class Kind { Unit, Bool, Nat, Arrow, Prod };
  Kind kind = Kind::Unit;
  TypeP a, b;

  static TypeP unit();
  static TypeP boolean();
  static TypeP nat();
  static TypeP arrow(TypeP a, TypeP b);
  static TypeP prod(TypeP a, TypeP b);
};

bool same_type(const TypeP& x, const TypeP& y);
std::string print_type(const TypeP& t);

struct Term;
using TermP = std::shared_ptr<const Term>;

enum class Tag { Skip, Bool, Nat, Var, Lam, App, Assign, Deref, New, Zero, If, Pair, Proj, Seq };

// Field use per tag: Bool bval; Nat nval; Var/Deref name; Lam name, annot
// (may be null), a = body; App a b; Assign name, a; New name, a = init,
// b = body; Zero a; If a b c; Pair a b; Proj index (1 or 2), a; Seq a b.
struct Term {
  Tag tag = Tag::Skip;
  bool bval = false;
  unsigned nval = 0;
  std::string name;
  TypeP annot;
  int index = 0;
  TermP a, b, c;
};

TermP mk_skip();
TermP mk_bool(bool v);
TermP mk_nat(unsigned n);
TermP mk_var(std::string x);
TermP mk_lam(std::string x, TermP body, TypeP annot = nullptr);
TermP mk_app(TermP m, TermP n);
TermP mk_assign(std::string x, TermP m);
TermP mk_deref(std::string x);
TermP mk_new(std::string x, TermP init, TermP body);
TermP mk_zero(TermP m);
TermP mk_if(TermP c, TermP t, TermP e);
TermP mk_pair(TermP m, TermP n);
TermP mk_proj(int i, TermP m);
TermP mk_seq(TermP m, TermP n);

bool same_term(const TermP& x, const TermP& y);  // syntactic, annotations included

// n, b, x, skip, lambda with any body, pair with any components.
bool is_canonical(const TermP& t);

// Names occurring free, as variables or as references.
std::set<std::string> free_names(const TermP& t);
// Every name occurring in t, bound or free.
std::set<std::string> all_names(const TermP& t);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what);
  std::size_t line, column;
};

TermP parse_term(std::string_view text);
TypeP parse_type(std::string_view text);

// A store written as x := V, y := V, ... (possibly empty).
using Store = std::vector<std::pair<std::string, TermP>>;
Store parse_store(std::string_view text);

std::string print_term(const TermP& t);
std::string print_store(const Store& s);

}  // namespace cgw::algol
