#pragma once

// Big-step call-by-name evaluation with a store of canonical forms.

#include "cgw/algol/syntax.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cgw::algol {

class EvalError : public std::runtime_error {
 public:
  enum class Kind { StoreMiss, Stuck, FuelExhausted };
  EvalError(Kind k, const std::string& what) : std::runtime_error(what), kind(k) {}
  Kind kind;
};

struct Config {
  TermP term;
  Store store;  // insertion ordered
};

// Capture-avoiding M[N/x]; lambda and new binders are renamed when they
// would capture a free name of N.
TermP subst(const TermP& m, const std::string& x, const TermP& n);
// Renames the free occurrences of name x (variable or reference) to y.
TermP rename_free(const TermP& m, const std::string& x, const std::string& y);

struct EvalStats {
  std::size_t rules = 0;   // rule instances in the derivation
  std::size_t height = 0;  // derivation height
};

// Fuel bounds the derivation height. A new-bound name already in the store
// is renamed apart before its body runs.
Config eval(const Config& c, std::size_t fuel, EvalStats* stats = nullptr);

// new x1 := s(x1) in ... new xn := s(xn) in m, outermost first; a reference
// used by another stored value is bound outside it.
TermP new_prefix(const Store& s, const TermP& m);

}  // namespace cgw::algol
