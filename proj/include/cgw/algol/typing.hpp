#pragma once

// Syntax-directed typing with inference for unannotated lambda parameters.
// Weakening is absorbed into lookup; parameters left unconstrained get Unit.

#include "cgw/algol/syntax.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace cgw::algol {

class TypeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Binding {
  std::string name;
  TypeP type;
};
using TypeEnv = std::vector<Binding>;

struct Typed {
  TypeP type;
  TermP term;  // every lambda carries its parameter type
};

// Gamma holds variables, Delta references (the type stored in each cell).
// Binders shadow lexically. Throws TypeError on unbound names, rule
// mismatches and overlapping contexts.
Typed typecheck(const TypeEnv& gamma, const TypeEnv& delta, const TermP& m);

struct TypedConfig {
  TypeEnv delta;  // store order
  Store store;    // annotated values
  Typed term;
};

// Types a configuration: each store value may use any reference of the store.
TypedConfig typecheck_config(const TermP& m, const Store& s);

}  // namespace cgw::algol
