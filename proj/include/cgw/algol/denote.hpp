#pragma once

// Denotations of typed terms as lazy strategies. A judgment over the context
// entries e_0 (newest) ... e_{n-1} is read on the context game
// !E_0 (x) (... (x) (!E_{n-1} (x) 1)) with k copies per entry. It is kept as one
// thunk per entry (the content of a reference after the term; variables map
// to themselves) plus a thunk for the result. fan_out assembles the thunks
// into the arrow !Gamma (x) !Delta -> !Delta (x) [alpha].

#include "cgw/algol/syntax.hpp"
#include "cgw/algol/typing.hpp"
#include "cgw/engine.hpp"
#include "cgw/exponential.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace cgw::algol {

class DenoteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DenoteConfig {
  unsigned copies = 2;       // k
  std::size_t max_len = 12;  // L
  unsigned nat_max = 8;
};

Game type_game(const TypeP& t, const DenoteConfig& cfg);

struct ScopeEntry {
  std::string name;
  Game game;  // [type]
  bool ref = false;
};

class Scope {
 public:
  Scope(std::vector<ScopeEntry> entries, const DenoteConfig& cfg);  // newest first
  static Scope of(const TypeEnv& gamma, const TypeEnv& delta, const DenoteConfig& cfg);

  Scope push(ScopeEntry e) const;
  const std::vector<ScopeEntry>& entries() const { return entries_; }
  const Context& context() const { return ctx_; }
  const DenoteConfig& config() const { return cfg_; }
  std::size_t find(const std::string& x) const;  // newest binding; throws when absent

 private:
  std::vector<ScopeEntry> entries_;
  DenoteConfig cfg_;
  Context ctx_;
};

struct Den {
  std::vector<Arrow> cells;   // per scope entry, context -> [E_i]
  std::vector<bool> changed;  // false when cells[i] is the projection on entry i
  Arrow result;               // context -> [alpha]
};

// m must carry lambda annotations (as returned by typecheck).
Den denote(const Scope& scope, const TermP& m);

// The same denotation with new read without the trace: the body's thunks
// are precomposed with the initialising state and the reference dropped.
Den denote_direct(const Scope& scope, const TermP& m);

// !Gamma (x) !Delta -> !Delta (x) [alpha] for the references of the scope.
Arrow judgment_arrow(const Scope& scope, const Den& d);

// The state after a term: context -> context, entry i to copies of cell i.
Arrow state_arrow(const Scope& scope, const Den& d);

// Structure maps used by the clauses.
Arrow zero_arrow(unsigned nat_max);                  // Nat -> Bool
Arrow if_arrow(const Game& a);                       // Bool (x) (A (x) A) -> A
Arrow pair_arrow(const Game& a, const Game& b);      // A (x) B -> A & B
Arrow proj_arrow(const Game& a, const Game& b, int i);
Arrow eval_arrow(const Game& a_bang, const Game& b);  // (!A -o B) (x) !A -> B
// Context projection dropping entries: keep[j] is the entry of `from` read
// as entry j of `to`.
Arrow weaken_arrow(const Context& from, const Context& to, const std::vector<std::size_t>& keep);

struct ClosedDenotation {
  TypeP type;
  Materialized play_set;  // strategy on 1* (x) [alpha]
  Strategy on_type() const;  // the same plays on [alpha]
};

// Denotation of a closed configuration read as new s in m.
ClosedDenotation denote_closed(const TermP& m, const Store& s, const DenoteConfig& cfg);

struct CorrectionReport {
  enum class Status { Equal, Different, Overflow, EvalFailed, IllTyped };
  Status status = Status::Equal;
  TermP value;
  Store final_store;
  std::size_t plays = 0;
  bool store_observed = false;  // the final store was also compared
  std::string witness;          // a play on one side only, or the failure
  bool ok() const { return status == Status::Equal; }
};

// Evaluates (m, s) to (v, s') and compares the play sets of new s in m and
// new s' in v up to cfg.max_len. With a non-empty store it also compares
// new s in (new u := m in R) and new s' in (new u := v in R), where R pairs
// the dereferenced store, so that the final store is observed.
CorrectionReport correction_check(const TermP& m, const Store& s, const DenoteConfig& cfg, std::size_t fuel);

std::string status_name(CorrectionReport::Status s);

}  // namespace cgw::algol
