#pragma once

// Truncated exponential: bang(A,k) with k copies of a negative game A in
// prefix-support normal form, its comonoid structure, and copy routing.

#include "cgw/engine.hpp"
#include "cgw/game.hpp"
#include "cgw/monoidal.hpp"
#include "cgw/strategy.hpp"

#include <string>
#include <vector>

namespace cgw {

struct BangGame {
  Game base;
  unsigned copies = 0;
  Game game;
};

BangGame bang(const Game& a, unsigned k);
// Move e of copy i.
Move bang_move(const BangGame& b, unsigned copy, Move e);

// !A -> 1, the empty strategy.
Arrow counit_arrow(const BangGame& b);
// !A -> A, copycat between copy 0 and A.
Arrow dereliction_arrow(const BangGame& b);

enum class Wiring {
  Interleaved,  // every copy opened on either side gets the next free source copy
  LeftOnly      // right-hand copies are never answered (a deliberately broken comult)
};

// !A (source copies) -> !A (left copies) (x) !A (right copies). Source copies
// are handed out in the order the target copies are opened, which is the
// prefix-form normalisation of the even/odd interleaving. Running out of
// source copies is reported as overflow.
Arrow comult_arrow(const Game& base, unsigned source, unsigned left, unsigned right,
                   Wiring wiring = Wiring::Interleaved);
// !A (from copies) -> !A (to copies), copy i to copy i; identity when from == to.
Arrow truncate_arrow(const Game& base, unsigned from, unsigned to);

struct ComonoidStructure {
  BangGame bang;
  StrategyMorphism counit;
  StrategyMorphism comult;  // plays that would need more than k source copies are left unanswered
  StrategyMorphism dereliction;
};

ComonoidStructure comonoid(const Game& a, unsigned k);

struct LawResult {
  std::string law;
  bool pass = false;
  std::size_t plays = 0;
  std::string witness;
};

struct ComonoidReport {
  std::vector<LawResult> laws;
  bool ok() const;
};

// Counit laws, coassociativity up to the associator and cocommutativity up to
// the symmetry, as play-set equalities up to max_len. Source games get enough
// copies (2k or 3k) that no side runs out.
ComonoidReport comonoid_law_check(const Game& a, unsigned k, std::size_t max_len,
                                  Wiring wiring = Wiring::Interleaved);

struct EmbeddingReport {
  bool ok = true;
  std::size_t paths = 0;
  std::string witness;
};

// Every path of bang(A,k) is a path of bang(A,k+1) reaching the padded
// position, with the same payoff.
EmbeddingReport bang_embedding_check(const Game& a, unsigned k);

struct NegativityReport {
  bool comonoid_possible = false;
  std::string reason;
  std::string witness;
};

// A comonoid must be negative: when m has an initial player move, d;symmetry
// and d differ (or d fails the counit law with the empty counit).
NegativityReport check_comonoid_negative(const Game& m, const StrategyMorphism& d);

// ---- copy routing over a context of banged games ----

// Right-nested tensor of bang(base_i, k), closed by the unit.
class Context {
 public:
  Context() : Context(std::vector<Game>{}, 1) {}
  Context(std::vector<Game> bases, unsigned k);

  const Game& game() const { return game_; }
  const std::vector<Game>& bases() const { return bases_; }
  unsigned copies() const { return copies_; }
  std::size_t size() const { return bases_.size(); }
  std::size_t moves() const { return game_.move_count(); }

  Move encode(std::size_t comp, unsigned copy, Move e) const;
  struct Coords {
    std::size_t comp;
    unsigned copy;
    Move e;
  };
  Coords decode(Move m) const;

 private:
  std::vector<Game> bases_;
  unsigned copies_;
  Game game_;
  std::vector<Move> offset_;
};

// One output of a fan-out: a thunk ctx -> B, either run once (B) or once per
// opened copy of bang(B, copies).
struct FanOutput {
  Arrow thunk;
  bool banged = false;
  unsigned copies = 1;
  Game game() const;
};

// ctx -> out_0 (x) (out_1 (x) ...). Every thunk instance gets its own copies
// of the context components, allocated in opening order; needing more than
// k copies of a component is reported as overflow.
Arrow fan_out(const Context& ctx, std::vector<FanOutput> outs);

// A -> A_i read off copy 0 of context component i.
Arrow var_thunk(const Context& ctx, std::size_t comp);
// Thunk ignoring the context and playing s on its codomain.
Arrow constant_thunk(const Context& ctx, const Strategy& s);

}  // namespace cgw
