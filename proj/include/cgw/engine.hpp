#pragma once

// Lazy strategies: a behaviour answers opponent moves one at a time from an
// opaque state. Composition, tensor, trace and transport are behaviours over
// behaviours, so large composites are explored only along reachable plays.

#include "cgw/game.hpp"
#include "cgw/strategy.hpp"

#include <memory>
#include <string>
#include <vector>

namespace cgw {

struct StateBase {
  virtual ~StateBase() = default;
};
using State = std::shared_ptr<const StateBase>;

struct Response {
  enum class Kind { Reply, Silent, Overflow };
  Kind kind = Kind::Silent;
  Move move = -1;
  State next;
  std::string note;

  static Response reply(Move m, State s) { return {Kind::Reply, m, std::move(s), {}}; }
  static Response silent() { return {}; }
  static Response overflow(std::string why) { return {Kind::Overflow, -1, nullptr, std::move(why)}; }
};

class Behaviour {
 public:
  virtual ~Behaviour() = default;
  virtual const Game& game() const = 0;
  virtual State initial() const = 0;
  virtual Response respond(const State& s, Move o) const = 0;
};
using BehaviourPtr = std::shared_ptr<const Behaviour>;

// A lazy morphism src -> dst; behaviour game is tensor(dual(src), dst).
struct Arrow {
  Game src;
  Game dst;
  BehaviourPtr b;
};

BehaviourPtr trie_behaviour(const Strategy& s);
// Stateless copycat-like behaviour: each opponent move m is answered by partner[m]
// (or silence when partner[m] < 0).
BehaviourPtr pairing_behaviour(const Game& g, std::vector<Move> partner);
BehaviourPtr compose_behaviour(const Game& a, const Game& b, const Game& c, BehaviourPtr sigma, BehaviourPtr tau);

// Moves of `game` are split among components. route[m] = (component, local move);
// back[k][local] = move of `game`.
struct Routing {
  std::vector<std::pair<int, Move>> route;
  std::vector<std::vector<Move>> back;
};
BehaviourPtr routed_behaviour(const Game& game, std::vector<BehaviourPtr> parts, Routing routing);

struct Materialized {
  Strategy strategy;
  bool overflow = false;
  std::vector<Moves> overflow_plays;
  std::string note;
};

// Explores every opponent move up to max_len. A reply that would go past
// max_len, or a behaviour that runs out of resources, marks overflow.
Materialized materialize(const Behaviour& b, std::size_t max_len);
Materialized materialize_serial(const Behaviour& b, std::size_t max_len);
Strategy materialize_all(const Behaviour& b);  // max_len = game's longest path; throws on overflow

// ---- layout: tensor/dual flattening and slot rearrangement ----

struct Slot {
  Game atom;      // a non-tensor, non-dual node (dual of a base is kept as flipped base)
  bool flipped;   // true when the atom occurs under an odd number of duals
  Move offset;    // first move id of the slot in the flattened game
  friend bool same_atom(const Slot& a, const Slot& b) { return a.flipped == b.flipped && a.atom == b.atom; }
};

// Slots with at least one move, in move order.
std::vector<Slot> flatten(const Game& g);

// Move bijection between two games whose flattenings agree up to the slot
// permutation perm: slot j of `to` is slot perm[j] of `from`. An empty perm
// matches slots greedily in order.
std::vector<Move> slot_map(const Game& from, const Game& to, std::vector<int> perm = {});

// Relabels a behaviour onto an isomorphic game along a slot permutation.
BehaviourPtr transport(const BehaviourPtr& b, const Game& to, std::vector<int> perm = {});

// Copycat between two games related by a slot permutation, as a behaviour on
// tensor(dual(from), to).
BehaviourPtr rearrangement(const Game& from, const Game& to, std::vector<int> perm = {});

Arrow identity_arrow(const Game& a);
Arrow compose_arrows(const Arrow& f, const Arrow& g);
Arrow tensor_arrows(const Arrow& f, const Arrow& g);
Arrow symmetry_arrow(const Game& a, const Game& b);  // a(x)b -> b(x)a
Arrow arrow_of(const Strategy& s);                    // s.game must be tensor(dual(src), dst)
Strategy strategy_of(const Arrow& f);

}  // namespace cgw
