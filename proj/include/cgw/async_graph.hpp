#pragma once

// Labelled asynchronous games: homotopy of paths, independence, innocence,
// positionality, the positional collapse and traced relations.

#include "cgw/game.hpp"
#include "cgw/strategy.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace cgw {

struct AsyncGame {
  Game game;
  std::vector<std::string> labels;  // per move
};

// Labels default to move names.
AsyncGame async_game(const Game& g);
// Throws GameError when some path carries the same label twice.
AsyncGame async_game(const Game& g, std::vector<std::string> labels);
// First path (if any) repeating a label.
std::optional<Moves> repeated_label(const AsyncGame& g);

// Homotopy: closure of adjacent transpositions s1.m.n.s2 ~ s1.n.m.s2 where
// both sides are paths and m, n are compared by label.
bool homotopic(const AsyncGame& g, const Position& source, const Moves& s1, const Moves& s2);
std::set<Moves> homotopy_class(const AsyncGame& g, const Position& source, const Moves& s);

struct HomotopyConcatReport {
  bool ok = true;
  std::size_t checks = 0;
  std::string witness;
};
// s1 ~ s1', s2 ~ s2' with matching endpoints gives s1.s2 ~ s1'.s2', over
// all s1 from the root up to len1 and s2 from its target up to len2.
HomotopyConcatReport concat_respects_homotopy_check(const AsyncGame& g, std::size_t len1, std::size_t len2);

// Edge m and path s from the same source: every split s1.s2 of s gives a
// path s1.m.s2.
bool independent(const Game& g, const Position& source, Move m, const Moves& s);
// eps I t; s.m I t iff s I t and m I t (m read from the source of t).
bool independent(const Game& g, const Position& source, const Moves& s, const Moves& t);

// m.n and n.m are both paths from x reaching the same position.
bool commute(const Game& g, const Position& x, Move m, Move n);

struct InnocenceReport {
  enum class Verdict { Innocent, NotInnocent, NotWinning };
  Verdict verdict = Verdict::Innocent;
  std::string clause;  // backward or forward
  Moves witness;       // the play (or pair) that breaks it
  std::string detail;
  bool innocent() const { return verdict == Verdict::Innocent; }
};

// Backward: s1.m1.n1.m2.n2.s2 in sigma with the squares (m1,m2) and (n1,m2)
// gives the squares (m1,n2), (n1,n2) and s1.m2.n2.m1.n1.s2 in sigma.
// Forward: s1.m1.n1 and s1.m2.n2 in sigma with the same two squares gives
// the other two squares and s1.m1.n1.m2.n2 in sigma.
InnocenceReport is_innocent(const Strategy& s, const AsyncGame& g);
InnocenceReport is_innocent(const Strategy& s);

struct PositionalReport {
  bool positional = true;
  Moves first, second;  // homotopic plays to the same position
  Moves suffix;         // continuation of first missing after second
};
PositionalReport is_positional(const Strategy& s, const AsyncGame& g);
PositionalReport is_positional(const Strategy& s);

std::set<Position> positions_of(const Strategy& s);

// Finite relations over coordinate tuples.
using Elem = std::vector<Coord>;
struct Relation {
  std::set<Elem> domain;
  std::set<Elem> codomain;
  std::set<std::pair<Elem, Elem>> pairs;
  friend bool operator==(const Relation&, const Relation&) = default;
};

Relation rel_identity(const std::set<Elem>& s);
Relation rel_compose(const Relation& r, const Relation& s);
Relation rel_tensor(const Relation& r, const Relation& s);
// r : X x A -> X x B, where the first x_width coordinates of every element
// belong to X.
Relation rel_trace(const Relation& r, std::size_t x_width);

// The positions of a strategy on A* (x) B read as a relation A -> B.
Relation relation_of(const Strategy& s);

struct FunctorialityReport {
  bool compose_ok = false;
  bool tensor_ok = false;
  std::string witness;
  bool ok() const { return compose_ok && tensor_ok; }
};
// (sigma;tau)* = sigma*;tau* and (sigma (x) tau)* = sigma* (x) tau*.
FunctorialityReport positional_functoriality_check(const Strategy& sigma, const Strategy& tau);

// Experimental: trace of a positional strategy against rel_trace.
struct TraceCollapseReport {
  bool equal = false;
  std::string detail;
};
TraceCollapseReport trace_collapse_check(const Strategy& f, const Game& x);

struct AsyncCorpus {
  std::vector<Strategy> strategies;                       // on A* (x) B
  std::vector<std::pair<Strategy, Strategy>> composable;  // sigma : A -> B, tau : B -> C
};
AsyncCorpus async_corpus(std::uint64_t seed, std::size_t count);

}  // namespace cgw
