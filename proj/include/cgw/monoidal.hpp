#pragma once

#include "cgw/engine.hpp"
#include "cgw/game.hpp"
#include "cgw/strategy.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cgw {

struct StrategyMorphism {
  Game src;
  Game dst;
  Strategy strat;  // on tensor(dual(src), dst)
};

StrategyMorphism make_morphism(const Game& src, const Game& dst, Strategy s);
StrategyMorphism to_morphism(const Arrow& f);
Arrow to_arrow(const StrategyMorphism& f);

// f : A (x) B -> C  becomes  B -> A* (x) C, and back.
StrategyMorphism curry(const StrategyMorphism& f);
StrategyMorphism uncurry(const StrategyMorphism& f);  // f : B -> A* (x) C  becomes  A (x) B -> C
Arrow curry_arrow(const Arrow& f);

// f : X (x) A -> X (x) B  becomes  A -> B. The src and dst of f must be
// tensors whose left factor is x.
StrategyMorphism trace(const StrategyMorphism& f, const Game& x);
Arrow trace_arrow(const Arrow& f, const Game& x);

// Lazily defined random strategy: each reply is a hash of the play so far.
BehaviourPtr random_behaviour(const Game& g, std::uint64_t seed, unsigned reply_percent = 75);
Arrow random_arrow(const Game& src, const Game& dst, std::uint64_t seed, unsigned reply_percent = 75);

struct AxiomCheck {
  std::string id;
  std::string axiom;
  bool pass = false;
  std::size_t plays = 0;
  std::string witness;  // a play in one side only
};

struct TraceCorpusInstance {
  std::string id;
  Game x, y, a, b, c, d;
  Arrow f;    // X(x)A -> X(x)B
  Arrow f2;   // Y(x)X(x)A -> X(x)Y(x)B
  Arrow g;    // C -> D
  Arrow pre;  // C -> A  (naturality)
  Arrow post; // B -> D  (naturality)
};

std::vector<TraceCorpusInstance> trace_corpus(std::uint64_t seed, std::size_t count, std::size_t max_positions = 6);

AxiomCheck check_yanking(const std::string& id, const Game& x);
AxiomCheck check_strength(const TraceCorpusInstance& t);
AxiomCheck check_naturality(const TraceCorpusInstance& t);
AxiomCheck check_sliding(const TraceCorpusInstance& t);
AxiomCheck check_vanishing(const TraceCorpusInstance& t);

std::vector<AxiomCheck> trace_axiom_suite(const std::vector<TraceCorpusInstance>& corpus);
std::vector<AxiomCheck> trace_axiom_suite_serial(const std::vector<TraceCorpusInstance>& corpus);

struct AdjunctionReport {
  bool ok = false;
  std::size_t left_count = 0;   // strategies on A* (x) B
  std::size_t right_count = 0;  // strategies on A* (x) neg(B)
  std::string detail;
};

// All strategies up to play length max_len on g (throws past `cap`).
std::vector<Strategy> all_strategies(const Game& g, std::size_t max_len, std::size_t cap = 200000);
AdjunctionReport neg_adjunction_check(const Game& a, const Game& b, std::size_t max_len);

}  // namespace cgw
