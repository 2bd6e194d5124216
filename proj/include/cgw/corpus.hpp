#pragma once

// Seeded generators and the bundled test corpora.

#include "cgw/game.hpp"
#include "cgw/strategy.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace cgw {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(gen_() % n); }
  bool percent(unsigned p) { return below(100) < p; }

 private:
  std::mt19937_64 gen_;
};

// Random rooted DAG with at most max_positions positions. Edges carry either
// a question pair ((0,1) for opponent, (1,0) for player) or an answer (0,0),
// so the default payoff rule applies and the axioms hold.
Game random_game(Rng& rng, std::size_t max_positions, const std::string& name, bool negative = false,
                 std::size_t min_positions = 1);

// Deterministic strategy answering each reachable opponent move with a random
// legal player move (or not at all).
Strategy random_strategy(const Game& g, Rng& rng, unsigned reply_percent = 80);

// Random strategy that passes is_winning, falling back to bottom.
Strategy random_winning_strategy(const Game& g, Rng& rng, unsigned tries = 40);

// Small named games used across the corpora (each at most 8 positions).
std::vector<Game> small_games();

struct Triple {
  std::string id;
  Strategy f, g, h;  // f : A -> B, g : B -> C, h : C -> D
};

std::vector<Triple> category_corpus(std::uint64_t seed, std::size_t count);

}  // namespace cgw
