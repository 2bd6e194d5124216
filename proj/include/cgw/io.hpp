#pragma once

// Game and strategy files, and game expressions over named games.
// The grammar is documented in docs/formats.md.

#include "cgw/game.hpp"
#include "cgw/strategy.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cgw {

class IoError : public std::runtime_error {
 public:
  IoError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
  std::size_t line;
};

std::string read_file(const std::string& path);

// One or more "game NAME ... end" blocks.
std::vector<GameSpec> parse_game_file(std::string_view text);
std::string print_game_spec(const GameSpec& g);
std::string print_game_file(const std::vector<GameSpec>& games);

using GameLibrary = std::map<std::string, Game>;

// unit, two, bool, nat (N = 8).
GameLibrary builtin_games();
// Builtins plus every game of the file; later names shadow earlier ones.
GameLibrary load_game_library(const std::string& path);

// name | dual(e) | neg(e) | tensor(e, e, ...) | product(e, e) | loli(e, e)
// | bang(e, k) | nat(N)
Game parse_game_expr(std::string_view text, const GameLibrary& lib);

struct StrategySpec {
  std::string name;
  std::string games;  // game file, relative to the strategy file; may be empty
  std::string on;     // game expression
  std::vector<std::string> plays;  // move names separated by spaces, "eps" for the empty play
};

// One or more "strategy NAME ... end" blocks.
std::vector<StrategySpec> parse_strategy_file(std::string_view text);
std::string print_strategy_file(const std::vector<StrategySpec>& strategies);

struct NamedStrategy {
  std::string name;
  Strategy strategy;
};

// Plays are closed under even prefixes.
NamedStrategy resolve_strategy(const StrategySpec& spec, const GameLibrary& lib);
// Loads each block against builtins plus its own game file.
std::vector<NamedStrategy> load_strategies(const std::string& path);

// The maximal plays of s, as a block on `on`.
StrategySpec describe_strategy(const std::string& name, const std::string& games, const std::string& on,
                               const Strategy& s);

}  // namespace cgw
