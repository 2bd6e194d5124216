#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cgw {

using Move = std::int32_t;
using Coord = std::int32_t;
using Position = std::vector<Coord>;
using Moves = std::vector<Move>;

// Pending-question counts (kappa+, kappa-). Compared componentwise.
struct Payoff {
  std::uint32_t plus = 0;
  std::uint32_t minus = 0;

  Payoff swapped() const { return {minus, plus}; }
  bool is_zero() const { return plus == 0 && minus == 0; }
  friend Payoff operator+(Payoff a, Payoff b) { return {a.plus + b.plus, a.minus + b.minus}; }
  friend bool operator==(Payoff, Payoff) = default;
};

inline bool leq(Payoff a, Payoff b) { return a.plus <= b.plus && a.minus <= b.minus; }
std::string to_string(Payoff p);

class GameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Plain description of a finite game, as read from a game file.
struct EdgeSpec {
  std::string id;
  std::string src;
  std::string dst;
  std::string label;
  int polarity = -1;
  Payoff payoff;
};

struct PathPayoffSpec {
  std::string source;              // used only when edges is empty (eps@x)
  std::vector<std::string> edges;  // edge ids, consecutive
  Payoff payoff;
};

struct GameSpec {
  std::string name;
  std::vector<std::string> positions;
  std::string root;
  std::vector<EdgeSpec> edges;
  std::vector<PathPayoffSpec> path_payoffs;
};

enum class GameKind { Base, Dual, Tensor, Product, Neg, Bang };

namespace detail {
struct Node;
}

// Immutable handle on a finite rooted DAG game. Composite games keep
// their constructor tree; positions are flat coordinate vectors whose
// layout follows that tree, so projections are syntactic.
class Game {
 public:
  Game();  // the unit game
  explicit Game(std::shared_ptr<const detail::Node> node) : node_(std::move(node)) {}

  GameKind kind() const;
  std::size_t move_count() const;
  int polarity(Move m) const;
  const std::string& move_name(Move m) const;
  // Edge label; defaults to the edge id for base games, prefixed like names.
  std::string move_label(Move m) const;
  std::optional<Move> find_move(std::string_view name) const;

  std::size_t width() const;
  const Position& root() const;
  std::vector<Move> enabled(std::span<const Coord> pos) const;
  bool step(Position& pos, Move m) const;
  std::optional<Position> target(std::span<const Coord> src, std::span<const Move> moves) const;
  bool is_path(std::span<const Coord> src, std::span<const Move> moves) const {
    return target(src, moves).has_value();
  }
  Payoff payoff(std::span<const Coord> src, std::span<const Move> moves) const;

  bool is_negative() const;
  std::size_t max_path_length() const;
  std::string position_name(std::span<const Coord> pos) const;
  std::string expression() const;

  // Children of composite nodes (Dual/Neg/Bang: child(0); Tensor/Product: 0,1).
  const Game& child(std::size_t i) const;
  std::size_t copies() const;  // Bang only

  // For Tensor/Product: which side a move belongs to and its local id.
  std::pair<int, Move> split_move(Move m) const;
  Move join_move(int side, Move local) const;

  const detail::Node* node() const { return node_.get(); }
  const std::shared_ptr<const detail::Node>& node_ptr() const { return node_; }

  friend bool operator==(const Game& a, const Game& b);

 private:
  std::shared_ptr<const detail::Node> node_;
};

Game build_game(const GameSpec& spec);
GameSpec describe(const Game& base);  // base games only

Game unit_game();
Game game_two();
Game bool_game();
Game nat_game(unsigned n_max);

Game dual(const Game& a);
Game tensor(const Game& a, const Game& b);
Game tensor(const std::vector<Game>& factors);  // right-nested, unit if empty
Game neg(const Game& a);
Game product(const Game& a, const Game& b);
Game loli(const Game& a, const Game& b);
Game bang_game(const Game& base, unsigned copies);

struct Path {
  Position source;
  Moves moves;
  friend bool operator==(const Path&, const Path&) = default;
  friend auto operator<=>(const Path&, const Path&) = default;
};

// Projection of a path of a Tensor or Product game onto side 0/1.
Path project_path(const Game& g, const Path& s, int side);

std::vector<Path> enumerate_paths(const Game& g, const Position& from, std::size_t max_len);
void for_each_path(const Game& g, const Position& from, std::size_t max_len,
                   const std::function<void(const Moves&)>& fn);

// All positions reachable from the root, in BFS order.
std::vector<Position> reachable_positions(const Game& g);

enum class Axiom { Compatibility, SuffixDomination, SubAdditivity, Norm };
std::string_view axiom_name(Axiom a);

struct PayoffViolation {
  Axiom axiom;
  Position source;
  Moves first;   // s (or the single move for compatibility)
  Moves second;  // t, empty when not applicable
  std::string detail;
};

struct PayoffReport {
  std::vector<PayoffViolation> violations;
  std::size_t paths_checked = 0;
  bool ok() const { return violations.empty(); }
};

// Checks all four axioms over every path decomposition. The parallel
// variant splits the work by source position.
PayoffReport validate_payoff(const Game& g);
PayoffReport validate_payoff_serial(const Game& g);

std::string format_moves(const Game& g, std::span<const Move> moves);
Moves parse_moves(const Game& g, std::string_view text);

// Structural isomorphism of explicit graphs, including payoff on all paths.
bool isomorphic(const Game& a, const Game& b);

struct PositionHash {
  std::size_t operator()(const Position& p) const noexcept;
};
struct MovesHash {
  std::size_t operator()(const Moves& p) const noexcept { return PositionHash{}(p); }
};

}  // namespace cgw
