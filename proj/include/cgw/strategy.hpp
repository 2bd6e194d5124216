#pragma once

#include "cgw/game.hpp"

#include <set>
#include <string>
#include <vector>

namespace cgw {

// Extensional strategy: a finite set of even-length plays from the root.
struct Strategy {
  Game game;
  std::set<Moves> plays;

  bool contains(const Moves& s) const { return plays.count(s) > 0; }
  friend bool operator==(const Strategy& a, const Strategy& b) { return a.game == b.game && a.plays == b.plays; }
};

Strategy bottom(const Game& g);
Strategy from_plays(const Game& g, const std::vector<Moves>& plays);  // adds even prefixes and eps

struct StrategyIssue {
  std::string clause;  // empty, path, opponent-start, alternating, even-length, prefix-closed, deterministic
  Moves play;
  std::string detail;
};

struct StrategyReport {
  std::vector<StrategyIssue> issues;
  bool ok() const { return issues.empty(); }
};

StrategyReport validate_strategy(const Strategy& s);

// Copycat on dual(a) (x) a.
Strategy copycat(const Game& a);

// Games of a morphism strategy: game = tensor(dual(src), dst).
struct MorphismShape {
  Game src;
  Game dst;
};
MorphismShape shape_of(const Game& g);

// Composition of sigma on A*(x)B with tau on B*(x)C. The default route runs the
// response engine; compose_by_interactions hides an exhaustive interaction
// enumeration and is kept as the reference.
Strategy compose(const Strategy& sigma, const Strategy& tau);
Strategy compose_by_interactions(const Strategy& sigma, const Strategy& tau);

// One interaction: move sequence over the disjoint union of the moves of
// A, B and C. Component 0 = A, 1 = B, 2 = C; local ids are the component's own.
struct Interaction {
  std::vector<std::pair<int, Move>> moves;
  Moves project_ab(const Game& ab) const;
  Moves project_bc(const Game& bc) const;
  Moves project_ac(const Game& ac) const;
  friend bool operator==(const Interaction&, const Interaction&) = default;
  friend auto operator<=>(const Interaction&, const Interaction&) = default;
};

struct InteractionSet {
  Game a, b, c;
  std::vector<Interaction> items;  // complete interactions, canonical order
};

InteractionSet interactions(const Strategy& sigma, const Strategy& tau);

// All interactions hiding to s; there is exactly one for a play of the composite.
std::vector<Interaction> witnesses(const Moves& s, const Strategy& sigma, const Strategy& tau);
// Throws GameError when s has no witness; std::logic_error when it has several.
Interaction unique_witness(const Moves& s, const Strategy& sigma, const Strategy& tau);

struct PlayedPath {
  Position source;
  Moves moves;
  Payoff payoff;
};

struct WinningReport {
  bool winning = true;
  std::vector<PlayedPath> violations;
  std::size_t paths_checked = 0;
};

// Checks kappa+ = 0 => kappa- = 0 on every path between two plays of s.
WinningReport is_winning(const Strategy& s);
WinningReport is_winning_serial(const Strategy& s);

enum class Bracketing { Player, Opponent, Both };
bool is_well_bracketed(const Game& g, const Moves& play, Bracketing mode);

// sigma on A, tau on dual(A) (x) two.
std::set<Moves> interact_two(const Strategy& sigma, const Strategy& tau);

std::string format_strategy(const Strategy& s);

}  // namespace cgw
