#include "cgw/game.hpp"

#include <algorithm>
#include <cstring>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cgw {

std::string to_string(Payoff p) {
  return "(" + std::to_string(p.plus) + "," + std::to_string(p.minus) + ")";
}

std::size_t PositionHash::operator()(const Position& p) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (Coord c : p) {
    h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(c));
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace detail {

struct BaseData {
  GameSpec spec;  // canonical: edges sorted by id
  std::string fingerprint;
  std::vector<int> src, dst;
  std::vector<Payoff> edge_payoff;
  std::vector<std::vector<Move>> out;
  std::vector<std::size_t> height;  // longest path from each position
  std::map<std::pair<int, Moves>, Payoff> overrides;
};

struct Node {
  GameKind kind = GameKind::Base;
  std::vector<Game> kids;
  unsigned copies = 0;
  std::size_t nmoves = 0;
  std::size_t width = 0;
  Position root;
  std::vector<std::int8_t> pol;
  std::vector<std::string> names;
  std::unordered_map<std::string, Move> by_name;
  bool negative = true;
  std::size_t max_len = 0;
  std::string expr;
  std::shared_ptr<const BaseData> base;
};

}  // namespace detail

using detail::Node;

namespace {

const Node& N(const Game& g) { return *g.node(); }

void enabled_into(const Node& n, const Coord* p, Move offset, std::vector<Move>& out);
bool step_at(const Node& n, Coord* p, Move m);
Payoff payoff_at(const Node& n, const Coord* src, std::span<const Move> moves);

bool is_root_slice(const Node& base, const Coord* p) {
  return std::equal(base.root.begin(), base.root.end(), p);
}

std::size_t open_copies(const Node& n, const Coord* p) {
  const Node& b = N(n.kids[0]);
  std::size_t i = 0;
  while (i < n.copies && !is_root_slice(b, p + i * b.width)) ++i;
  return i;
}

void enabled_into(const Node& n, const Coord* p, Move offset, std::vector<Move>& out) {
  switch (n.kind) {
    case GameKind::Base: {
      for (Move m : n.base->out[static_cast<std::size_t>(p[0])]) out.push_back(m + offset);
      return;
    }
    case GameKind::Dual:
      enabled_into(N(n.kids[0]), p, offset, out);
      return;
    case GameKind::Neg: {
      const Node& c = N(n.kids[0]);
      if (std::equal(c.root.begin(), c.root.end(), p)) {
        std::vector<Move> tmp;
        enabled_into(c, p, 0, tmp);
        for (Move m : tmp)
          if (c.pol[static_cast<std::size_t>(m)] < 0) out.push_back(m + offset);
      } else {
        enabled_into(c, p, offset, out);
      }
      return;
    }
    case GameKind::Tensor: {
      const Node& l = N(n.kids[0]);
      enabled_into(l, p, offset, out);
      enabled_into(N(n.kids[1]), p + l.width, offset + static_cast<Move>(l.nmoves), out);
      return;
    }
    case GameKind::Product: {
      const Node& l = N(n.kids[0]);
      const Node& r = N(n.kids[1]);
      const Move nl = static_cast<Move>(l.nmoves);
      if (p[0] == 0) {
        enabled_into(l, l.root.data(), offset, out);
        enabled_into(r, r.root.data(), offset + nl, out);
      } else if (p[0] == 1) {
        enabled_into(l, p + 1, offset, out);
      } else {
        enabled_into(r, p + 1, offset + nl, out);
      }
      return;
    }
    case GameKind::Bang: {
      const Node& b = N(n.kids[0]);
      const std::size_t open = open_copies(n, p);
      const Move nb = static_cast<Move>(b.nmoves);
      for (std::size_t i = 0; i < open; ++i)
        enabled_into(b, p + i * b.width, offset + static_cast<Move>(i) * nb, out);
      if (open < n.copies)
        enabled_into(b, b.root.data(), offset + static_cast<Move>(open) * nb, out);
      return;
    }
  }
}

bool base_step(const detail::BaseData& d, Coord* p, Move m) {
  if (m < 0 || static_cast<std::size_t>(m) >= d.src.size()) return false;
  if (d.src[static_cast<std::size_t>(m)] != p[0]) return false;
  p[0] = d.dst[static_cast<std::size_t>(m)];
  return true;
}

bool step_at(const Node& n, Coord* p, Move m) {
  if (m < 0 || static_cast<std::size_t>(m) >= n.nmoves) return false;
  switch (n.kind) {
    case GameKind::Base:
      return base_step(*n.base, p, m);
    case GameKind::Dual:
      return step_at(N(n.kids[0]), p, m);
    case GameKind::Neg: {
      const Node& c = N(n.kids[0]);
      if (std::equal(c.root.begin(), c.root.end(), p) && c.pol[static_cast<std::size_t>(m)] > 0)
        return false;
      return step_at(c, p, m);
    }
    case GameKind::Tensor: {
      const Node& l = N(n.kids[0]);
      const Move nl = static_cast<Move>(l.nmoves);
      if (m < nl) return step_at(l, p, m);
      return step_at(N(n.kids[1]), p + l.width, m - nl);
    }
    case GameKind::Product: {
      const Node& l = N(n.kids[0]);
      const Node& r = N(n.kids[1]);
      const Move nl = static_cast<Move>(l.nmoves);
      const int side = m < nl ? 1 : 2;
      const Node& c = side == 1 ? l : r;
      const Move local = side == 1 ? m : m - nl;
      if (p[0] == 0) {
        std::vector<Coord> tmp(c.root);
        if (!step_at(c, tmp.data(), local)) return false;
        p[0] = side;
        std::fill(p + 1, p + n.width, 0);
        std::copy(tmp.begin(), tmp.end(), p + 1);
        return true;
      }
      if (p[0] != side) return false;
      return step_at(c, p + 1, local);
    }
    case GameKind::Bang: {
      const Node& b = N(n.kids[0]);
      const std::size_t i = static_cast<std::size_t>(m) / b.nmoves;
      const Move e = m % static_cast<Move>(b.nmoves);
      const std::size_t open = open_copies(n, p);
      if (i > open || i >= n.copies) return false;
      return step_at(b, p + i * b.width, e);
    }
  }
  return false;
}

Payoff base_payoff(const detail::BaseData& d, Coord src, std::span<const Move> moves) {
  if (!d.overrides.empty()) {
    auto it = d.overrides.find({src, Moves(moves.begin(), moves.end())});
    if (it != d.overrides.end()) return it->second;
  }
  // Pending-question rule: an edge with a non-zero pair asks; an edge with
  // pair (0,0) answers the other side's oldest pending question.
  Payoff acc;
  for (Move m : moves) {
    const Payoff& e = d.edge_payoff[static_cast<std::size_t>(m)];
    if (!e.is_zero()) {
      acc = acc + e;
    } else if (d.spec.edges[static_cast<std::size_t>(m)].polarity > 0) {
      if (acc.minus > 0) --acc.minus;
    } else {
      if (acc.plus > 0) --acc.plus;
    }
  }
  return acc;
}

Payoff payoff_at(const Node& n, const Coord* src, std::span<const Move> moves) {
  switch (n.kind) {
    case GameKind::Base:
      return base_payoff(*n.base, src[0], moves);
    case GameKind::Dual:
      return payoff_at(N(n.kids[0]), src, moves).swapped();
    case GameKind::Neg:
      return payoff_at(N(n.kids[0]), src, moves);
    case GameKind::Tensor: {
      const Node& l = N(n.kids[0]);
      const Move nl = static_cast<Move>(l.nmoves);
      Moves a, b;
      for (Move m : moves) (m < nl ? a : b).push_back(m < nl ? m : m - nl);
      return payoff_at(l, src, a) + payoff_at(N(n.kids[1]), src + l.width, b);
    }
    case GameKind::Product: {
      const Node& l = N(n.kids[0]);
      const Node& r = N(n.kids[1]);
      const Move nl = static_cast<Move>(l.nmoves);
      int side = src[0];
      if (side == 0) {
        if (moves.empty()) return payoff_at(l, l.root.data(), moves);
        side = moves[0] < nl ? 1 : 2;
      }
      const Node& c = side == 1 ? l : r;
      const Coord* cs = src[0] == 0 ? c.root.data() : src + 1;
      Moves local;
      for (Move m : moves) local.push_back(side == 1 ? m : m - nl);
      return payoff_at(c, cs, local);
    }
    case GameKind::Bang: {
      const Node& b = N(n.kids[0]);
      std::vector<Moves> per(n.copies);
      for (Move m : moves)
        per[static_cast<std::size_t>(m) / b.nmoves].push_back(m % static_cast<Move>(b.nmoves));
      Payoff acc;
      for (std::size_t i = 0; i < n.copies; ++i) acc = acc + payoff_at(b, src + i * b.width, per[i]);
      return acc;
    }
  }
  return {};
}

std::string position_name_at(const Node& n, const Coord* p) {
  switch (n.kind) {
    case GameKind::Base:
      return n.base->spec.positions[static_cast<std::size_t>(p[0])];
    case GameKind::Dual:
    case GameKind::Neg:
      return position_name_at(N(n.kids[0]), p);
    case GameKind::Tensor: {
      const Node& l = N(n.kids[0]);
      return "(" + position_name_at(l, p) + "," + position_name_at(N(n.kids[1]), p + l.width) + ")";
    }
    case GameKind::Product:
      if (p[0] == 0) return "*";
      return std::to_string(p[0]) + ":" + position_name_at(N(n.kids[p[0] - 1]), p + 1);
    case GameKind::Bang: {
      const Node& b = N(n.kids[0]);
      std::string s = "[";
      for (std::size_t i = 0; i < n.copies; ++i) {
        if (i) s += ",";
        s += position_name_at(b, p + i * b.width);
      }
      return s + "]";
    }
  }
  return {};
}

std::shared_ptr<Node> make_node(GameKind kind, std::vector<Game> kids) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->kids = std::move(kids);
  return n;
}

void index_names(Node& n) {
  n.by_name.clear();
  for (std::size_t i = 0; i < n.names.size(); ++i) n.by_name.emplace(n.names[i], static_cast<Move>(i));
}

void compute_negative(Node& n) {
  std::vector<Move> init;
  enabled_into(n, n.root.data(), 0, init);
  n.negative = std::all_of(init.begin(), init.end(),
                           [&](Move m) { return n.pol[static_cast<std::size_t>(m)] < 0; });
}

}  // namespace

Game::Game() : Game(unit_game()) {}

GameKind Game::kind() const { return node_->kind; }
std::size_t Game::move_count() const { return node_->nmoves; }
int Game::polarity(Move m) const { return node_->pol.at(static_cast<std::size_t>(m)); }
const std::string& Game::move_name(Move m) const { return node_->names.at(static_cast<std::size_t>(m)); }

std::string Game::move_label(Move m) const {
  const Node& n = *node_;
  switch (n.kind) {
    case GameKind::Base:
      return n.base->spec.edges.at(static_cast<std::size_t>(m)).label;
    case GameKind::Dual:
    case GameKind::Neg:
      return n.kids[0].move_label(m);
    case GameKind::Tensor:
    case GameKind::Product: {
      auto [side, local] = split_move(m);
      return (side == 0 ? (n.kind == GameKind::Tensor ? "L." : "P1.")
                        : (n.kind == GameKind::Tensor ? "R." : "P2.")) +
             n.kids[static_cast<std::size_t>(side)].move_label(local);
    }
    case GameKind::Bang: {
      const std::size_t nb = n.kids[0].move_count();
      return "c" + std::to_string(static_cast<std::size_t>(m) / nb) + "." +
             n.kids[0].move_label(m % static_cast<Move>(nb));
    }
  }
  return {};
}

std::optional<Move> Game::find_move(std::string_view name) const {
  auto it = node_->by_name.find(std::string(name));
  if (it == node_->by_name.end()) return std::nullopt;
  return it->second;
}

std::size_t Game::width() const { return node_->width; }
const Position& Game::root() const { return node_->root; }

std::vector<Move> Game::enabled(std::span<const Coord> pos) const {
  std::vector<Move> out;
  enabled_into(*node_, pos.data(), 0, out);
  return out;
}

bool Game::step(Position& pos, Move m) const { return step_at(*node_, pos.data(), m); }

std::optional<Position> Game::target(std::span<const Coord> src, std::span<const Move> moves) const {
  Position p(src.begin(), src.end());
  for (Move m : moves)
    if (!step_at(*node_, p.data(), m)) return std::nullopt;
  return p;
}

Payoff Game::payoff(std::span<const Coord> src, std::span<const Move> moves) const {
  return payoff_at(*node_, src.data(), moves);
}

bool Game::is_negative() const { return node_->negative; }
std::size_t Game::max_path_length() const { return node_->max_len; }
std::string Game::position_name(std::span<const Coord> pos) const { return position_name_at(*node_, pos.data()); }
std::string Game::expression() const { return node_->expr; }
const Game& Game::child(std::size_t i) const { return node_->kids.at(i); }
std::size_t Game::copies() const { return node_->copies; }

std::pair<int, Move> Game::split_move(Move m) const {
  const Move nl = static_cast<Move>(node_->kids.at(0).move_count());
  if (m < nl) return {0, m};
  return {1, m - nl};
}

Move Game::join_move(int side, Move local) const {
  return side == 0 ? local : local + static_cast<Move>(node_->kids.at(0).move_count());
}

bool operator==(const Game& a, const Game& b) {
  if (a.node_ == b.node_) return true;
  const Node& x = *a.node_;
  const Node& y = *b.node_;
  if (x.kind != y.kind || x.copies != y.copies || x.kids.size() != y.kids.size()) return false;
  if (x.kind == GameKind::Base) return x.base->fingerprint == y.base->fingerprint;
  for (std::size_t i = 0; i < x.kids.size(); ++i)
    if (!(x.kids[i] == y.kids[i])) return false;
  return true;
}

namespace {

std::string fingerprint_of(const GameSpec& s) {
  std::ostringstream os;
  os << s.root << '\n';
  for (const auto& p : s.positions) os << p << ' ';
  os << '\n';
  for (const auto& e : s.edges)
    os << e.id << ' ' << e.src << ' ' << e.dst << ' ' << e.label << ' ' << e.polarity << ' '
       << e.payoff.plus << ' ' << e.payoff.minus << '\n';
  for (const auto& pp : s.path_payoffs) {
    os << pp.source << ':';
    for (const auto& e : pp.edges) os << e << ' ';
    os << pp.payoff.plus << ' ' << pp.payoff.minus << '\n';
  }
  return os.str();
}

}  // namespace

Game build_game(const GameSpec& spec_in) {
  GameSpec spec = spec_in;
  if (spec.positions.empty()) throw GameError("game has no positions");
  std::unordered_map<std::string, int> pidx;
  for (std::size_t i = 0; i < spec.positions.size(); ++i)
    if (!pidx.emplace(spec.positions[i], static_cast<int>(i)).second)
      throw GameError("duplicate position '" + spec.positions[i] + "'");
  if (!pidx.count(spec.root)) throw GameError("root '" + spec.root + "' is not a position");

  std::sort(spec.edges.begin(), spec.edges.end(),
            [](const EdgeSpec& a, const EdgeSpec& b) { return a.id < b.id; });
  auto d = std::make_shared<detail::BaseData>();
  std::unordered_map<std::string, Move> eidx;
  for (std::size_t i = 0; i < spec.edges.size(); ++i) {
    auto& e = spec.edges[i];
    if (e.label.empty()) e.label = e.id;
    if (!eidx.emplace(e.id, static_cast<Move>(i)).second) throw GameError("duplicate edge '" + e.id + "'");
    if (!pidx.count(e.src) || !pidx.count(e.dst))
      throw GameError("dangling edge '" + e.id + "': " + e.src + " -> " + e.dst);
    if (e.polarity != 1 && e.polarity != -1)
      throw GameError("edge '" + e.id + "' has polarity " + std::to_string(e.polarity));
    d->src.push_back(pidx[e.src]);
    d->dst.push_back(pidx[e.dst]);
    d->edge_payoff.push_back(e.payoff);
  }
  const std::size_t np = spec.positions.size();
  d->out.assign(np, {});
  for (std::size_t i = 0; i < d->src.size(); ++i)
    d->out[static_cast<std::size_t>(d->src[i])].push_back(static_cast<Move>(i));

  // Kahn's algorithm: acyclicity plus a topological order for heights.
  std::vector<int> indeg(np, 0);
  for (int t : d->dst) ++indeg[static_cast<std::size_t>(t)];
  std::vector<int> order;
  std::deque<int> ready;
  for (std::size_t i = 0; i < np; ++i)
    if (indeg[i] == 0) ready.push_back(static_cast<int>(i));
  while (!ready.empty()) {
    int v = ready.front();
    ready.pop_front();
    order.push_back(v);
    for (Move m : d->out[static_cast<std::size_t>(v)])
      if (--indeg[static_cast<std::size_t>(d->dst[static_cast<std::size_t>(m)])] == 0)
        ready.push_back(d->dst[static_cast<std::size_t>(m)]);
  }
  if (order.size() != np) throw GameError("game graph is cyclic");

  std::vector<char> seen(np, 0);
  std::deque<int> q{pidx[spec.root]};
  seen[static_cast<std::size_t>(pidx[spec.root])] = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (Move m : d->out[static_cast<std::size_t>(v)]) {
      int t = d->dst[static_cast<std::size_t>(m)];
      if (!seen[static_cast<std::size_t>(t)]) {
        seen[static_cast<std::size_t>(t)] = 1;
        q.push_back(t);
      }
    }
  }
  for (std::size_t i = 0; i < np; ++i)
    if (!seen[i]) throw GameError("position '" + spec.positions[i] + "' is unreachable from the root");

  d->height.assign(np, 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    for (Move m : d->out[static_cast<std::size_t>(*it)])
      d->height[static_cast<std::size_t>(*it)] =
          std::max(d->height[static_cast<std::size_t>(*it)],
                   1 + d->height[static_cast<std::size_t>(d->dst[static_cast<std::size_t>(m)])]);

  for (const auto& pp : spec.path_payoffs) {
    if (pp.edges.empty()) {
      if (!pidx.count(pp.source)) throw GameError("path payoff at unknown position '" + pp.source + "'");
      d->overrides[{pidx[pp.source], {}}] = pp.payoff;
      continue;
    }
    Moves ms;
    for (const auto& e : pp.edges) {
      auto it = eidx.find(e);
      if (it == eidx.end()) throw GameError("path payoff names unknown edge '" + e + "'");
      ms.push_back(it->second);
    }
    for (std::size_t i = 1; i < ms.size(); ++i)
      if (d->dst[static_cast<std::size_t>(ms[i - 1])] != d->src[static_cast<std::size_t>(ms[i])])
        throw GameError("path payoff entry is not a path: edges do not chain at '" + pp.edges[i] + "'");
    d->overrides[{d->src[static_cast<std::size_t>(ms[0])], ms}] = pp.payoff;
  }

  d->fingerprint = fingerprint_of(spec);
  auto n = make_node(GameKind::Base, {});
  n->nmoves = spec.edges.size();
  n->width = 1;
  n->root = {pidx[spec.root]};
  for (const auto& e : spec.edges) {
    n->pol.push_back(static_cast<std::int8_t>(e.polarity));
    n->names.push_back(e.id);
  }
  n->max_len = d->height[static_cast<std::size_t>(pidx[spec.root])];
  n->expr = spec.name.empty() ? "game" : spec.name;
  d->spec = std::move(spec);
  n->base = d;
  index_names(*n);
  compute_negative(*n);
  return Game(n);
}

GameSpec describe(const Game& g) {
  if (g.kind() != GameKind::Base) throw GameError("describe: only base games carry a description");
  return g.node()->base->spec;
}

Game unit_game() {
  static const Game g = build_game(GameSpec{"unit", {"*"}, "*", {}, {}});
  return g;
}

Game game_two() {
  static const Game g = build_game(GameSpec{"two", {"*", "end"}, "*", {{"o", "*", "end", "o", -1, {0, 0}}}, {}});
  return g;
}

Game bool_game() {
  static const Game g = build_game(GameSpec{"bool",
                                            {"*", "q", "V", "F"},
                                            "*",
                                            {{"q", "*", "q", "q", -1, {0, 1}},
                                             {"V", "q", "V", "V", 1, {0, 0}},
                                             {"F", "q", "F", "F", 1, {0, 0}}},
                                            {{"", {"q", "V"}, {0, 0}}, {"", {"q", "F"}, {0, 0}}}});
  return g;
}

Game nat_game(unsigned n_max) {
  GameSpec s;
  s.name = "nat(" + std::to_string(n_max) + ")";
  s.positions = {"*", "q"};
  s.root = "*";
  s.edges.push_back({"q", "*", "q", "q", -1, {0, 1}});
  for (unsigned v = 0; v <= n_max; ++v) {
    s.positions.push_back("n" + std::to_string(v));
    s.edges.push_back({std::to_string(v), "q", "n" + std::to_string(v), std::to_string(v), 1, {0, 0}});
  }
  return build_game(s);
}

Game dual(const Game& a) {
  if (a.kind() == GameKind::Dual) return a.child(0);
  if (a.move_count() == 0) return a;
  auto n = make_node(GameKind::Dual, {a});
  const Node& c = N(a);
  n->nmoves = c.nmoves;
  n->width = c.width;
  n->root = c.root;
  for (auto p : c.pol) n->pol.push_back(static_cast<std::int8_t>(-p));
  n->names = c.names;
  n->by_name = c.by_name;
  n->max_len = c.max_len;
  n->expr = "dual(" + c.expr + ")";
  compute_negative(*n);
  return Game(n);
}

Game tensor(const Game& a, const Game& b) {
  auto n = make_node(GameKind::Tensor, {a, b});
  const Node& l = N(a);
  const Node& r = N(b);
  n->nmoves = l.nmoves + r.nmoves;
  n->width = l.width + r.width;
  n->root = l.root;
  n->root.insert(n->root.end(), r.root.begin(), r.root.end());
  n->pol = l.pol;
  n->pol.insert(n->pol.end(), r.pol.begin(), r.pol.end());
  for (const auto& s : l.names) n->names.push_back("L." + s);
  for (const auto& s : r.names) n->names.push_back("R." + s);
  n->max_len = l.max_len + r.max_len;
  n->expr = "tensor(" + l.expr + "," + r.expr + ")";
  index_names(*n);
  compute_negative(*n);
  return Game(n);
}

Game tensor(const std::vector<Game>& factors) {
  if (factors.empty()) return unit_game();
  Game acc = factors.back();
  for (std::size_t i = factors.size() - 1; i-- > 0;) acc = tensor(factors[i], acc);
  return acc;
}

Game neg(const Game& a) {
  if (a.kind() == GameKind::Neg || a.is_negative()) return a;
  auto n = make_node(GameKind::Neg, {a});
  const Node& c = N(a);
  n->nmoves = c.nmoves;
  n->width = c.width;
  n->root = c.root;
  n->pol = c.pol;
  n->names = c.names;
  n->by_name = c.by_name;
  n->max_len = c.max_len;
  n->expr = "neg(" + c.expr + ")";
  n->negative = true;
  return Game(n);
}

Game product(const Game& a, const Game& b) {
  if (!a.is_negative() || !b.is_negative())
    throw GameError("product: both components must be negative games");
  auto n = make_node(GameKind::Product, {a, b});
  const Node& l = N(a);
  const Node& r = N(b);
  n->nmoves = l.nmoves + r.nmoves;
  n->width = 1 + std::max(l.width, r.width);
  n->root.assign(n->width, 0);
  n->pol = l.pol;
  n->pol.insert(n->pol.end(), r.pol.begin(), r.pol.end());
  for (const auto& s : l.names) n->names.push_back("P1." + s);
  for (const auto& s : r.names) n->names.push_back("P2." + s);
  n->max_len = std::max(l.max_len, r.max_len);
  n->expr = "product(" + l.expr + "," + r.expr + ")";
  index_names(*n);
  n->negative = true;
  return Game(n);
}

Game loli(const Game& a, const Game& b) { return neg(tensor(dual(a), b)); }

Game bang_game(const Game& base, unsigned copies) {
  if (copies == 0) throw GameError("bang: at least one copy required");
  if (!base.is_negative()) throw GameError("bang: base game must be negative");
  auto n = make_node(GameKind::Bang, {base});
  const Node& b = N(base);
  n->copies = copies;
  n->nmoves = b.nmoves * copies;
  n->width = b.width * copies;
  for (unsigned i = 0; i < copies; ++i) {
    n->root.insert(n->root.end(), b.root.begin(), b.root.end());
    n->pol.insert(n->pol.end(), b.pol.begin(), b.pol.end());
    for (const auto& s : b.names) n->names.push_back("c" + std::to_string(i) + "." + s);
  }
  n->max_len = b.max_len * copies;
  n->expr = "bang(" + b.expr + "," + std::to_string(copies) + ")";
  index_names(*n);
  n->negative = true;
  return Game(n);
}

Path project_path(const Game& g, const Path& s, int side) {
  if (g.kind() != GameKind::Tensor && g.kind() != GameKind::Product)
    throw GameError("project_path: game is not a tensor or product");
  const Game& c = g.child(static_cast<std::size_t>(side));
  Path out;
  if (g.kind() == GameKind::Tensor) {
    const std::size_t off = side == 0 ? 0 : g.child(0).width();
    out.source.assign(s.source.begin() + static_cast<std::ptrdiff_t>(off),
                      s.source.begin() + static_cast<std::ptrdiff_t>(off + c.width()));
  } else {
    out.source = s.source[0] == 0 ? c.root()
                                  : Position(s.source.begin() + 1,
                                             s.source.begin() + 1 + static_cast<std::ptrdiff_t>(c.width()));
  }
  for (Move m : s.moves) {
    auto [sd, local] = g.split_move(m);
    if (sd == side) out.moves.push_back(local);
  }
  return out;
}

void for_each_path(const Game& g, const Position& from, std::size_t max_len,
                   const std::function<void(const Moves&)>& fn) {
  Moves cur;
  std::vector<Position> stack{from};
  std::function<void()> rec = [&]() {
    fn(cur);
    if (cur.size() >= max_len) return;
    const Position here = stack.back();
    for (Move m : g.enabled(here)) {
      Position next = here;
      g.step(next, m);
      cur.push_back(m);
      stack.push_back(std::move(next));
      rec();
      stack.pop_back();
      cur.pop_back();
    }
  };
  rec();
}

std::vector<Path> enumerate_paths(const Game& g, const Position& from, std::size_t max_len) {
  std::vector<Path> out;
  for_each_path(g, from, max_len, [&](const Moves& m) { out.push_back({from, m}); });
  return out;
}

std::vector<Position> reachable_positions(const Game& g) {
  std::vector<Position> order{g.root()};
  std::unordered_set<Position, PositionHash> seen{g.root()};
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Position here = order[i];
    for (Move m : g.enabled(here)) {
      Position next = here;
      g.step(next, m);
      if (seen.insert(next).second) order.push_back(std::move(next));
    }
  }
  return order;
}

std::string_view axiom_name(Axiom a) {
  switch (a) {
    case Axiom::Compatibility: return "compatibility";
    case Axiom::SuffixDomination: return "suffix-domination";
    case Axiom::SubAdditivity: return "sub-additivity";
    case Axiom::Norm: return "norm";
  }
  return "?";
}

namespace {

void check_from(const Game& g, const Position& x, std::vector<PayoffViolation>& out, std::size_t& count) {
  const Payoff eps = g.payoff(x, {});
  if (!eps.is_zero())
    out.push_back({Axiom::Norm, x, {}, {}, "kappa(eps) = " + to_string(eps)});
  for (Move m : g.enabled(x)) {
    const Moves one{m};
    const Payoff k = g.payoff(x, one);
    if ((g.polarity(m) < 0 && k.plus != 0) || (g.polarity(m) > 0 && k.minus != 0))
      out.push_back({Axiom::Compatibility, x, one, {},
                     "polarity " + std::to_string(g.polarity(m)) + " with kappa " + to_string(k)});
  }
  for_each_path(g, x, g.max_path_length(), [&](const Moves& u) {
    ++count;
    if (u.size() < 2) return;
    const Payoff whole = g.payoff(x, u);
    Position mid = x;
    for (std::size_t i = 1; i < u.size(); ++i) {
      g.step(mid, u[i - 1]);
      std::span<const Move> s(u.data(), i);
      std::span<const Move> t(u.data() + i, u.size() - i);
      const Payoff ks = g.payoff(x, s);
      const Payoff kt = g.payoff(mid, t);
      if (!leq(kt, whole))
        out.push_back({Axiom::SuffixDomination, x, Moves(s.begin(), s.end()), Moves(t.begin(), t.end()),
                       "kappa(t) = " + to_string(kt) + " > kappa(s;t) = " + to_string(whole)});
      if (!leq(whole, ks + kt))
        out.push_back({Axiom::SubAdditivity, x, Moves(s.begin(), s.end()), Moves(t.begin(), t.end()),
                       "kappa(s;t) = " + to_string(whole) + " > kappa(s) + kappa(t) = " + to_string(ks + kt)});
    }
  });
}

}  // namespace

PayoffReport validate_payoff_serial(const Game& g) {
  PayoffReport r;
  for (const Position& x : reachable_positions(g)) check_from(g, x, r.violations, r.paths_checked);
  return r;
}

PayoffReport validate_payoff(const Game& g) {
  const std::vector<Position> xs = reachable_positions(g);
  std::vector<std::vector<PayoffViolation>> parts(xs.size());
  std::vector<std::size_t> counts(xs.size(), 0);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(xs.size()); ++i)
    check_from(g, xs[static_cast<std::size_t>(i)], parts[static_cast<std::size_t>(i)],
               counts[static_cast<std::size_t>(i)]);
  PayoffReport r;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    r.paths_checked += counts[i];
    for (auto& v : parts[i]) r.violations.push_back(std::move(v));
  }
  return r;
}

std::string format_moves(const Game& g, std::span<const Move> moves) {
  if (moves.empty()) return "eps";
  std::string s;
  for (std::size_t i = 0; i < moves.size(); ++i) {
    if (i) s += ' ';
    s += g.move_name(moves[i]);
  }
  return s;
}

Moves parse_moves(const Game& g, std::string_view text) {
  std::istringstream is{std::string(text)};
  Moves out;
  std::string tok;
  while (is >> tok) {
    if (tok == "eps") continue;
    auto m = g.find_move(tok);
    if (!m) throw GameError("unknown move '" + tok + "' in " + g.expression());
    out.push_back(*m);
  }
  return out;
}

namespace {

struct Explicit {
  std::vector<Position> pos;
  std::unordered_map<Position, int, PositionHash> index;
  std::vector<std::vector<std::pair<Move, int>>> out;
  std::size_t edges = 0;
};

Explicit explicit_graph(const Game& g) {
  Explicit e;
  e.pos = reachable_positions(g);
  for (std::size_t i = 0; i < e.pos.size(); ++i) e.index.emplace(e.pos[i], static_cast<int>(i));
  e.out.resize(e.pos.size());
  for (std::size_t i = 0; i < e.pos.size(); ++i)
    for (Move m : g.enabled(e.pos[i])) {
      Position t = e.pos[i];
      g.step(t, m);
      e.out[i].push_back({m, e.index.at(t)});
      ++e.edges;
    }
  return e;
}

struct IsoSearch {
  const Game& ga;
  const Game& gb;
  const Explicit& a;
  const Explicit& b;
  std::vector<int> a2b, b2a;
  std::vector<char> expanded;
  std::map<std::pair<int, Move>, Move> emap;

  bool edge_ok(int pa, Move ma, int pb, Move mb) const {
    if (ga.polarity(ma) != gb.polarity(mb)) return false;
    const Moves sa{ma}, sb{mb};
    return ga.payoff(a.pos[static_cast<std::size_t>(pa)], sa) == gb.payoff(b.pos[static_cast<std::size_t>(pb)], sb);
  }

  bool solve(std::vector<std::pair<int, int>> work) {
    while (!work.empty() && expanded[static_cast<std::size_t>(work.back().first)]) work.pop_back();
    if (work.empty()) return true;
    auto [pa, pb] = work.back();
    work.pop_back();
    expanded[static_cast<std::size_t>(pa)] = 1;
    const auto& oa = a.out[static_cast<std::size_t>(pa)];
    const auto& ob = b.out[static_cast<std::size_t>(pb)];
    if (oa.size() != ob.size()) {
      expanded[static_cast<std::size_t>(pa)] = 0;
      return false;
    }
    std::vector<std::size_t> perm(ob.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
      bool ok = true;
      std::vector<int> newly;
      for (std::size_t i = 0; i < oa.size() && ok; ++i) {
        auto [ma, ta] = oa[i];
        auto [mb, tb] = ob[perm[i]];
        if (!edge_ok(pa, ma, pb, mb)) ok = false;
        else if (a2b[static_cast<std::size_t>(ta)] < 0 && b2a[static_cast<std::size_t>(tb)] < 0) {
          a2b[static_cast<std::size_t>(ta)] = tb;
          b2a[static_cast<std::size_t>(tb)] = ta;
          newly.push_back(ta);
        } else if (a2b[static_cast<std::size_t>(ta)] != tb) {
          ok = false;
        }
      }
      if (ok) {
        auto next = work;
        for (std::size_t i = 0; i < oa.size(); ++i) next.push_back({oa[i].second, ob[perm[i]].second});
        if (solve(next)) {
          for (std::size_t i = 0; i < oa.size(); ++i) emap[{pa, oa[i].first}] = ob[perm[i]].first;
          return true;
        }
      }
      for (int ta : newly) {
        b2a[static_cast<std::size_t>(a2b[static_cast<std::size_t>(ta)])] = -1;
        a2b[static_cast<std::size_t>(ta)] = -1;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    expanded[static_cast<std::size_t>(pa)] = 0;
    return false;
  }
};

}  // namespace

bool isomorphic(const Game& ga, const Game& gb) {
  const Explicit a = explicit_graph(ga);
  const Explicit b = explicit_graph(gb);
  if (a.pos.size() != b.pos.size() || a.edges != b.edges) return false;
  IsoSearch s{ga, gb, a, b, std::vector<int>(a.pos.size(), -1), std::vector<int>(b.pos.size(), -1),
              std::vector<char>(a.pos.size(), 0), {}};
  s.a2b[0] = 0;
  s.b2a[0] = 0;
  if (!s.solve({{0, 0}})) return false;
  // Payoff must agree on every path under the edge bijection.
  bool same = true;
  for (std::size_t i = 0; i < a.pos.size() && same; ++i) {
    const Position& xb = b.pos[static_cast<std::size_t>(s.a2b[i])];
    for_each_path(ga, a.pos[i], ga.max_path_length(), [&](const Moves& u) {
      if (!same) return;
      Moves v;
      int cur = static_cast<int>(i);
      for (Move m : u) {
        v.push_back(s.emap.at({cur, m}));
        for (auto [mm, t] : a.out[static_cast<std::size_t>(cur)])
          if (mm == m) cur = t;
      }
      if (!(ga.payoff(a.pos[i], u) == gb.payoff(xb, v))) same = false;
    });
  }
  return same;
}

}  // namespace cgw
