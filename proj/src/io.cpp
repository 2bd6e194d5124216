#include "cgw/io.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

namespace cgw {

namespace {

std::vector<std::string> tokens(std::string_view line) {
  std::istringstream is{std::string(line)};
  std::vector<std::string> out;
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

std::string strip_comment(const std::string& line) {
  const auto h = line.find('#');
  return h == std::string::npos ? line : line.substr(0, h);
}

std::uint32_t parse_count(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    const unsigned long v = std::stoul(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return static_cast<std::uint32_t>(v);
  } catch (const std::exception&) {
    throw IoError(line, "expected a count, found '" + s + "'");
  }
}

std::string join(const std::vector<std::string>& v, std::size_t from = 0) {
  std::string s;
  for (std::size_t i = from; i < v.size(); ++i) {
    if (i > from) s += ' ';
    s += v[i];
  }
  return s;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<GameSpec> parse_game_file(std::string_view text) {
  enum class Section { None, Edges, Payoffs };
  std::vector<GameSpec> out;
  bool open = false;
  bool has_root = false;
  Section section = Section::None;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t no = 0;
  while (std::getline(in, raw)) {
    ++no;
    const auto tk = tokens(strip_comment(raw));
    if (tk.empty()) continue;
    const std::string& head = tk[0];
    if (!open) {
      if (head != "game" || tk.size() != 2) throw IoError(no, "expected 'game NAME'");
      out.push_back({});
      out.back().name = tk[1];
      open = true;
      has_root = false;
      section = Section::None;
      continue;
    }
    GameSpec& g = out.back();
    if (head == "end" && tk.size() == 1) {
      if (g.positions.empty()) throw IoError(no, "game " + g.name + " has no positions");
      if (!has_root) throw IoError(no, "game " + g.name + " has no root");
      open = false;
      continue;
    }
    if (head == "positions" && section == Section::None) {
      if (!g.positions.empty()) throw IoError(no, "positions given twice");
      g.positions.assign(tk.begin() + 1, tk.end());
      if (g.positions.empty()) throw IoError(no, "empty positions list");
      continue;
    }
    if (head == "root" && section == Section::None) {
      if (tk.size() != 2) throw IoError(no, "expected 'root ID'");
      if (has_root) throw IoError(no, "root given twice");
      g.root = tk[1];
      has_root = true;
      continue;
    }
    if (head == "edges" && tk.size() == 1 && section == Section::None) {
      section = Section::Edges;
      continue;
    }
    if (head == "path_payoffs" && tk.size() == 1 && section != Section::Payoffs) {
      section = Section::Payoffs;
      continue;
    }
    if (section == Section::Edges) {
      if (tk.size() != 7) throw IoError(no, "edge needs: id src dst label polarity plus minus");
      if (tk[4] != "+" && tk[4] != "-") throw IoError(no, "polarity must be + or -");
      g.edges.push_back({tk[0], tk[1], tk[2], tk[3], tk[4] == "+" ? 1 : -1,
                         {parse_count(tk[5], no), parse_count(tk[6], no)}});
      continue;
    }
    if (section == Section::Payoffs) {
      if (tk.size() < 4 || tk[tk.size() - 3] != "=") throw IoError(no, "path payoff needs: edges = plus minus");
      PathPayoffSpec p;
      p.payoff = {parse_count(tk[tk.size() - 2], no), parse_count(tk.back(), no)};
      if (tk.size() == 4 && tk[0].rfind("eps@", 0) == 0) {
        p.source = tk[0].substr(4);
        if (p.source.empty()) throw IoError(no, "eps@ needs a position");
      } else {
        p.edges.assign(tk.begin(), tk.end() - 3);
      }
      g.path_payoffs.push_back(std::move(p));
      continue;
    }
    throw IoError(no, "unexpected '" + head + "'");
  }
  if (open) throw IoError(no, "game " + out.back().name + " is not closed by 'end'");
  return out;
}

std::string print_game_spec(const GameSpec& g) {
  std::ostringstream os;
  os << "game " << g.name << "\n";
  os << "positions " << join(g.positions) << "\n";
  os << "root " << g.root << "\n";
  if (!g.edges.empty()) {
    os << "edges\n";
    for (const EdgeSpec& e : g.edges)
      os << "  " << e.id << ' ' << e.src << ' ' << e.dst << ' ' << (e.label.empty() ? e.id : e.label) << ' '
         << (e.polarity > 0 ? '+' : '-') << ' ' << e.payoff.plus << ' ' << e.payoff.minus << "\n";
  }
  if (!g.path_payoffs.empty()) {
    os << "path_payoffs\n";
    for (const PathPayoffSpec& p : g.path_payoffs)
      os << "  " << (p.edges.empty() ? "eps@" + p.source : join(p.edges)) << " = " << p.payoff.plus << ' '
         << p.payoff.minus << "\n";
  }
  os << "end\n";
  return os.str();
}

std::string print_game_file(const std::vector<GameSpec>& games) {
  std::string s;
  for (std::size_t i = 0; i < games.size(); ++i) {
    if (i) s += "\n";
    s += print_game_spec(games[i]);
  }
  return s;
}

GameLibrary builtin_games() {
  return {{"unit", unit_game()}, {"two", game_two()}, {"bool", bool_game()}, {"nat", nat_game(8)}};
}

GameLibrary load_game_library(const std::string& path) {
  GameLibrary lib = builtin_games();
  const std::string text = read_file(path);
  std::vector<GameSpec> specs;
  try {
    specs = parse_game_file(text);
  } catch (const IoError& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  for (const GameSpec& s : specs) lib[s.name] = build_game(s);
  return lib;
}

namespace {

class ExprParser {
 public:
  ExprParser(std::string_view text, const GameLibrary& lib) : s_(text), lib_(lib) {}

  Game run() {
    Game g = expr();
    skip();
    if (i_ != s_.size()) fail("trailing input");
    return g;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw GameError("game expression '" + std::string(s_) + "' at " + std::to_string(i_) + ": " + why);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  std::string ident() {
    skip();
    const std::size_t b = i_;
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_' || s_[i_] == '-' ||
                              s_[i_] == '.'))
      ++i_;
    if (b == i_) fail("expected a name");
    return std::string(s_.substr(b, i_ - b));
  }
  unsigned number() {
    const std::string t = ident();
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(t, &used);
      if (used != t.size()) fail("expected a number");
      return static_cast<unsigned>(v);
    } catch (const std::logic_error&) {
      fail("expected a number");
    }
  }
  Game expr() {
    const std::string name = ident();
    if (!eat('(')) {
      auto it = lib_.find(name);
      if (it == lib_.end()) fail("unknown game '" + name + "'");
      return it->second;
    }
    Game out;
    if (name == "nat") {
      out = nat_game(number());
    } else if (name == "bang") {
      Game a = expr();
      expect(',');
      out = bang_game(a, number());
    } else if (name == "dual" || name == "neg") {
      Game a = expr();
      out = name == "dual" ? dual(a) : neg(a);
    } else if (name == "tensor") {
      std::vector<Game> fs{expr()};
      while (eat(',')) fs.push_back(expr());
      if (fs.size() < 2) fail("tensor needs two factors");
      out = fs.back();
      for (std::size_t k = fs.size() - 1; k-- > 0;) out = tensor(fs[k], out);
    } else if (name == "product" || name == "loli") {
      Game a = expr();
      expect(',');
      Game b = expr();
      out = name == "product" ? product(a, b) : loli(a, b);
    } else {
      fail("unknown constructor '" + name + "'");
    }
    expect(')');
    return out;
  }

  std::string_view s_;
  const GameLibrary& lib_;
  std::size_t i_ = 0;
};

}  // namespace

Game parse_game_expr(std::string_view text, const GameLibrary& lib) { return ExprParser(text, lib).run(); }

std::vector<StrategySpec> parse_strategy_file(std::string_view text) {
  std::vector<StrategySpec> out;
  bool open = false, in_plays = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t no = 0;
  while (std::getline(in, raw)) {
    ++no;
    const auto tk = tokens(strip_comment(raw));
    if (tk.empty()) continue;
    if (!open) {
      if (tk[0] != "strategy" || tk.size() != 2) throw IoError(no, "expected 'strategy NAME'");
      out.push_back({});
      out.back().name = tk[1];
      open = true;
      in_plays = false;
      continue;
    }
    StrategySpec& s = out.back();
    if (tk[0] == "end" && tk.size() == 1) {
      if (s.on.empty()) throw IoError(no, "strategy " + s.name + " has no 'on' line");
      open = false;
      continue;
    }
    if (in_plays) {
      s.plays.push_back(join(tk));
      continue;
    }
    if (tk[0] == "games" && tk.size() == 2) {
      if (!s.games.empty()) throw IoError(no, "games given twice");
      s.games = tk[1];
    } else if (tk[0] == "on" && tk.size() >= 2) {
      if (!s.on.empty()) throw IoError(no, "'on' given twice");
      s.on = join(tk, 1);
    } else if (tk[0] == "plays" && tk.size() == 1) {
      in_plays = true;
    } else {
      throw IoError(no, "unexpected '" + tk[0] + "'");
    }
  }
  if (open) throw IoError(no, "strategy " + out.back().name + " is not closed by 'end'");
  return out;
}

std::string print_strategy_file(const std::vector<StrategySpec>& strategies) {
  std::ostringstream os;
  for (std::size_t i = 0; i < strategies.size(); ++i) {
    const StrategySpec& s = strategies[i];
    if (i) os << "\n";
    os << "strategy " << s.name << "\n";
    if (!s.games.empty()) os << "games " << s.games << "\n";
    os << "on " << s.on << "\n";
    os << "plays\n";
    for (const std::string& p : s.plays) os << "  " << p << "\n";
    os << "end\n";
  }
  return os.str();
}

NamedStrategy resolve_strategy(const StrategySpec& spec, const GameLibrary& lib) {
  const Game g = parse_game_expr(spec.on, lib);
  std::vector<Moves> plays;
  for (const std::string& p : spec.plays) {
    Moves m = parse_moves(g, p);
    if (!g.is_path(g.root(), m)) throw GameError("strategy " + spec.name + ": '" + p + "' is not a path of " + spec.on);
    plays.push_back(std::move(m));
  }
  return {spec.name, from_plays(g, plays)};
}

std::vector<NamedStrategy> load_strategies(const std::string& path) {
  std::vector<StrategySpec> specs;
  try {
    specs = parse_strategy_file(read_file(path));
  } catch (const IoError& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  const std::filesystem::path dir = std::filesystem::path(path).parent_path();
  std::vector<NamedStrategy> out;
  for (const StrategySpec& s : specs) {
    const GameLibrary lib = s.games.empty() ? builtin_games() : load_game_library((dir / s.games).string());
    out.push_back(resolve_strategy(s, lib));
  }
  return out;
}

StrategySpec describe_strategy(const std::string& name, const std::string& games, const std::string& on,
                               const Strategy& s) {
  StrategySpec out{name, games, on, {}};
  for (auto it = s.plays.begin(); it != s.plays.end(); ++it) {
    auto next = std::next(it);
    const bool extended = next != s.plays.end() && next->size() > it->size() &&
                          std::equal(it->begin(), it->end(), next->begin());
    if (!extended && !it->empty()) out.plays.push_back(format_moves(s.game, *it));
  }
  return out;
}

}  // namespace cgw
