#include "cgw/algol/programs.hpp"

#include "cgw/algol/typing.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace cgw::algol {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<ProgramCase> parse_programs(const std::string& text) {
  std::vector<ProgramCase> out;
  std::vector<std::map<std::string, std::string>> fields;
  std::istringstream in(text);
  std::string line;
  std::size_t no = 0;
  auto fail = [&](const std::string& why) {
    throw std::runtime_error("line " + std::to_string(no) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']') fail("unterminated program name");
      out.push_back({});
      out.back().name = t.substr(1, t.size() - 2);
      fields.push_back({});
      continue;
    }
    if (out.empty()) fail("field before the first [name]");
    const auto eq = t.find('=');
    if (eq == std::string::npos) fail("expected key = value");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key != "term" && key != "store" && key != "value" && key != "final" && key != "note") fail("unknown key " + key);
    if (fields.back().count(key)) fail("duplicate key " + key);
    fields.back()[key] = value;
    try {
      ProgramCase& c = out.back();
      if (key == "term") {
        c.source = value;
        c.term = parse_term(value);
      } else if (key == "store") {
        c.store = parse_store(value);
      } else if (key == "value") {
        c.value = parse_term(value);
      } else if (key == "final") {
        c.final_store = parse_store(value);
      } else {
        c.note = value;
      }
    } catch (const ParseError& e) {
      fail(key + ": " + e.what());
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!out[i].term) throw std::runtime_error("program " + out[i].name + " has no term");
    if (!out[i].value) throw std::runtime_error("program " + out[i].name + " has no value");
  }
  return out;
}

std::vector<ProgramCase> load_programs(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  try {
    return parse_programs(ss.str());
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

std::string data_file(const std::string& rel) { return std::string(CGW_DATA_DIR) + "/" + rel; }

RunOutcome run_program(const ProgramCase& c, std::size_t fuel) {
  RunOutcome r;
  try {
    r.result = eval({c.term, c.store}, fuel, &r.stats);
  } catch (const EvalError& e) {
    r.fuel_exhausted = e.kind == EvalError::Kind::FuelExhausted;
    r.detail = e.what();
    return r;
  }
  const std::string got = print_term(r.result.term), want = print_term(c.value);
  const std::string gs = print_store(r.result.store), ws = print_store(c.final_store);
  if (got != want) {
    r.detail = "value " + got + ", expected " + want;
    return r;
  }
  if (gs != ws) {
    r.detail = "store [" + gs + "], expected [" + ws + "]";
    return r;
  }
  r.ok = true;
  return r;
}

namespace {

std::vector<TermP> samples(const TypeP& t) {
  switch (t->kind) {
    case Type::Kind::Unit:
      return {mk_skip()};
    case Type::Kind::Bool:
      return {mk_bool(true), mk_bool(false)};
    case Type::Kind::Nat:
      return {mk_nat(0), mk_nat(2)};
    case Type::Kind::Arrow:
      return {mk_lam("a", samples(t->b).front(), t->a)};
    case Type::Kind::Prod:
      return {mk_pair(samples(t->a).front(), samples(t->b).front())};
  }
  return {};
}

std::string plug(const std::string& name, const std::string& inner) {
  const auto at = name.find("[]");
  return name.substr(0, at) + inner + name.substr(at + 2);
}

}  // namespace

std::vector<Observation> observations(const TypeP& t, int depth) {
  std::vector<Observation> out;
  auto id = [](const TermP& m) { return m; };
  switch (t->kind) {
    case Type::Kind::Unit:
      out.push_back({"new u := [] in T", [](const TermP& m) { return mk_new("u", m, mk_bool(true)); }});
      break;
    case Type::Kind::Bool:
      out.push_back({"[]", id});
      out.push_back({"if [] then 1 else 0", [](const TermP& m) { return mk_if(m, mk_nat(1), mk_nat(0)); }});
      break;
    case Type::Kind::Nat:
      out.push_back({"[]", id});
      out.push_back({"zero([])", [](const TermP& m) { return mk_zero(m); }});
      break;
    case Type::Kind::Prod:
      for (int i : {1, 2})
        for (Observation& o : observations(i == 1 ? t->a : t->b, depth)) {
          auto w = o.wrap;
          out.push_back({plug(o.name, (i == 1 ? "fst([])" : "snd([])")),
                         [w, i](const TermP& m) { return w(mk_proj(i, m)); }});
        }
      break;
    case Type::Kind::Arrow:
      if (depth == 0) break;
      for (const TermP& arg : samples(t->a))
        for (Observation& o : observations(t->b, depth - 1)) {
          auto w = o.wrap;
          out.push_back({plug(o.name, "[] " + print_term(arg)), [w, arg](const TermP& m) { return w(mk_app(m, arg)); }});
        }
      break;
  }
  return out;
}

SoundnessReport equational_soundness(const std::vector<ProgramCase>& cases, const DenoteConfig& cfg, std::size_t fuel) {
  struct Closed {
    std::string name;
    Typed typed;
    Materialized plays;
  };
  std::vector<Closed> closed;
  for (const ProgramCase& c : cases) {
    ClosedDenotation d = denote_closed(c.term, c.store, cfg);
    if (d.play_set.overflow) continue;
    closed.push_back({c.name, typecheck({}, {}, new_prefix(c.store, c.term)), std::move(d.play_set)});
  }
  SoundnessReport rep;
  for (std::size_t i = 0; i < closed.size(); ++i)
    for (std::size_t j = i + 1; j < closed.size(); ++j) {
      const Closed& a = closed[i];
      const Closed& b = closed[j];
      if (!same_type(a.typed.type, b.typed.type) || a.plays.strategy.plays != b.plays.strategy.plays) continue;
      ++rep.equal_pairs;
      for (const Observation& o : observations(a.typed.type)) {
        ++rep.observations;
        std::string ra, rb;
        try {
          ra = print_term(eval({o.wrap(a.typed.term), {}}, fuel).term);
          rb = print_term(eval({o.wrap(b.typed.term), {}}, fuel).term);
        } catch (const EvalError& e) {
          rep.failures.push_back(a.name + " / " + b.name + " under " + o.name + ": " + e.what());
          continue;
        }
        if (ra != rb) rep.failures.push_back(a.name + " / " + b.name + " under " + o.name + ": " + ra + " vs " + rb);
      }
    }
  return rep;
}

}  // namespace cgw::algol
