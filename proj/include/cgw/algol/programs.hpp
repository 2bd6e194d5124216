#pragma once

// Program corpora, observation contexts and the checks run over them.

#include "cgw/algol/denote.hpp"
#include "cgw/algol/eval.hpp"
#include "cgw/algol/syntax.hpp"

#include <functional>
#include <string>
#include <vector>

namespace cgw::algol {

struct ProgramCase {
  std::string name;
  std::string source;  // term text as written
  TermP term;
  Store store;
  TermP value;        // expected canonical form
  Store final_store;  // expected store after evaluation
  std::string note;
};

// Blocks of "[name]" followed by "key = value" lines (term, store, value,
// final, note). Throws std::runtime_error with the line on malformed input.
std::vector<ProgramCase> parse_programs(const std::string& text);
std::vector<ProgramCase> load_programs(const std::string& path);

// Path of a bundled data file.
std::string data_file(const std::string& rel);

struct RunOutcome {
  bool ok = false;
  bool fuel_exhausted = false;
  Config result;
  EvalStats stats;
  std::string detail;
};

// Evaluates a case and compares value and final store exactly.
RunOutcome run_program(const ProgramCase& c, std::size_t fuel);

struct Observation {
  std::string name;  // e.g. "zero([])"
  std::function<TermP(const TermP&)> wrap;
};

// Closing contexts of ground type built from zero, if, projections and
// applications to canonical arguments.
std::vector<Observation> observations(const TypeP& t, int depth = 2);

struct SoundnessReport {
  std::size_t equal_pairs = 0;
  std::size_t observations = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

// For every pair of closed programs of one type with equal play sets, every
// observation evaluates both to the same canonical form.
SoundnessReport equational_soundness(const std::vector<ProgramCase>& cases, const DenoteConfig& cfg, std::size_t fuel);

}  // namespace cgw::algol
