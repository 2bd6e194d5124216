// Acceptance run: one pass/FAIL line per criterion, built from the named
// suites. A criterion with a time limit fails when its checks exceed it.

#include "cgw/algol/programs.hpp"
#include "cgw/suites.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace cgw;

namespace {

using Clock = std::chrono::steady_clock;

struct Timed {
  std::vector<CheckLine> checks;
  double seconds = 0;
};

Timed timed_suites(const std::vector<std::string>& names, const RunConfig& cfg) {
  Timed t;
  const auto start = Clock::now();
  for (const std::string& n : names) {
    const SuiteReport r = run_suite(n, cfg);
    t.checks.insert(t.checks.end(), r.checks.begin(), r.checks.end());
  }
  t.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return t;
}

bool has_suffix(const std::string& s, const std::string& suf) {
  return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

struct Criterion {
  int id;
  std::string title;
  const Timed* run;
  std::function<bool(const CheckLine&)> select;
  double limit = 0;  // seconds; 0 means no bound
};

bool report(const Criterion& c) {
  std::size_t n = 0, failed = 0;
  std::string first;
  for (const CheckLine& l : c.run->checks) {
    if (l.status == CheckLine::Status::Info || !c.select(l)) continue;
    ++n;
    if (l.status == CheckLine::Status::Fail) {
      if (failed++ == 0) first = l.id + (l.witness.empty() ? "" : " (" + l.witness + ")");
    }
  }
  const bool slow = c.limit > 0 && c.run->seconds > c.limit;
  const bool ok = n > 0 && failed == 0 && !slow;
  std::printf("%-4s criterion %-2d %-24s %3zu checks  %7.3fs", ok ? "pass" : "FAIL", c.id, c.title.c_str(), n,
              c.run->seconds);
  if (c.limit > 0) std::printf(" (limit %gs)", c.limit);
  if (n == 0) std::printf("  no checks ran");
  if (failed) std::printf("  %zu failed, first: %s", failed, first.c_str());
  if (slow) std::printf("  over time");
  std::printf("\n");
  return ok;
}

}  // namespace

int main() {
  RunConfig cfg;  // seed 1, k = 2, L = 12, N_max = 8

  const Timed payoff = timed_suites({"payoff-axioms"}, cfg);
  const Timed bracketing = timed_suites({"bracketing"}, cfg);
  const Timed category = timed_suites({"category-laws"}, cfg);
  const Timed winning = timed_suites({"winning-closure"}, cfg);
  const Timed traced = timed_suites({"traced-axioms"}, cfg);
  const Timed comonoid = timed_suites({"comonoid"}, cfg);
  const Timed async = timed_suites({"innocence", "positional", "rel-functoriality"}, cfg);

  // operational runs alone, so their time is not mixed with denotation
  Timed operational;
  {
    const auto start = Clock::now();
    for (const algol::ProgramCase& c : algol::load_programs(algol::data_file("algol/corpus.txt"))) {
      const algol::RunOutcome r = algol::run_program(c, cfg.fuel);
      operational.checks.push_back({"run." + c.name, r.ok ? CheckLine::Status::Pass : CheckLine::Status::Fail, r.detail});
    }
    operational.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  }
  const Timed correction = timed_suites({"algol-correction"}, cfg);

  auto all = [](const CheckLine&) { return true; };
  auto prefix = [](std::string p) { return [p](const CheckLine& l) { return l.id.rfind(p, 0) == 0; }; };
  const std::vector<Criterion> criteria = {
      {1, "payoff axioms", &payoff, all, 1},
      {2, "bool plays", &bracketing, all},
      {3, "category laws", &category, [](const CheckLine& l) { return !has_suffix(l.id, ".witness"); }, 10},
      {4, "unique witness", &category, [](const CheckLine& l) { return has_suffix(l.id, ".witness"); }},
      {5, "winning closure", &winning, all},
      {6, "traced axioms", &traced, all, 30},
      {7, "exponential", &comonoid, all},
      {8, "async layer", &async, all, 30},
      {9, "algol operational", &operational, all, 1},
      {10, "correction", &correction, prefix("correction."), 120},
  };
  bool ok = true;
  for (const Criterion& c : criteria) ok = report(c) && ok;
  std::printf("%s\n", ok ? "all criteria pass" : "some criteria FAIL");
  return ok ? 0 : 1;
}
