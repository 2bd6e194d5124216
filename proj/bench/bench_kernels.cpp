// OpenMP kernels against their serial references. Each fixture first checks
// that both versions agree.

#include "cgw/corpus.hpp"
#include "cgw/engine.hpp"
#include "cgw/monoidal.hpp"

#include <benchmark/benchmark.h>

#include <stdexcept>

using namespace cgw;

namespace {

const Game& payoff_game() {
  static const Game g = loli(tensor(nat_game(8), bool_game()), nat_game(8));
  return g;
}

const Strategy& winning_strategy() {
  static const Strategy s = [] {
    const Strategy c = copycat(tensor(nat_game(8), nat_game(8)));
    if (is_winning(c).winning != is_winning_serial(c).winning) throw std::logic_error("is_winning disagrees");
    return c;
  }();
  return s;
}

const BehaviourPtr& behaviour() {
  static const BehaviourPtr b = trie_behaviour(copycat(tensor(nat_game(8), tensor(nat_game(8), bool_game()))));
  return b;
}

const std::vector<TraceCorpusInstance>& corpus() {
  static const std::vector<TraceCorpusInstance> c = trace_corpus(1, 50, 6);
  return c;
}

void BM_validate_payoff(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(validate_payoff(payoff_game()).ok());
}
void BM_validate_payoff_serial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(validate_payoff_serial(payoff_game()).ok());
}

void BM_is_winning(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(is_winning(winning_strategy()).winning);
}
void BM_is_winning_serial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(is_winning_serial(winning_strategy()).winning);
}

void BM_materialize(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(materialize(*behaviour(), 12).strategy.plays.size());
}
void BM_materialize_serial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(materialize_serial(*behaviour(), 12).strategy.plays.size());
}

void BM_trace_axioms(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(trace_axiom_suite(corpus()).size());
}
void BM_trace_axioms_serial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(trace_axiom_suite_serial(corpus()).size());
}

}  // namespace

BENCHMARK(BM_validate_payoff)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_validate_payoff_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_is_winning)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_is_winning_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_materialize)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_materialize_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_trace_axioms)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_trace_axioms_serial)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  if (validate_payoff(payoff_game()).ok() != validate_payoff_serial(payoff_game()).ok())
    throw std::logic_error("validate_payoff disagrees");
  if (materialize(*behaviour(), 12).strategy != materialize_serial(*behaviour(), 12).strategy)
    throw std::logic_error("materialize disagrees");
  benchmark::Initialize(&argc, argv);
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
