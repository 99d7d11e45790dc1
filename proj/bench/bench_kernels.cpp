// Serial reference against OpenMP version for each parallel kernel.

#include "paradoxlab/analysis.hpp"
#include "paradoxlab/rules.hpp"
#include "paradoxlab/witness.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using namespace paradoxlab;

static void BM_ForcedTableSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(theorem1_forced_table_serial());
}
BENCHMARK(BM_ForcedTableSerial)->Unit(benchmark::kMillisecond);

static void BM_ForcedTableParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(theorem1_forced_table());
}
BENCHMARK(BM_ForcedTableParallel)->Unit(benchmark::kMillisecond);

static void BM_BranchingSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(branching_simulation_serial(1, state.range(0), 30));
}
BENCHMARK(BM_BranchingSerial)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_BranchingParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(branching_simulation(1, state.range(0), 30));
}
BENCHMARK(BM_BranchingParallel)->Arg(100000)->Unit(benchmark::kMillisecond);

namespace {

struct Ex5Fixture {
  Rule rule = example5_rule();
  std::vector<Word> words;
  std::vector<Point> points;
  BitField bits;
  Colouring colouring;

  explicit Ex5Fixture(int radius) : words(rule.presentation.ball(radius)), points(plain_points(words)) {
    bits = random_bits(std::span<const Word>(words), 7);
    colouring = example5_bfs_witness(words, bits);
  }
};

}  // namespace

static void BM_SatisfactionSerial(benchmark::State& state) {
  const Ex5Fixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(check_satisfaction_serial(f.rule, f.points, f.colouring, f.bits));
}
BENCHMARK(BM_SatisfactionSerial)->Arg(7)->Unit(benchmark::kMillisecond);

static void BM_SatisfactionParallel(benchmark::State& state) {
  const Ex5Fixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(check_satisfaction(f.rule, f.points, f.colouring, f.bits));
}
BENCHMARK(BM_SatisfactionParallel)->Arg(7)->Unit(benchmark::kMillisecond);

static void BM_InclusionExclusionSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(inclusion_exclusion_batch_serial(3, state.range(0)));
}
BENCHMARK(BM_InclusionExclusionSerial)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_InclusionExclusionParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(inclusion_exclusion_batch(3, state.range(0)));
}
BENCHMARK(BM_InclusionExclusionParallel)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
