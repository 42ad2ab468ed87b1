#include <benchmark/benchmark.h>

#include "rlm/generators.hpp"
#include "rlm/loops.hpp"
#include "rlm/measure.hpp"
#include "rlm/observables.hpp"
#include "rlm/sparsity.hpp"

using namespace rlm;

namespace {

// Tracing cost against n on random 3-regular graphs at t = 1.
void BM_TraceLoops(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Graph g = gen_random_regular(n, 3, 1);
  const MarkConfig marks = sample_marks(g, 1.0, 0.5, 2);
  for (auto _ : state) benchmark::DoNotOptimize(trace_loops(g, marks).num_loops());
  state.counters["marks"] = static_cast<double>(marks.size());
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TraceLoops)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

void BM_InsertionVolumes(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Graph g = gen_random_regular(n, 3, 1);
  const MarkConfig marks = sample_marks(g, 1.0, 0.5, 2);
  const LoopSet loops = trace_loops(g, marks);
  for (auto _ : state) benchmark::DoNotOptimize(insertion_volumes(g, marks, loops).total());
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_InsertionVolumes)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

// Exhaustive certification at eps = 1, eta = 0.2 on ER(n, 5).
void BM_SparsityExhaustive(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Graph g = gen_erdos_renyi(n, 5.0, 3);
  SparsityOptions o;
  o.eta = 0.2;
  o.eps = 1.0;
  std::uint64_t work = 0;
  for (auto _ : state) work = sparsity_check(g, o).work;
  state.counters["work"] = static_cast<double>(work);
}
BENCHMARK(BM_SparsityExhaustive)->DenseRange(20, 60, 20)->Unit(benchmark::kMillisecond);

void BM_McmcStep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Graph g = gen_random_regular(n, 8, 4);
  ChainState chain = make_chain(g, sample_marks(g, 2.0, 1.0, 5));
  Rng rng = make_rng(6);
  for (auto _ : state) mcmc_step(g, chain, 2.0, 2.0, 1.0, rng);
  state.counters["accept"] = static_cast<double>(chain.accepted()) / static_cast<double>(chain.steps);
}
BENCHMARK(BM_McmcStep)->Arg(16)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
