// Serial reference kernels against their OpenMP versions on a reference-size
// homophyly graph. Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <map>
#include <numeric>

#include "homophyly/generator.hpp"
#include "homophyly/kernels.hpp"

using namespace homophyly;

namespace {

const ColoredGraph& graph(std::size_t n) {
  static std::map<std::size_t, ColoredGraph> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    GenParams p;
    p.n = n;
    it = cache.emplace(n, generate_homophyly(p).graph).first;
  }
  return it->second;
}

template <auto Kernel>
void bench_partition_kernel(benchmark::State& state) {
  const auto& g = graph(static_cast<std::size_t>(state.range(0)));
  const auto part = homochromatic_sets(g);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(g, part));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.node_count()));
}

template <auto Kernel>
void bench_node_kernel(benchmark::State& state) {
  const auto& g = graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(g));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.node_count()));
}

template <auto Kernel>
void bench_eccentricities(benchmark::State& state) {
  const auto& g = graph(static_cast<std::size_t>(state.range(0)));
  const Csr csr(g);
  std::vector<NodeId> sources(256);
  std::iota(sources.begin(), sources.end(), 0);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(csr, sources));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(sources.size()));
}

}  // namespace

BENCHMARK(bench_partition_kernel<kernels::serial::community_stats>)->Name("community_stats/serial")->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(bench_partition_kernel<kernels::parallel::community_stats>)->Name("community_stats/parallel")->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(bench_node_kernel<kernels::serial::degree_profiles>)->Name("degree_profiles/serial")->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(bench_node_kernel<kernels::parallel::degree_profiles>)->Name("degree_profiles/parallel")->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(bench_node_kernel<kernels::serial::node_widths>)->Name("node_widths/serial")->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(bench_node_kernel<kernels::parallel::node_widths>)->Name("node_widths/parallel")->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(bench_eccentricities<kernels::serial::eccentricities>)->Name("eccentricities/serial")->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(bench_eccentricities<kernels::parallel::eccentricities>)->Name("eccentricities/parallel")->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
