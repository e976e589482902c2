#include <benchmark/benchmark.h>

#include "mapforge/closure.hpp"
#include "mapforge/geodesics.hpp"
#include "mapforge/metric.hpp"
#include "mapforge/snake.hpp"

using namespace mapforge;

namespace {

Family family_arg(const benchmark::State& st) { return st.range(1) ? Family::Quadrangulation : Family::Triangulation; }

void BM_SampleTree(benchmark::State& st) {
  Rng rng(1);
  for (auto _ : st) benchmark::DoNotOptimize(sample_blossoming_tree(st.range(0), family_arg(st), rng));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_SampleTreeRejection(benchmark::State& st) {
  Rng rng(1);
  for (auto _ : st) benchmark::DoNotOptimize(sample_gw_tree_rejection(st.range(0), family_arg(st), rng));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_Close(benchmark::State& st) {
  Rng rng(2);
  const auto t0 = sample_blossoming_tree(st.range(0), family_arg(st), rng);
  const auto t = reroot(t0, balanced_corners(t0).first);
  for (auto _ : st) benchmark::DoNotOptimize(close(t));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_Open(benchmark::State& st) {
  Rng rng(3);
  const auto c = sample_rooted_map(st.range(0), family_arg(st), rng);
  for (auto _ : st) benchmark::DoNotOptimize(open(c.map, c.orientation, c.family));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_MinimalOrientation(benchmark::State& st) {
  Rng rng(4);
  const auto c = sample_rooted_map(st.range(0), family_arg(st), rng);
  for (auto _ : st) benchmark::DoNotOptimize(minimal_orientation(c.map, c.family));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_Bfs(benchmark::State& st) {
  Rng rng(5);
  const auto c = sample_rooted_map(st.range(0), family_arg(st), rng);
  const Adjacency adj(c.map);
  VertexId s = 0;
  for (auto _ : st) {
    benchmark::DoNotOptimize(bfs_distance(adj, s));
    s = (s + 7919) % static_cast<VertexId>(c.inner_count());
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_GhBruteforce(benchmark::State& st) {
  Rng rng(6);
  const auto k = static_cast<std::size_t>(st.range(0));
  auto space = [&] {
    std::vector<std::vector<double>> d(k, std::vector<double>(k, 0));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) d[i][j] = d[j][i] = 1 + static_cast<double>(rng.below(9));
    for (std::size_t m = 0; m < k; ++m)
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) d[i][j] = std::min(d[i][j], d[i][m] + d[m][j]);
    return FiniteMetricSpace(d);
  };
  const auto A = space(), B = space();
  for (auto _ : st) benchmark::DoNotOptimize(gh_bruteforce(A, B));
}

}  // namespace

BENCHMARK(BM_SampleTree)->ArgsProduct({{1000, 10000, 100000}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleTreeRejection)->ArgsProduct({{1000, 10000}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Close)->ArgsProduct({{1000, 10000, 100000}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Open)->ArgsProduct({{1000, 10000}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MinimalOrientation)->ArgsProduct({{1000, 10000}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Bfs)->ArgsProduct({{10000, 100000}, {0, 1}})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_GhBruteforce)->DenseRange(3, 6)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
