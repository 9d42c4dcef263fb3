#include <benchmark/benchmark.h>

#include <algorithm>
#include <set>

#include "gbp/generators.hpp"
#include "gbp/habitat_graph.hpp"
#include "gbp/matching.hpp"
#include "gbp/set_packing.hpp"

using namespace gbp;

namespace {

WeightedGraph random_weighted(int nodes, int edges, Seed seed) {
  Rng rng(seed);
  WeightedGraph wg;
  wg.node_count = nodes;
  std::set<std::pair<int, int>> seen;
  for (int i = 0; i < edges; ++i) {
    int u = static_cast<int>(rng.below(static_cast<std::uint64_t>(nodes)));
    int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(nodes)));
    if (u != v && seen.insert({std::min(u, v), std::max(u, v)}).second)
      wg.edges.push_back({u, v, static_cast<Cost>(rng.between(1, 100))});
  }
  return wg;
}

void BM_Blossom(benchmark::State &state) {
  const int n = static_cast<int>(state.range(0));
  WeightedGraph wg = random_weighted(n, 4 * n, 7);
  for (auto _ : state)
    benchmark::DoNotOptimize(max_weight_matching(wg).weight);
  state.SetComplexityN(n);
}
BENCHMARK(BM_Blossom)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void BM_SetPacking(benchmark::State &state) {
  const int r = static_cast<int>(state.range(0));
  PlaneGraph pg = random_plane_graph(500, 3);
  HabitatGraph hg = simplify(build_habitat_graph(gen_cycle_instance(pg.graph, pg.costs, r, 6, 3)));
  for (auto _ : state)
    benchmark::DoNotOptimize(max_weight_set_packing(hg).matching.weight);
}
BENCHMARK(BM_SetPacking)->Arg(10)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);

} // namespace
