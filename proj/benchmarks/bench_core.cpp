#include <benchmark/benchmark.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lsmapper/codomains.hpp"
#include "lsmapper/cover.hpp"
#include "lsmapper/filters.hpp"
#include "lsmapper/generators.hpp"
#include "lsmapper/graph.hpp"
#include "lsmapper/mapper.hpp"
#include "lsmapper/pseudometric.hpp"

using namespace lsm;

namespace {

void BM_NeighborhoodGraph(benchmark::State& state) {
  Rng rng(1);
  auto n = static_cast<std::size_t>(state.range(0));
  auto cloud = gen_annulus(n, 1.0, 2.0, rng);
  double delta = 0.2 * std::sqrt(2000.0 / static_cast<double>(n));
  for (auto _ : state) benchmark::DoNotOptimize(build_neighborhood_graph(cloud, delta));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_NeighborhoodGraph)->RangeMultiplier(4)->Range(500, 8000)->Complexity();

void BM_MinimaxScalarAllPairs(benchmark::State& state) {
  Rng rng(2);
  auto n = static_cast<std::size_t>(state.range(0));
  auto cloud = gen_circle(n, 1.0, 0.0, rng);
  auto g = build_neighborhood_graph(cloud, 0.1);
  auto sg = subdivide_and_embed(g, coordinate_filter(cloud, 1), 0);
  auto vg = sg.as_valued_graph();
  std::vector<std::size_t> targets(32);
  std::iota(targets.begin(), targets.end(), std::size_t{0});
  for (auto _ : state) benchmark::DoNotOptimize(minimax_all_pairs_scalar(vg, targets));
}
BENCHMARK(BM_MinimaxScalarAllPairs)->Arg(500)->Arg(2000);

void BM_GedBeam(benchmark::State& state) {
  Rng rng(3);
  auto n = static_cast<std::size_t>(state.range(0));
  auto a = gen_er_graph(n, 0.3, rng);
  auto b = gen_er_graph(n, 0.6, rng);
  GraphCodomain z;
  for (auto _ : state) benchmark::DoNotOptimize(z.distance(Element{a}, Element{b}));
}
BENCHMARK(BM_GedBeam)->Arg(8)->Arg(20);

void BM_BuildMapper(benchmark::State& state) {
  Rng rng(4);
  auto cloud = gen_annulus(static_cast<std::size_t>(state.range(0)), 1.0, 2.0, rng);
  auto f = coordinate_filter(cloud, 1);
  auto g = build_neighborhood_graph(cloud, 0.2);
  auto sg = subdivide_and_embed(g, f, static_cast<std::size_t>(state.range(1)));
  auto [lo, hi] = std::minmax_element(f.values.begin(), f.values.end(), [](const Element& x, const Element& y) {
    return as_vector(x)[0] < as_vector(y)[0];
  });
  double r = resolution_for_interval_count(as_vector(*lo)[0], as_vector(*hi)[0], 15, 0.3);
  auto cover = build_hypercube_cover(f.values, r, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(build_mapper(sg, cover));
}
BENCHMARK(BM_BuildMapper)->Args({2000, 0})->Args({2000, 4});

}  // namespace

BENCHMARK_MAIN();
