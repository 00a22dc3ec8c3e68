#include <benchmark/benchmark.h>

#include "nettest/counting.hpp"
#include "nettest/rng.hpp"
#include "nettest/sampler.hpp"

namespace {

nettest::Graph er_graph(int m, double p) {
  nettest::RngStream rng(1, 0);
  return nettest::sample_er(nettest::make_er(m, p), rng);
}

void bm_count_triangles_sparse(benchmark::State& state) {
  const nettest::Graph g = er_graph(static_cast<int>(state.range(0)), 0.02);
  for (auto _ : state)
    benchmark::DoNotOptimize(nettest::count_motif(g, nettest::triangle_motif()));
}
BENCHMARK(bm_count_triangles_sparse)->Arg(100)->Arg(300);

void bm_count_triangles_dense(benchmark::State& state) {
  const nettest::Graph g = er_graph(static_cast<int>(state.range(0)), 0.3);
  for (auto _ : state)
    benchmark::DoNotOptimize(nettest::count_motif(g, nettest::triangle_motif()));
}
BENCHMARK(bm_count_triangles_dense)->Arg(30)->Arg(100);

void bm_hom_density_c4(benchmark::State& state) {
  const nettest::Graph g = er_graph(static_cast<int>(state.range(0)), 0.3);
  for (auto _ : state)
    benchmark::DoNotOptimize(nettest::hom_density(g, nettest::c4_motif()));
}
BENCHMARK(bm_hom_density_c4)->Arg(50)->Arg(150);

}  // namespace
