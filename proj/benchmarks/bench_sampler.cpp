#include <benchmark/benchmark.h>

#include "nettest/sampler.hpp"

namespace {

void bm_sample_er(benchmark::State& state) {
  const nettest::ErModel model = nettest::make_er(static_cast<int>(state.range(0)), 0.02);
  nettest::RngStream rng(3, 0);
  for (auto _ : state) benchmark::DoNotOptimize(nettest::sample_er(model, rng));
}
BENCHMARK(bm_sample_er)->Arg(100)->Arg(500);

void bm_glauber_samples(benchmark::State& state) {
  const nettest::ErgmModel model = nettest::make_ergm(
      static_cast<int>(state.range(0)),
      {{nettest::edge_motif(), -0.35}, {nettest::triangle_motif(), 0.05}});
  nettest::SamplerConfig config;
  config.seed = 4;
  config.burn_in = 10;
  config.thin = 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(nettest::sample_ergm(model, config, 5));
}
BENCHMARK(bm_glauber_samples)->Arg(30)->Arg(60);

}  // namespace
