#include <benchmark/benchmark.h>

#include <vector>

#include "nettest/lagrange.hpp"
#include "nettest/rng.hpp"

namespace {

nettest::CenteredCounts integer_counts(int n, double h0) {
  nettest::RngStream rng(2, 0);
  std::vector<double> raw(n);
  for (double& x : raw) {
    // small Poisson-ish integers, the shape the sparse tests see
    int k = 0;
    double acc = rng.next_double();
    while (acc > 0.27 && k < 12) {
      ++k;
      acc *= rng.next_double();
    }
    x = k;
  }
  return nettest::center_counts(raw, h0);
}

void bm_solve_root(benchmark::State& state) {
  const nettest::CenteredCounts h =
      integer_counts(static_cast<int>(state.range(0)), 4.0 / 3.0);
  for (auto _ : state) benchmark::DoNotOptimize(nettest::solve_root(h));
}
BENCHMARK(bm_solve_root)->Arg(500)->Arg(100000);

void bm_weights(benchmark::State& state) {
  const nettest::CenteredCounts h =
      integer_counts(static_cast<int>(state.range(0)), 4.0 / 3.0);
  const double lambda = nettest::solve_root(h).lambda_hat;
  for (auto _ : state) benchmark::DoNotOptimize(nettest::weights(h, lambda));
}
BENCHMARK(bm_weights)->Arg(500)->Arg(100000);

}  // namespace
