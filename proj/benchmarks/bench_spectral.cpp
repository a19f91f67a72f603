#include <benchmark/benchmark.h>

#include <random>

#include "contact_focus/spectral.hpp"

using namespace contact_focus;

static void BM_Eigenvalues(benchmark::State& state) {
  const auto m = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat a(m, m);
  for (auto& x : a.reshaped()) x = u(rng);
  for (auto _ : state) {
    auto ev = eigenvalues(a);
    benchmark::DoNotOptimize(ev.data());
  }
}
BENCHMARK(BM_Eigenvalues)->DenseRange(1, 4);
