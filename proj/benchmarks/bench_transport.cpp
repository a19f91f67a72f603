#include <benchmark/benchmark.h>

#include "contact_focus/contact.hpp"
#include "contact_focus/transport.hpp"

using namespace contact_focus;

namespace {

void BM_Rk4Step(benchmark::State& state) {
  const auto system = DriftSystem::duffing(DuffingParams{});
  Vec y(2);
  y << 0.3, -0.1;
  double t = 0.0;
  for (auto _ : state) {
    y = rk4_step([&](double s, const Vec& v) { return eval_drift(system, s, v); }, t, y, 1e-3);
    t += 1e-3;
    benchmark::DoNotOptimize(y.data());
  }
}
BENCHMARK(BM_Rk4Step);

void BM_H2Direct(benchmark::State& state) {
  const auto system = DriftSystem::duffing(DuffingParams{});
  const auto path = integrate_characteristic(system, Vec::Zero(2), 0.0, static_cast<double>(state.range(0)));
  for (auto _ : state) {
    auto series = h2_direct(system, path, Mat::Identity(2, 2));
    benchmark::DoNotOptimize(series.values.back().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(path.size()));
}
BENCHMARK(BM_H2Direct)->Arg(1)->Arg(20)->Unit(benchmark::kMillisecond);

// One forced Duffing case as run by fig1: t_end = 20 at h = 1e-3.
void BM_RunFocusing(benchmark::State& state) {
  ContactConfig c;
  c.system = DriftSystem::duffing(DuffingParams{});
  c.mode = state.range(0) ? CouplingMode::coupled : CouplingMode::locked;
  c.y0 = Vec::Zero(2);
  c.phi0 = Vec{{0.1, 0.1}};
  c.h2_0 = Mat::Identity(2, 2);
  c.t_end = 20.0;
  c.stride = 10;
  c.fit_window = {20.0 / 3.0, 20.0};
  for (auto _ : state) {
    auto rec = run_focusing(c);
    benchmark::DoNotOptimize(rec.rows.back().epsilon);
  }
}
BENCHMARK(BM_RunFocusing)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
