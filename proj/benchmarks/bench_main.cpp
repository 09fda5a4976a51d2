#include "vortexwave/dynamics.hpp"
#include "vortexwave/field.hpp"
#include "vortexwave/kernels.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

namespace {

vw::ScenarioConfig rankine(double h) {
  vw::ScenarioConfig c;
  c.name = "bench";
  c.patches.push_back({vw::PatchKind::disk, {0.0, 0.0}, 0.0, 0.5, 1.0});
  c.numerics.h = h;
  c.numerics.t_end = 1e-3;
  return c;
}

void BM_BlobSummation(benchmark::State& state) {
  const auto initial = vw::dynamics::init_scenario(rankine(0.5 / static_cast<double>(state.range(0))));
  const auto& cloud = initial.cloud;
  const auto sources = cloud.sources();
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(vw::field::sum_blob_velocity(sources, cloud.position(k)));
    k = (k + 1) % cloud.size();
  }
  state.counters["sources"] = static_cast<double>(cloud.size());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cloud.size()));
}
BENCHMARK(BM_BlobSummation)->Arg(25)->Arg(50)->Arg(100);

void BM_VelocityOnTargets(benchmark::State& state) {
  const auto initial = vw::dynamics::init_scenario(rankine(0.5 / static_cast<double>(state.range(0))));
  const auto& cloud = initial.cloud;
  std::vector<double> u(cloud.size()), v(cloud.size());
  for (auto _ : state) {
    vw::field::induced_velocity(cloud, cloud.xs(), cloud.ys(), u, v);
    benchmark::DoNotOptimize(u.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cloud.size() * cloud.size()));
}
BENCHMARK(BM_VelocityOnTargets)->Arg(25)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_Rk4Step(benchmark::State& state) {
  auto config = rankine(0.5 / static_cast<double>(state.range(0)));
  config.vortices.push_back({{0.0, 0.0}, 1.0});
  auto s = vw::dynamics::init_scenario(config);
  for (auto _ : state) {
    s = vw::dynamics::rk4_step(s, 1e-4);
    benchmark::DoNotOptimize(s.time);
  }
  state.counters["markers"] = static_cast<double>(s.cloud.size());
}
BENCHMARK(BM_Rk4Step)->Arg(25)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_RegularizedKernel(benchmark::State& state) {
  double x = 1e-3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(vw::kernels::regularized_kernel({x, 0.3 * x}, 0.01));
    x = x * 1.0001 + 1e-9;
    if (x > 1.0) x = 1e-3;
  }
}
BENCHMARK(BM_RegularizedKernel);

}  // namespace
BENCHMARK_MAIN();
