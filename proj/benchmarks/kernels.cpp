#include <benchmark/benchmark.h>

#include <numbers>

#include "normlab/euler.hpp"
#include "normlab/flow_map.hpp"
#include "normlab/interpolation.hpp"
#include "normlab/littlewood_paley.hpp"
#include "normlab/multiplier.hpp"
#include "normlab/transport.hpp"

using namespace normlab;

namespace {

Field random_field(int n) {
  return transport::random_suite(grid2d(n, 2 * std::numbers::pi), 1, n / 4, 1).front();
}

void BM_ForwardInverseFft(benchmark::State& state) {
  const Field f = random_field(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    Field g = Field::from_values(f.grid(), f.values());
    benchmark::DoNotOptimize(Field::from_coefficients(f.grid(), g.coefficients()).values().data());
  }
}
BENCHMARK(BM_ForwardInverseFft)->Arg(256)->Arg(512)->Arg(1024);

void BM_RieszPair(benchmark::State& state) {
  const Field f = random_field(static_cast<int>(state.range(0)));
  const Multiplier R = riesz_pair(2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(apply_multiplier(R, f).coefficients().data());
}
BENCHMARK(BM_RieszPair)->Arg(256)->Arg(512);

void BM_BesovNorm(benchmark::State& state) {
  const Field f = random_field(static_cast<int>(state.range(0)));
  const lp::FilterBank bank(f.grid());
  for (auto _ : state) benchmark::DoNotOptimize(lp::besov_norm(bank, f, lp::critical_params(2)));
}
BENCHMARK(BM_BesovNorm)->Arg(256)->Arg(512);

void BM_EulerStep(benchmark::State& state) {
  const Field w = euler::dealiased(random_field(static_cast<int>(state.range(0))));
  euler::EulerSolver solver(w.grid(), true);
  euler::EulerState s{w, 0.0};
  for (auto _ : state) solver.step(s, 1e-3);
}
BENCHMARK(BM_EulerStep)->Arg(256)->Arg(512);

void BM_InterpolationPlan(benchmark::State& state) {
  const Field f = random_field(256);
  const auto phi = transport::integrate_flow(transport::cellular_velocity(0.1), f.grid(), 0.5, 0.05);
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const auto plan = InterpolationPlan::displaced(f.grid(), phi.forward_x, phi.forward_y, order);
    benchmark::DoNotOptimize(plan.apply(f).values().data());
  }
}
BENCHMARK(BM_InterpolationPlan)->Arg(6)->Arg(10);

}  // namespace
BENCHMARK_MAIN();
