// Microbenchmarks for the hot paths of the solver: spectral projection,
// functional evaluation with and without the adjoint gradient, the
// preconditioned minimization step, and the classical reference stepper.

#include <benchmark/benchmark.h>

#include "varns/minimize.hpp"
#include "varns/oracle.hpp"
#include "varns/random.hpp"

using namespace varns;

namespace {

VectorField bench_slice(const Grid& g) {
  Rng rng(17);
  return random_divfree_slice(g, rng, 5, 8);
}

SpaceTimeField bench_field(const Grid& g, const TimeGrid& t) {
  Rng rng(17);
  const VectorField v0 = random_divfree_slice(g, rng, 5, 8);
  return random_admissible(g, t, v0, rng, 5, 6, 0.5);
}

FunctionalSpec bench_spec(const SpaceTimeField& u) {
  double sup = 0.0;
  for (const auto& s : u.slices) sup = std::max(sup, max_speed_sq(s));
  FunctionalSpec spec;
  spec.kind = FunctionalKind::navier_stokes;
  spec.model = FluxModel::cutoff(sup + 1.0);
  spec.v0 = u.slice(0);
  return spec;
}

void BM_LerayProject(benchmark::State& state) {
  const Grid g(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
  const SpectralOps ops(g);
  const VectorField v = bench_slice(g);
  for (auto _ : state) benchmark::DoNotOptimize(ops.leray_project(v));
}
BENCHMARK(BM_LerayProject)->Arg(64)->Arg(128);

void BM_FluxField(benchmark::State& state) {
  const Grid g(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
  const VectorField v = bench_slice(g);
  const FluxModel model = FluxModel::cutoff(max_speed_sq(v) + 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(flux_field(model, v));
}
BENCHMARK(BM_FluxField)->Arg(64)->Arg(128);

void BM_Evaluate(benchmark::State& state) {
  const Grid g(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
  const TimeGrid t(32, 1.0);
  const SpectralOps ops(g);
  const SpaceTimeField u = bench_field(g, t);
  const FunctionalSpec spec = bench_spec(u);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(u, spec, ops).value);
}
BENCHMARK(BM_Evaluate)->Arg(32)->Arg(64);

void BM_EvaluateWithGradient(benchmark::State& state) {
  const Grid g(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
  const TimeGrid t(32, 1.0);
  const SpectralOps ops(g);
  const SpaceTimeField u = bench_field(g, t);
  const FunctionalSpec spec = bench_spec(u);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(u, spec, ops, true).w_norm);
}
BENCHMARK(BM_EvaluateWithGradient)->Arg(32)->Arg(64);

void BM_MinimizeTaylorGreen(benchmark::State& state) {
  const Grid g(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
  const TimeGrid t(32, 1.0);
  const SpectralOps ops(g);
  FunctionalSpec spec;
  spec.kind = FunctionalKind::navier_stokes;
  spec.model = FluxModel::cutoff(4.0);
  spec.v0 = taylor_green(1.0).sample_at(g, 0.0);
  const SpaceTimeField init = constant_in_time(g, t, spec.v0);
  for (auto _ : state)
    benchmark::DoNotOptimize(minimize(spec, init, MinimizeConfig{}, ops).final_value);
}
BENCHMARK(BM_MinimizeTaylorGreen)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_ReferenceSolve(benchmark::State& state) {
  const Grid g(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
  const TimeGrid t(32, 1.0);
  const SpectralOps ops(g);
  const VectorField v0 = taylor_green(1.0).sample_at(g, 0.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        reference_solve(v0, 1.0, t, 256, FluxModel::cutoff(4.0), ops).steps);
}
BENCHMARK(BM_ReferenceSolve)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
