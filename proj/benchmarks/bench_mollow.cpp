#include <benchmark/benchmark.h>

#include "mollow/liouvillian.hpp"
#include "mollow/observables.hpp"
#include "mollow/oracle.hpp"
#include "mollow/steadystate.hpp"

using namespace mollow;

namespace {

ModelParams jc(int n_cavity) {
    ModelParams p;
    p.g = 0.01;
    p.delta = 5.65652;
    p.n_cavity = n_cavity;
    return p;
}

ModelParams oms(int n_cavity, int n_mech) {
    ModelParams p;
    p.g_m = 0.3;
    p.delta = 5.65652;
    p.n_cavity = n_cavity;
    p.n_mech = n_mech;
    return p;
}

void BM_AssembleJC(benchmark::State& state) {
    const ModelParams p = jc(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(assemble(ModelKind::CascadedJC, p));
}
BENCHMARK(BM_AssembleJC)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_SolveJC(benchmark::State& state) {
    const ModelParams p = jc(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(solve_model(ModelKind::CascadedJC, p));
    state.counters["unknowns"] = static_cast<double>(4 * p.n_cavity * 4 * p.n_cavity);
}
BENCHMARK(BM_SolveJC)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_SolveJCIterative(benchmark::State& state) {
    const ModelParams p = jc(static_cast<int>(state.range(0)));
    SolverOptions o;
    o.force_iterative = true;
    for (auto _ : state) benchmark::DoNotOptimize(solve_model(ModelKind::CascadedJC, p, o));
}
BENCHMARK(BM_SolveJCIterative)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_AssembleOMS(benchmark::State& state) {
    const ModelParams p = oms(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(assemble(ModelKind::CascadedOMS, p));
}
BENCHMARK(BM_AssembleOMS)->Args({4, 4})->Args({8, 8})->Unit(benchmark::kMillisecond);

void BM_SolveOMS(benchmark::State& state) {
    const ModelParams p = oms(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(solve_model(ModelKind::CascadedOMS, p));
}
BENCHMARK(BM_SolveOMS)->Args({4, 4})->Args({8, 4})->Args({4, 8})->Unit(benchmark::kMillisecond);

void BM_ClosedForm(benchmark::State& state) {
    const oracle::OracleInput in = oracle::OracleInput::from(jc(8));
    for (auto _ : state) benchmark::DoNotOptimize(oracle::na_closed_form(in));
}
BENCHMARK(BM_ClosedForm);

}  // namespace
BENCHMARK_MAIN();
