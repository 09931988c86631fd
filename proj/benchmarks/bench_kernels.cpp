#include <pnls/pnls.hpp>

#include <benchmark/benchmark.h>

using namespace pnls;

namespace {

EquationParams quintic() {
    EquationParams p;
    p.p = 5;
    p.sign = Sign::defocusing;
    return p;
}

void BM_FftNonlinearity(benchmark::State& state) {
    const auto grid = GridSpec::for_exponent(int(state.range(0)), 5);
    const auto u = random_sobolev_data(0.6, 0.05, 1, grid, 0.3);
    const auto params = quintic();
    for (auto _ : state) benchmark::DoNotOptimize(nonlinearity(u, params));
    state.counters["samples"] = double(grid.samples());
}
BENCHMARK(BM_FftNonlinearity)->Arg(64)->Arg(256)->Arg(512)->Arg(1024);

void BM_DirectSplit(benchmark::State& state) {
    const auto grid = GridSpec::for_exponent(int(state.range(0)), 5);
    const auto u = random_sobolev_data(0.6, 0.05, 2, grid, 0.3);
    const auto params = quintic();
    for (auto _ : state) benchmark::DoNotOptimize(split_nonlinearity(u, params));
}
BENCHMARK(BM_DirectSplit)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_NormalFormT(benchmark::State& state) {
    const auto grid = GridSpec::for_exponent(int(state.range(0)), 5);
    const auto u = random_sobolev_data(0.6, 0.05, 3, grid, 0.3);
    const auto params = quintic();
    const CaseConstants constants{};
    for (auto _ : state) benchmark::DoNotOptimize(apply_T(u, u, params, constants));
}
BENCHMARK(BM_NormalFormT)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_Etdrk4Step(benchmark::State& state) {
    const auto grid = GridSpec::for_exponent(int(state.range(0)), 5);
    const auto u0 = random_sobolev_data(0.6, 0.05, 4, grid, 0.3);
    const auto params = quintic();
    const double dt = 1e-5;
    StepperConfig cfg{dt, Scheme::exponential_rk4, 1 << 30};
    for (auto _ : state) benchmark::DoNotOptimize(evolve(u0, params, cfg, 10 * dt));
    state.SetItemsProcessed(state.iterations() * 10);
}
BENCHMARK(BM_Etdrk4Step)->Arg(256)->Arg(512)->Unit(benchmark::kMicrosecond);

void BM_StrangStep(benchmark::State& state) {
    const auto grid = GridSpec::for_exponent(int(state.range(0)), 5);
    const auto u0 = random_sobolev_data(0.6, 0.05, 5, grid, 0.3);
    const auto params = quintic();
    const double dt = 1e-5;
    StepperConfig cfg{dt, Scheme::strang_split, 1 << 30};
    for (auto _ : state) benchmark::DoNotOptimize(evolve(u0, params, cfg, 10 * dt));
    state.SetItemsProcessed(state.iterations() * 10);
}
BENCHMARK(BM_StrangStep)->Arg(256)->Arg(512)->Unit(benchmark::kMicrosecond);

void BM_Enumeration(benchmark::State& state) {
    const CaseConstants constants{};
    for (auto _ : state) benchmark::DoNotOptimize(verify_decomposition(int(state.range(0)), 5, constants));
    const double n = 2.0 * double(state.range(0)) + 1.0;
    state.SetItemsProcessed(state.iterations() * std::int64_t(n * n * n * n * n));
}
BENCHMARK(BM_Enumeration)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
