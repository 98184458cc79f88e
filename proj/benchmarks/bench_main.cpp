#include <complex>
#include <vector>

#include <benchmark/benchmark.h>

#include "crsharp/csphere.hpp"
#include "crsharp/inequalities.hpp"
#include "crsharp/spectral.hpp"

using namespace crsharp;

static void BM_EigenvalueClosed(benchmark::State& state) {
    const auto spec = spectral::ZonalKernelSpec::power(static_cast<int>(state.range(0)), 0.7);
    for (auto _ : state)
        for (int j = 0; j <= 50; ++j) benchmark::DoNotOptimize(spectral::eigenvalue_closed(spec, {j, 50 - j}));
}
BENCHMARK(BM_EigenvalueClosed)->Arg(1)->Arg(3);

static void BM_EigenvalueNumeric(benchmark::State& state) {
    const auto spec = spectral::ZonalKernelSpec::power(1, 0.5);
    const int j = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(spectral::eigenvalue_numeric(spec, {j, j}));
}
BENCHMARK(BM_EigenvalueNumeric)->Arg(0)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_HarmonicTransform(benchmark::State& state) {
    const csphere::QuadratureGrid grid = csphere::build_grid(1, csphere::default_resolution(1));
    const int J = static_cast<int>(state.range(0));
    const csphere::HarmonicTransform t(grid, J);
    std::vector<csphere::cplx> f(grid.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::abs(1.0 + 0.3 * grid.nodes[i].zeta[1]);
    for (auto _ : state) {
        const std::vector<csphere::cplx> c = t.forward(f);
        benchmark::DoNotOptimize(t.inverse(c).data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.size()));
}
BENCHMARK(BM_HarmonicTransform)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_KeyineqGrid(benchmark::State& state) {
    const int jmax = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(inequalities::verify_keyineq_grid(1, jmax).cases_total);
}
BENCHMARK(BM_KeyineqGrid)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_Maximize(benchmark::State& state) {
    const csphere::QuadratureGrid grid = csphere::build_grid(1, csphere::default_resolution(1));
    inequalities::MaximizeOptions opt;
    opt.seed = 7;
    for (auto _ : state) benchmark::DoNotOptimize(inequalities::maximize_quotient(1, 2.0, grid, opt).quotient);
}
BENCHMARK(BM_Maximize)->Unit(benchmark::kMillisecond);

static void BM_CenterOfMass(benchmark::State& state) {
    const csphere::QuadratureGrid grid = csphere::build_grid(1, csphere::default_resolution(1));
    std::vector<double> f(grid.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::pow(std::abs(1.0 + 0.7 * grid.nodes[i].zeta[1]), 4);
    for (auto _ : state) benchmark::DoNotOptimize(inequalities::solve_center_of_mass(f, grid, 1e-8).residual);
}
BENCHMARK(BM_CenterOfMass)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
