#include "speclab/fem.hpp"
#include "speclab/kernels.hpp"
#include "speclab/lattice.hpp"
#include "speclab/mesh.hpp"

#include <benchmark/benchmark.h>

using namespace speclab;

namespace {

const Mesh& mesh_at(int levels)
{
    static std::vector<Mesh> cache;
    while (static_cast<int>(cache.size()) <= levels) {
        cache.push_back(triangulate_levels(RegularPolygon{64, 1.0}, static_cast<int>(cache.size())));
    }
    return cache[levels];
}

void BM_ElementMatricesSerial(benchmark::State& state)
{
    const Mesh& m = mesh_at(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::serial::element_matrices(m));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long long>(m.triangles.size()));
}

void BM_ElementMatricesOmp(benchmark::State& state)
{
    const Mesh& m = mesh_at(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::omp::element_matrices(m));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long long>(m.triangles.size()));
}

void BM_LatticeCountSerial(benchmark::State& state)
{
    const double t = static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::serial::rectangle_lattice_count(2.0, 1.3, t));
    }
}

void BM_LatticeCountOmp(benchmark::State& state)
{
    const double t = static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::omp::rectangle_lattice_count(2.0, 1.3, t));
    }
}

void BM_AssembleAndSolve(benchmark::State& state)
{
    const Mesh& m = mesh_at(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_mesh(m, 4));
    }
}

}  // namespace

BENCHMARK(BM_ElementMatricesSerial)->DenseRange(2, 5)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ElementMatricesOmp)->DenseRange(2, 5)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_LatticeCountSerial)->Arg(1000)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_LatticeCountOmp)->Arg(1000)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_AssembleAndSolve)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
