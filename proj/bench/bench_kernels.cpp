#include "robinfem/analysis.hpp"
#include "robinfem/assembly.hpp"
#include "robinfem/problems.hpp"
#include "robinfem/solver.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using namespace robinfem;

namespace {

Execution execution(const benchmark::State& state) {
    return state.range(1) == 0 ? Execution::Serial : Execution::Parallel;
}

struct Fixture {
    Mesh mesh;
    Scheme scheme;
    ProblemData data;
    SparseSystem system;
    std::vector<double> solution;

    Fixture(int rings, Method method) : mesh(generate_disk_mesh(rings)), scheme{method, 1} {
        data = make_problem_data(find_problem("sinsin"), scheme.epsilon);
        system = assemble(mesh, scheme, data);
        solution = solve(system).x;
    }
};

const Fixture& fixture(int rings, Method method) {
    static std::vector<std::pair<std::pair<int, Method>, Fixture>> cache;
    for (const auto& [key, f] : cache) {
        if (key.first == rings && key.second == method) {
            return f;
        }
    }
    cache.emplace_back(std::pair{rings, method}, Fixture(rings, method));
    return cache.back().second;
}

void BM_AssembleNitsche(benchmark::State& state) {
    const Fixture& f = fixture(static_cast<int>(state.range(0)), Method::Nitsche);
    for (auto _ : state) {
        benchmark::DoNotOptimize(assemble(f.mesh, f.scheme, f.data, execution(state)));
    }
}

void BM_AssembleSipdg(benchmark::State& state) {
    const Fixture& f = fixture(static_cast<int>(state.range(0)), Method::SIPDG);
    for (auto _ : state) {
        benchmark::DoNotOptimize(assemble(f.mesh, f.scheme, f.data, execution(state)));
    }
}

void BM_Spmv(benchmark::State& state) {
    const Fixture& f = fixture(static_cast<int>(state.range(0)), Method::SIPDG);
    std::vector<double> y(f.solution.size());
    for (auto _ : state) {
        spmv(f.system.matrix, f.solution, y, execution(state));
        benchmark::DoNotOptimize(y.data());
    }
}

void BM_EnergyError(benchmark::State& state) {
    const Fixture& f = fixture(static_cast<int>(state.range(0)), Method::SIPDG);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            energy_error(f.mesh, f.system.dofmap, f.scheme, f.data, f.solution, {}, execution(state)));
    }
}

void BM_L2Error(benchmark::State& state) {
    const Fixture& f = fixture(static_cast<int>(state.range(0)), Method::Nitsche);
    for (auto _ : state) {
        benchmark::DoNotOptimize(l2_error(f.mesh, f.system.dofmap, f.data, f.solution, {}, execution(state)));
    }
}

} // namespace

// Args: {rings, 0 = serial / 1 = parallel}.
BENCHMARK(BM_AssembleNitsche)->ArgsProduct({{16, 64}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssembleSipdg)->ArgsProduct({{16, 64}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Spmv)->ArgsProduct({{16, 64}, {0, 1}})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_EnergyError)->ArgsProduct({{16, 64}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_L2Error)->ArgsProduct({{16, 64}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
