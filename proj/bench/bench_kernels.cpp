// bench_kernels.cpp — serial vs OpenMP timings for the hot loops.
//
// Run with --benchmark_filter=Ensemble to compare worker counts; the argument
// is the worker count (0 = serial reference path).

#include "rydcqed/dynamics.hpp"
#include "rydcqed/master.hpp"
#include "rydcqed/models.hpp"
#include "rydcqed/observables.hpp"

#include <benchmark/benchmark.h>

using namespace rydcqed;

namespace {

PhysicalParams fig4_like() {
    PhysicalParams p;
    p.alpha = mhz(1.5);
    p.delta_probe = effective_coupling(p) / std::sqrt(2.0);
    return p;
}

void BM_Trajectory(benchmark::State& state) {
    const auto p = fig4_like();
    const auto H = build_ladder_hamiltonian(p);
    const auto jumps = jump_operators(p);
    const auto psi0 = StateVector::basis_state(p.basis(), 0, 0);
    TrajectoryConfig cfg;
    cfg.t_final = 5.0;
    std::uint64_t stream = 0;
    for (auto _ : state) {
        auto rec = run_trajectory(H, jumps, psi0, cfg, stream++);
        benchmark::DoNotOptimize(rec.mean_photon.data());
    }
}
BENCHMARK(BM_Trajectory)->Unit(benchmark::kMillisecond);

void BM_Ensemble(benchmark::State& state) {
    const auto p = fig4_like();
    const auto H = build_ladder_hamiltonian(p);
    const auto jumps = jump_operators(p);
    const auto psi0 = StateVector::basis_state(p.basis(), 0, 0);
    TrajectoryConfig cfg;
    cfg.t_final = 2.0;
    EnsembleOptions opt;
    opt.trajectories = 64;
    const int workers = static_cast<int>(state.range(0));
    opt.execution = workers == 0 ? Execution::serial : Execution::parallel;
    opt.workers = workers;
    for (auto _ : state) {
        auto res = run_ensemble(H, jumps, psi0, cfg, opt);
        benchmark::DoNotOptimize(res.average.mean_photon.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(opt.trajectories));
}
BENCHMARK(BM_Ensemble)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_SteadyState(benchmark::State& state) {
    auto p = fig4_like();
    p.photon_cutoff = static_cast<int>(state.range(0));
    const auto H = build_ladder_hamiltonian(p);
    const auto jumps = jump_operators(p);
    for (auto _ : state) {
        auto rho = steady_state(H, jumps);
        benchmark::DoNotOptimize(rho.matrix().data());
    }
}
BENCHMARK(BM_SteadyState)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_Spectrum(benchmark::State& state) {
    PhysicalParams p;
    p.alpha = mhz(0.15);
    p.photon_cutoff = 4;
    const double g = effective_coupling(p);
    std::vector<double> grid(41);
    for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = -2 * g + 4 * g * i / 40.0;
    const int workers = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto res = transmission_spectrum(p, grid, workers == 0 ? Execution::serial : Execution::parallel,
                                         workers);
        benchmark::DoNotOptimize(res.mean_photon_ss.data());
    }
}
BENCHMARK(BM_Spectrum)->Arg(0)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

} // namespace

BENCHMARK_MAIN();
