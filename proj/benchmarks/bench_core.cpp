#include <benchmark/benchmark.h>

#include "duowalk/hamiltonian.hpp"
#include "duowalk/observables.hpp"
#include "duowalk/propagator.hpp"
#include "duowalk/state.hpp"

using namespace duowalk;

namespace {

TwoParticleState centered_bound_state(int n) {
    const ChainSpec chain{n, 1.0, 0.0};
    const int center = (n + 1) / 2;
    return build_initial_state(chain, InitialCondition::phased(center, center, 0.0));
}

void BM_ApplyHamiltonian(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ChainSpec chain{n, 1.0, 4.0};
    const TwoParticleState psi = centered_bound_state(n);
    TwoParticleState out = make_zero_state(n);
    for (auto _ : state) {
        apply_hamiltonian(chain, psi.amplitudes, out.amplitudes);
        benchmark::DoNotOptimize(out.amplitudes.data());
    }
    state.SetItemsProcessed(state.iterations() * chain.dimension());
}
BENCHMARK(BM_ApplyHamiltonian)->Arg(100)->Arg(201)->Arg(300);

void BM_TaylorStep(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ChainSpec chain{n, 1.0, 4.0};
    TwoParticleState psi = centered_bound_state(n);
    const PropagatorConfig cfg;
    for (auto _ : state) {
        psi = taylor_step(chain, psi, cfg);
        benchmark::DoNotOptimize(psi.amplitudes.data());
    }
    state.SetItemsProcessed(state.iterations() * chain.dimension() * cfg.order);
}
BENCHMARK(BM_TaylorStep)->Arg(100)->Arg(201)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_ReduceToParticleA(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ChainSpec chain{n, 1.0, 4.0};
    TwoParticleState psi = centered_bound_state(n);
    // spread the state a little so the reduction sees realistic data
    const PropagatorConfig cfg;
    for (int s = 0; s < 100; ++s) psi = taylor_step(chain, psi, cfg);
    for (auto _ : state) {
        ReducedDensityMatrix rho = reduce_to_particle_a(psi);
        benchmark::DoNotOptimize(rho.entries.data());
    }
}
BENCHMARK(BM_ReduceToParticleA)->Arg(100)->Arg(201)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_FullRecord(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ChainSpec chain{n, 1.0, 4.0};
    TwoParticleState psi = centered_bound_state(n);
    const PropagatorConfig cfg;
    for (int s = 0; s < 100; ++s) psi = taylor_step(chain, psi, cfg);
    for (auto _ : state) {
        ObservableRecord rec = make_record(1.0, psi);
        benchmark::DoNotOptimize(&rec);
    }
}
BENCHMARK(BM_FullRecord)->Arg(201)->Arg(300)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
