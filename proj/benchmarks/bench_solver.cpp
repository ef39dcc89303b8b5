#include <benchmark/benchmark.h>

#include "fvspike/guess.hpp"
#include "fvspike/solver.hpp"
#include "fvspike/system.hpp"

using namespace fvspike;

namespace {

GridField recip_si(const Mesh& m) {
    BuiltinSpec b;
    b.name = BuiltinGuess::recip_si;
    return materialize_guess(GuessSpec{b}, m);
}

void BM_Residual(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Mesh m = build_mesh(Domain::square(-1, 1), n, n);
    const GridField x = recip_si(m);
    const SolverParams p{0.004, 3.0};
    for (auto _ : state) benchmark::DoNotOptimize(residual(m, p, x));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(m.size()));
}
BENCHMARK(BM_Residual)->Arg(45)->Arg(100)->Arg(200);

void BM_Jacobian(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Mesh m = build_mesh(Domain::square(-1, 1), n, n);
    const GridField x = recip_si(m);
    const SolverParams p{0.004, 3.0};
    for (auto _ : state) benchmark::DoNotOptimize(jacobian(m, p, x));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(m.size()));
}
BENCHMARK(BM_Jacobian)->Arg(45)->Arg(100)->Arg(200);

void BM_BandedSolve(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Mesh m = build_mesh(Domain::square(-1, 1), n, n);
    const SolverParams p{0.004, 3.0};
    const GridField x = recip_si(m);
    const StencilMatrix j = jacobian(m, p, x);
    const GridField f = residual(m, p, x);
    for (auto _ : state) benchmark::DoNotOptimize(linear_solve(j, f.values()));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(m.size()));
}
BENCHMARK(BM_BandedSolve)->Arg(20)->Arg(45)->Arg(100)->Unit(benchmark::kMicrosecond);

void BM_NewtonUpperMultiPeak(benchmark::State& state) {
    const Mesh m = build_mesh(Domain::square(-1, 1), 45, 45);
    const SolverParams p{0.004, 3.0};
    const GridField x0 = recip_si(m);
    NewtonConfig c;
    c.damping->max_step = 0.3;
    for (auto _ : state) {
        const SolveReport r = newton_solve(m, p, x0, c);
        if (!r.converged) state.SkipWithError("did not converge");
        benchmark::DoNotOptimize(r.final_residual);
    }
}
BENCHMARK(BM_NewtonUpperMultiPeak)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
