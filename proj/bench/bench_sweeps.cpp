// Serial vs OpenMP grid sweeps. Argument 0 is the serial path, 1 the parallel one.

#include "diracuc/verify.hpp"

#include <benchmark/benchmark.h>

using namespace diracuc;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) ? Exec::parallel : Exec::serial; }

const Counterexample& paper() {
    static const Counterexample ce = Counterexample::build({});
    return ce;
}

const Counterexample& mild() {
    static const Counterexample ce = [] {
        CounterexampleConfig cfg;
        cfg.preset = SchedulePreset::mild;
        return Counterexample::build(cfg);
    }();
    return ce;
}

void BM_PotentialBound(benchmark::State& state) {
    for (auto _ : state) {
        const CheckReport r = check_potential_bound(paper(), {96, 64, 0.1}, exec_of(state));
        benchmark::DoNotOptimize(r.worst_value);
    }
}

void BM_IdentityMild(benchmark::State& state) {
    for (auto _ : state) {
        const CheckReport r = check_identity(mild(), {48, 32, 0.1}, {}, 1e-6, exec_of(state));
        benchmark::DoNotOptimize(r.worst_value);
    }
}

void BM_IdentityPaper(benchmark::State& state) {
    for (auto _ : state) {
        const CheckReport r = check_identity(paper(), {48, 32, 0.1}, {}, 1e-5, exec_of(state));
        benchmark::DoNotOptimize(r.worst_value);
    }
}

void BM_Decay(benchmark::State& state) {
    for (auto _ : state) {
        const CheckReport r = check_decay(paper(), {96, 64, 0.1}, exec_of(state));
        benchmark::DoNotOptimize(r.worst_margin);
    }
}

}  // namespace

BENCHMARK(BM_PotentialBound)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_IdentityMild)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_IdentityPaper)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Decay)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
