#include <benchmark/benchmark.h>

#include <cmath>

#include "pinball/escape.hpp"
#include "pinball/kesten.hpp"
#include "pinball/return_map.hpp"

using namespace pinball;

static void BM_PinballStep(benchmark::State& state) {
    const MapParams p = MapParams::pinball(1.0);
    CylState s{0.01, 50.0};
    for (auto _ : state) {
        s = step_pinball(p, s);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_PinballStep);

static void BM_Iterate10k(benchmark::State& state) {
    const auto policy = static_cast<NumericPolicy>(state.range(0));
    const MapParams p = MapParams::pinball(1.0, policy);
    for (auto _ : state) {
        OrbitTrace tr = iterate(p, {0.01, 50.0}, 10000, 10000);
        benchmark::DoNotOptimize(tr);
    }
    state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_Iterate10k)->Arg(0)->Arg(1)->Arg(2);

static void BM_FirstReturn(benchmark::State& state) {
    const MapParams p = MapParams::pinball_exact_mu(2.0);
    const double action = static_cast<double>(state.range(0));
    const double phi = p.alpha / (action - 1.0) * 0.37;
    for (auto _ : state) {
        ReturnEvent ev = first_return(p, {phi, action});
        benchmark::DoNotOptimize(ev);
    }
}
BENCHMARK(BM_FirstReturn)->Arg(100)->Arg(1000)->Arg(10000);

static void BM_ClassifyFiber(benchmark::State& state) {
    const MapParams p = MapParams::pinball_exact_mu(2.0);
    for (auto _ : state) {
        IntervalReport rep = classify_fiber(p, 101.0, state.range(0));
        benchmark::DoNotOptimize(rep);
    }
}
BENCHMARK(BM_ClassifyFiber)->Arg(1000)->Arg(10000);

static void BM_EscapeReturns(benchmark::State& state) {
    const EscapeSeed seed = make_seed(1, 1000);
    const auto policy = static_cast<NumericPolicy>(state.range(0));
    for (auto _ : state) {
        GrowthReport gr = run_escape(seed, 200, policy, 200);
        benchmark::DoNotOptimize(gr);
    }
    state.SetItemsProcessed(state.iterations() * 200);
}
BENCHMARK(BM_EscapeReturns)->Arg(1)->Arg(2);

static void BM_EkOrbit(benchmark::State& state) {
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    for (auto _ : state) {
        DiscrepancySeries s = ek_orbit(golden, 0.1, 0.0, 100000, 100000);
        benchmark::DoNotOptimize(s);
    }
    state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_EkOrbit);

BENCHMARK_MAIN();
