// Serial reference vs fused serial vs fused OpenMP kernels.

#include <benchmark/benchmark.h>

#include "kljnlab/exec.hpp"
#include "kljnlab/kljn.hpp"
#include "kljnlab/thermod.hpp"

using namespace kljnlab;

namespace {

const ResistorPair kPair{1e3, 1e4};

NoiseSpec spec_for(const benchmark::State& state) {
    NoiseSpec s;
    s.samples_per_bit = static_cast<std::size_t>(state.range(0));
    return s;
}

constexpr std::size_t kBits = 256;

void BM_ExchangesReference(benchmark::State& state) {
    const auto spec = spec_for(state);
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_exchanges_reference(kBits, kPair, spec, 1));
    }
    state.SetItemsProcessed(state.iterations() * kBits);
}

void BM_ExchangesSerial(benchmark::State& state) {
    const auto spec = spec_for(state);
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_exchanges(kBits, kPair, spec, 1, Execution::serial()));
    }
    state.SetItemsProcessed(state.iterations() * kBits);
}

void BM_ExchangesParallel(benchmark::State& state) {
    const auto spec = spec_for(state);
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_exchanges(kBits, kPair, spec, 1, Execution::omp(0)));
    }
    state.SetItemsProcessed(state.iterations() * kBits);
}

void BM_TransmissionsSerial(benchmark::State& state) {
    const auto spec = spec_for(state);
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_transmissions(kBits, kPair, spec, {}, {}, 1, Execution::serial()));
    }
    state.SetItemsProcessed(state.iterations() * kBits);
}

void BM_TransmissionsParallel(benchmark::State& state) {
    const auto spec = spec_for(state);
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_transmissions(kBits, kPair, spec, {}, {}, 1, Execution::omp(0)));
    }
    state.SetItemsProcessed(state.iterations() * kBits);
}

}  // namespace

BENCHMARK(BM_ExchangesReference)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExchangesSerial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExchangesParallel)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TransmissionsSerial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TransmissionsParallel)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
