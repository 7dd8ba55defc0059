#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "ergent/catalog.hpp"
#include "ergent/kernels.hpp"
#include "ergent/random.hpp"

using namespace ergent;

namespace {

// Every proper cut of an n-party register.
std::vector<PartitionMask> proper_cuts(int n) {
    std::vector<PartitionMask> cuts;
    for (std::uint32_t b = 1; b + 1 < (1u << n); ++b) cuts.emplace_back(n, b);
    return cuts;
}

PureState input(int n, bool ghz) {
    if (ghz) return catalog::ghz(n);
    CounterRng rng(static_cast<std::uint64_t>(n));
    return random_state(Register::qubits(n), rng);
}

void run(benchmark::State& st, bool parallel, bool ghz) {
    const int n = static_cast<int>(st.range(0));
    const CutPlan plan(catalog::unit_qubits(n), proper_cuts(n));
    const auto psi = input(n, ghz);
    for (auto _ : st) {
        auto g = parallel ? plan.evaluate_parallel(psi.view(), GapKind::ergotropic)
                          : plan.evaluate_serial(psi.view(), GapKind::ergotropic);
        benchmark::DoNotOptimize(g.data());
    }
    st.counters["cuts"] = static_cast<double>(plan.size());
}

void serial_random(benchmark::State& st) { run(st, false, false); }
void parallel_random(benchmark::State& st) { run(st, true, false); }
void serial_ghz(benchmark::State& st) { run(st, false, true); }
void parallel_ghz(benchmark::State& st) { run(st, true, true); }

}  // namespace

BENCHMARK(serial_random)->DenseRange(10, 12)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(parallel_random)->DenseRange(10, 12)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(serial_ghz)->DenseRange(10, 12)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(parallel_ghz)->DenseRange(10, 12)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
