#include <benchmark/benchmark.h>

#include "hsconvex/means.hpp"

namespace {

void ChainCheck(benchmark::State& state) {
    double a = 2.0;
    for (auto _ : state) {
        auto report = hsconvex::chain_check(a, 4.0);
        benchmark::DoNotOptimize(report);
        a += 1e-9;
    }
}
BENCHMARK(ChainCheck);

void PLogMean(benchmark::State& state) {
    double p = -5.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(hsconvex::p_log_mean(2.0, 4.0, p));
        p += 1e-6;
        if (p > 5.0) p = -5.0;
    }
}
BENCHMARK(PLogMean);

}  // namespace
