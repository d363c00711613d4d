#include <benchmark/benchmark.h>

#include <cmath>

#include "hsconvex/quadrature.hpp"
#include "hsconvex/real_function.hpp"

namespace {

using hsconvex::builtin_f;
using hsconvex::EvalOutcome;
using hsconvex::Interval;
using hsconvex::RealFunction;

void IntegrateLn(benchmark::State& state) {
    const Interval iv(2.0, 4.0);
    const RealFunction ln = builtin_f("ln", iv);
    const double tol = std::pow(10.0, -static_cast<double>(state.range(0)));
    for (auto _ : state) {
        auto r = hsconvex::integrate(ln, iv, {tol, 200000});
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(IntegrateLn)->Arg(6)->Arg(10)->Arg(12);

void IntegrateEndpointAlgebraic(benchmark::State& state) {
    // t^s (1-t)^s with s = 0.5: mildly singular derivative at both endpoints.
    const RealFunction fn(
        "t^0.5(1-t)^0.5",
        [](double t) { return EvalOutcome::of(std::sqrt(t) * std::sqrt(1.0 - t)); }, 0.0, 1.0);
    for (auto _ : state) {
        auto r = hsconvex::integrate(fn, Interval(0.0, 1.0), {1e-10, 200000});
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(IntegrateEndpointAlgebraic);

void KronrodPanel(benchmark::State& state) {
    const Interval iv(2.0, 4.0);
    const RealFunction ln = builtin_f("ln", iv);
    for (auto _ : state) {
        auto r = hsconvex::kronrod_panel(ln, 2.0, 4.0);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(KronrodPanel);

}  // namespace
