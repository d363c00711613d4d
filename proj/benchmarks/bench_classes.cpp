#include <benchmark/benchmark.h>

#include "hsconvex/convexity_classes.hpp"
#include "hsconvex/real_function.hpp"

namespace {

using hsconvex::builtin_f;
using hsconvex::builtin_h;
using hsconvex::ClassSpec;
using hsconvex::Interval;
using hsconvex::SearchConfig;

void MembershipGrid(benchmark::State& state) {
    const Interval iv(2.0, 4.0);
    const auto ln = builtin_f("ln", iv);
    const ClassSpec spec = ClassSpec::convex();
    SearchConfig config;
    config.grid_x = config.grid_y = config.grid_t = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto verdict = hsconvex::check_membership(spec, ln, iv, config);
        benchmark::DoNotOptimize(verdict);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(MembershipGrid)->Arg(11)->Arg(21)->Arg(41)->Complexity();

void MembershipHsSecond(benchmark::State& state) {
    const Interval iv(2.0, 4.0);
    const auto ln = builtin_f("ln", iv);
    const ClassSpec spec = ClassSpec::hs_second(builtin_h("identity"), 0.5);
    for (auto _ : state) {
        auto verdict = hsconvex::check_membership(spec, ln, iv);
        benchmark::DoNotOptimize(verdict);
    }
}
BENCHMARK(MembershipHsSecond);

void PointDefect(benchmark::State& state) {
    const Interval iv(2.0, 4.0);
    const auto ln = builtin_f("ln", iv);
    const ClassSpec spec = ClassSpec::hs_second(builtin_h("identity"), 0.5);
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(hsconvex::defect(spec, ln, iv, 2.5, 3.5, t));
        t += 1e-7;
        if (t > 1.0) t = 0.0;
    }
}
BENCHMARK(PointDefect);

}  // namespace
