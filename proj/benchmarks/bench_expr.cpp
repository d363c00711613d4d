#include <benchmark/benchmark.h>

#include "hsconvex/expr.hpp"

namespace {

void ExpressionParse(benchmark::State& state) {
    for (auto _ : state) {
        auto expr = hsconvex::expr::Expression::parse("ln(x)*sqrt(x) + x^1.5/(x+1) - 2*x");
        benchmark::DoNotOptimize(expr);
    }
}
BENCHMARK(ExpressionParse);

void ExpressionEvaluate(benchmark::State& state) {
    const auto expr = hsconvex::expr::Expression::parse("ln(x)*sqrt(x) + x^1.5/(x+1) - 2*x");
    double x = 2.0;
    for (auto _ : state) {
        auto out = expr.evaluate(x);
        benchmark::DoNotOptimize(out);
        x += 1e-9;
    }
}
BENCHMARK(ExpressionEvaluate);

}  // namespace
