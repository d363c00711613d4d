#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "hsconvex/quadrature.hpp"
#include "hsconvex/real_function.hpp"
#include "test_support.hpp"

using hsconvex::builtin_f;
using hsconvex::EvalOutcome;
using hsconvex::integral_mean;
using hsconvex::integrate;
using hsconvex::Interval;
using hsconvex::kronrod_panel;
using hsconvex::QuadOptions;
using hsconvex::QuadratureError;
using hsconvex::QuadResult;
using hsconvex::RealFunction;

namespace {

RealFunction from_lambda(std::string name, std::function<double(double)> fn, double lo, double hi) {
    return RealFunction(
        std::move(name),
        [fn = std::move(fn)](double x) { return EvalOutcome::of(fn(x)); }, lo, hi);
}

RealFunction polynomial(const std::vector<double>& coeffs, double lo, double hi) {
    return from_lambda(
        "poly",
        [coeffs](double x) {
            double acc = 0.0;
            for (std::size_t i = coeffs.size(); i-- > 0;) {
                acc = acc * x + coeffs[i];
            }
            return acc;
        },
        lo, hi);
}

// Independent oracle: exact polynomial integral via the antiderivative.
double poly_integral(const std::vector<double>& coeffs, double a, double b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        acc += coeffs[i] * (std::pow(b, double(i + 1)) - std::pow(a, double(i + 1))) /
               double(i + 1);
    }
    return acc;
}

}  // namespace

TEST_CASE("simple integrals hit their closed forms") {
    const QuadResult linear =
        integrate(from_lambda("t", [](double t) { return t; }, 0.0, 1.0), Interval(0.0, 1.0),
                  {1e-12, 200000});
    CHECK(linear.converged);
    CHECK(linear.value == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(linear.error_estimate <= 1e-12);

    // int_0^1 sqrt(t) sqrt(1-t) dt = beta(3/2, 3/2) = pi/8
    const QuadResult arch = integrate(
        from_lambda(
            "sqrt(t(1-t))", [](double t) { return std::sqrt(t) * std::sqrt(1.0 - t); }, 0.0, 1.0),
        Interval(0.0, 1.0));
    CHECK(arch.converged);
    CHECK(std::abs(arch.value - 0.39269908169872414) <= 1e-10);

    // int_2^4 ln x dx = [x ln x - x] = 6 ln 2 - 2
    const QuadResult logs = integrate(builtin_f("ln", Interval(2.0, 4.0)), Interval(2.0, 4.0));
    CHECK(logs.converged);
    CHECK(std::abs(logs.value - 2.1588830833596719) <= 1e-10);
}

TEST_CASE("integral_mean divides by the width") {
    const QuadResult sq = integral_mean(builtin_f("square", Interval(0.0, 1.0)),
                                        Interval(0.0, 1.0), {1e-12, 200000});
    CHECK(std::abs(sq.value - 1.0 / 3.0) <= 1e-12);

    const QuadResult id =
        integral_mean(builtin_f("identity", Interval(2.0, 4.0)), Interval(2.0, 4.0));
    CHECK(std::abs(id.value - 3.0) <= 1e-12);  // (a+b)/2: equality case of the chain

    // mean of ln over [2,4] is ln I(2,4) = 3 ln 2 - 1
    const QuadResult lg = integral_mean(builtin_f("ln", Interval(2.0, 4.0)), Interval(2.0, 4.0));
    CHECK(std::abs(lg.value - 1.0794415416798359) <= 1e-10);
}

TEST_CASE("open rule handles endpoint singularities") {
    // int_0^1 t^-1/2 (1-t)^-1/2 dt = pi, singular at both endpoints.
    const RealFunction fn = from_lambda(
        "1/sqrt(t(1-t))", [](double t) { return 1.0 / (std::sqrt(t) * std::sqrt(1.0 - t)); }, 0.0,
        1.0);
    const QuadResult r = integrate(fn, Interval(0.0, 1.0), {1e-9, 200000});
    // Both endpoints are inverse-sqrt singular; plain bisection bottoms out at
    // the panel width floor, a little short of the requested tolerance.
    CHECK(std::abs(r.value - 3.141592653589793) <= 1e-5);
}

TEST_CASE("budget exhaustion reports converged = false") {
    const RealFunction divergent = from_lambda(
        "1/t", [](double t) { return 1.0 / t; }, 0.0, 1.0);
    const QuadResult r = integrate(divergent, Interval(0.0, 1.0), {1e-10, 30000});
    CHECK_FALSE(r.converged);
    CHECK(r.evaluations <= 30000);
    CHECK(r.error_estimate > 1e-10);
}

TEST_CASE("interior domain error is a hard failure with location") {
    const RealFunction f = RealFunction(
        "ln(x-1)",
        [](double x) {
            if (x <= 1.0) {
                return EvalOutcome::fault("logarithm of non-positive value", "ln(x-1)", x);
            }
            return EvalOutcome::of(std::log(x - 1.0));
        },
        0.0, 2.0);
    try {
        integrate(f, Interval(0.0, 2.0));
        FAIL("expected QuadratureError");
    } catch (const QuadratureError& e) {
        CHECK(e.location() > 0.0);
        CHECK(e.location() < 2.0);
        CHECK(e.cause().reason == "logarithm of non-positive value");
    }
}

TEST_CASE("linearity on 100 seeded random polynomial pairs") {
    std::mt19937_64 rng(90210u);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> cf(6), cg(6);
        for (double& c : cf) c = test_support::uniform(rng, -2.0, 2.0);
        for (double& c : cg) c = test_support::uniform(rng, -2.0, 2.0);
        const double alpha = test_support::uniform(rng, -3.0, 3.0);
        const double beta = test_support::uniform(rng, -3.0, 3.0);

        std::vector<double> combo(6);
        for (int i = 0; i < 6; ++i) combo[i] = alpha * cf[i] + beta * cg[i];

        const Interval iv(0.0, 1.0);
        const QuadResult qf = integrate(polynomial(cf, 0.0, 1.0), iv);
        const QuadResult qg = integrate(polynomial(cg, 0.0, 1.0), iv);
        const QuadResult qc = integrate(polynomial(combo, 0.0, 1.0), iv);

        const double lhs = qc.value;
        const double rhs = alpha * qf.value + beta * qg.value;
        const double budget = qc.error_estimate + std::abs(alpha) * qf.error_estimate +
                              std::abs(beta) * qg.error_estimate + 1e-13;
        CHECK(std::abs(lhs - rhs) <= budget);
    }
}

TEST_CASE("interval additivity at random interior split points") {
    std::mt19937_64 rng(5150u);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> cf(5);
        for (double& c : cf) c = test_support::uniform(rng, -2.0, 2.0);
        const double a = test_support::uniform(rng, 0.0, 2.0);
        const double b = a + test_support::uniform(rng, 0.5, 3.0);
        const double c = test_support::uniform(rng, a + 0.05, b - 0.05);

        const RealFunction f = polynomial(cf, a, b);
        const QuadResult whole = integrate(f, Interval(a, b));
        const QuadResult left = integrate(f, Interval(a, c));
        const QuadResult right = integrate(f, Interval(c, b));

        const double budget = 3.0 * (whole.error_estimate + left.error_estimate +
                                     right.error_estimate) +
                              1e-12 * (1.0 + std::abs(whole.value));
        CHECK(std::abs(whole.value - (left.value + right.value)) <= budget);
    }
}

TEST_CASE("single Kronrod panel integrates polynomials exactly") {
    std::mt19937_64 rng(4242u);
    for (int degree = 0; degree <= 22; ++degree) {
        std::vector<double> coeffs(degree + 1);
        for (double& c : coeffs) c = test_support::uniform(rng, -2.0, 2.0);
        const double exact = poly_integral(coeffs, 0.0, 1.0);
        const QuadResult panel = kronrod_panel(polynomial(coeffs, 0.0, 1.0), 0.0, 1.0);
        CHECK(std::abs(panel.value - exact) <= 1e-12 * (1.0 + std::abs(exact)));
    }
}

TEST_CASE("results and evaluation counts are reproducible") {
    const RealFunction fn = builtin_f("ln", Interval(2.0, 4.0));
    const QuadResult r1 = integrate(fn, Interval(2.0, 4.0));
    const QuadResult r2 = integrate(fn, Interval(2.0, 4.0));
    CHECK(r1.value == r2.value);
    CHECK(r1.error_estimate == r2.error_estimate);
    CHECK(r1.evaluations == r2.evaluations);
}
