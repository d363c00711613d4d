#pragma once

#include <cstdint>
#include <stdexcept>

#include "hsconvex/eval_outcome.hpp"
#include "hsconvex/interval.hpp"
#include "hsconvex/real_function.hpp"

namespace hsconvex {

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::int64_t evaluations = 0;
    bool converged = false;
};

struct QuadOptions {
    double tolerance = 1e-10;             // absolute
    std::int64_t max_evaluations = 200000;
};

/// The integrand produced a domain error at a point strictly inside the
/// integration interval.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(double location, DomainError cause)
        : std::runtime_error("integrand domain error at x = " + std::to_string(location) + ": " +
                             cause.reason + " in '" + cause.subexpression + "'"),
          location_(location),
          cause_(std::move(cause)) {}

    double location() const { return location_; }
    const DomainError& cause() const { return cause_; }

private:
    double location_;
    DomainError cause_;
};

/// Adaptive Gauss-Kronrod (G7/K15) integration over [iv.a, iv.b]. The rule
/// is open: endpoints are never evaluated, so integrands with endpoint
/// singularities are fine. Subdivision always splits the subinterval with the
/// worst error estimate, ties broken by leftmost, and the final sum runs left
/// to right, so results are bit-reproducible.
///
/// Returns converged = false with the best available value when the
/// evaluation budget runs out; throws QuadratureError on an interior domain
/// error.
QuadResult integrate(const RealFunction& fn, Interval iv, QuadOptions opts = {});

/// integrate(fn) / (b - a), with the error estimate scaled the same way.
QuadResult integral_mean(const RealFunction& fn, Interval iv, QuadOptions opts = {});

/// One non-adaptive K15 panel over [a, b]; exact for polynomials through
/// degree 22.
QuadResult kronrod_panel(const RealFunction& fn, double a, double b);

}  // namespace hsconvex
