#pragma once

#include <stdexcept>
#include <string>

namespace hsconvex {

/// Ordered pair (a, b) with a < b. Used both as an integration domain and as
/// the interval a convexity class is checked on.
struct Interval {
    double a;
    double b;

    Interval(double lo, double hi) : a(lo), b(hi) {
        if (!(lo < hi)) {
            throw std::invalid_argument("Interval requires a < b, got [" + std::to_string(lo) +
                                        ", " + std::to_string(hi) + "]");
        }
    }

    double width() const { return b - a; }
    double midpoint() const { return 0.5 * (a + b); }
    bool contains(double x) const { return x >= a && x <= b; }
};

}  // namespace hsconvex
