#include "hsconvex/special_functions.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hsconvex {

namespace {

// Lanczos approximation with g = 7 and the 9 fixed coefficients due to
// Godfrey. For x > 0 this yields ~15 correct significant digits:
//
//   Gamma(x) = sqrt(2 pi) * (x + g - 1/2)^(x - 1/2) * e^-(x + g - 1/2) * A(x)
//   A(x)     = c0 + sum_{k=1..8} ck / (x - 1 + k)
//
// Only exp/ln are needed at runtime beyond the fixed coefficients.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,    676.5203681218851,      -1259.1392167224028,
    771.32342877765313,     -176.61502916214059,    12.507343278686905,
    -0.13857109526572012,   9.9843695780195716e-6,  1.5056327351493116e-7};

constexpr double kHalfLogTwoPi = 0.91893853320467274178;  // ln(2*pi)/2

}  // namespace

double log_gamma(double x) {
    if (!(x > 0.0)) {
        throw std::invalid_argument("log_gamma requires x > 0, got " + std::to_string(x));
    }
    double series = kLanczos[0];
    for (int k = 1; k < 9; ++k) {
        series += kLanczos[k] / (x - 1.0 + static_cast<double>(k));
    }
    const double base = x + kLanczosG - 0.5;
    return kHalfLogTwoPi + (x - 0.5) * std::log(base) - base + std::log(series);
}

double beta(double x, double y) {
    if (!(x > 0.0) || !(y > 0.0)) {
        throw std::invalid_argument("beta requires positive arguments");
    }
    return std::exp(log_gamma(x) + log_gamma(y) - log_gamma(x + y));
}

}  // namespace hsconvex
