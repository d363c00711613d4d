#pragma once

namespace hsconvex {

/// ln Gamma(x) for x > 0, good to at least 12 significant digits.
/// Throws std::invalid_argument for x <= 0.
double log_gamma(double x);

/// Euler Beta function B(x, y) = Gamma(x)Gamma(y)/Gamma(x+y) for x, y > 0,
/// computed in log space.
double beta(double x, double y);

}  // namespace hsconvex
