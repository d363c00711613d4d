#include "hsconvex/means.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "hsconvex/quadrature.hpp"

namespace hsconvex {

namespace {

// Relative half-width below which L, I and L_p switch to diagonal series.
// The printed formulas are 0/0 on the diagonal and lose ~16-u digits of
// accuracy to cancellation just off it; at this threshold both branches are
// correct to full double precision (series truncation error is O(u^6)).
constexpr double kDiagonalSeriesThreshold = 1e-3;

constexpr double kChainSlack = 1e-14;

void require_nonnegative(double a, double b, const char* kind) {
    if (a < 0.0 || b < 0.0) {
        throw std::invalid_argument(std::string(kind) + " mean requires a, b >= 0");
    }
}

void require_positive(double a, double b, const char* kind) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw std::invalid_argument(std::string(kind) + " mean requires a, b > 0");
    }
}

// u = (b-a)/(a+b) for sorted 0 < a <= b.
double half_width_ratio(double a, double b) { return (b - a) / (a + b); }

bool near_diagonal(double a, double b) {
    return b - a < kDiagonalSeriesThreshold * b;  // b = max(a,b) after sorting
}

double logarithmic_mean(double a, double b) {
    require_positive(a, b, "logarithmic");
    if (a == b) return a;
    if (near_diagonal(a, b)) {
        const double m = 0.5 * (a + b);
        const double u2 = half_width_ratio(a, b) * half_width_ratio(a, b);
        return m * (1.0 - u2 / 3.0 - 4.0 * u2 * u2 / 45.0);
    }
    return (b - a) / (std::log(b) - std::log(a));
}

double identric_mean(double a, double b) {
    require_positive(a, b, "identric");
    if (a == b) return a;
    if (near_diagonal(a, b)) {
        const double m = 0.5 * (a + b);
        const double u2 = half_width_ratio(a, b) * half_width_ratio(a, b);
        return m * std::exp(-u2 / 6.0 - u2 * u2 / 20.0);
    }
    // ln I = (b ln b - a ln a)/(b - a) - 1; exponentiating avoids b^b overflow.
    const double ln_identric = (b * std::log(b) - a * std::log(a)) / (b - a) - 1.0;
    return std::exp(ln_identric);
}

}  // namespace

MeanKind mean_kind_from_string(std::string_view name) {
    if (name == "arithmetic") return MeanKind::Arithmetic;
    if (name == "geometric") return MeanKind::Geometric;
    if (name == "harmonic") return MeanKind::Harmonic;
    if (name == "quadratic") return MeanKind::Quadratic;
    if (name == "logarithmic") return MeanKind::Logarithmic;
    if (name == "identric") return MeanKind::Identric;
    if (name == "p_logarithmic") return MeanKind::PLogarithmic;
    throw std::invalid_argument("unknown mean kind '" + std::string(name) + "'");
}

std::string to_string(MeanKind kind) {
    switch (kind) {
        case MeanKind::Arithmetic: return "arithmetic";
        case MeanKind::Geometric: return "geometric";
        case MeanKind::Harmonic: return "harmonic";
        case MeanKind::Quadratic: return "quadratic";
        case MeanKind::Logarithmic: return "logarithmic";
        case MeanKind::Identric: return "identric";
        case MeanKind::PLogarithmic: return "p_logarithmic";
    }
    return "?";
}

double mean(MeanKind kind, double a, double b) {
    if (a > b) std::swap(a, b);
    switch (kind) {
        case MeanKind::Arithmetic:
            require_nonnegative(a, b, "arithmetic");
            return a == b ? a : 0.5 * (a + b);
        case MeanKind::Geometric:
            require_nonnegative(a, b, "geometric");
            return a == b ? a : std::sqrt(a * b);
        case MeanKind::Harmonic:
            require_nonnegative(a, b, "harmonic");
            if (!(a + b > 0.0)) {
                throw std::invalid_argument("harmonic mean requires a + b > 0");
            }
            return a == b ? a : 2.0 * a * b / (a + b);
        case MeanKind::Quadratic:
            require_nonnegative(a, b, "quadratic");
            return a == b ? a : std::sqrt(0.5 * (a * a + b * b));
        case MeanKind::Logarithmic:
            return logarithmic_mean(a, b);
        case MeanKind::Identric:
            return identric_mean(a, b);
        case MeanKind::PLogarithmic:
            throw std::invalid_argument("p_logarithmic mean needs p; use p_log_mean(a, b, p)");
    }
    throw std::invalid_argument("unknown mean kind");
}

double p_log_mean(double a, double b, double p) {
    if (a > b) std::swap(a, b);
    require_positive(a, b, "p-logarithmic");
    if (p == 0.0) return identric_mean(a, b);
    if (p == -1.0) return logarithmic_mean(a, b);
    if (a == b) return a;

    if (near_diagonal(a, b)) {
        const double m = 0.5 * (a + b);
        const double u2 = half_width_ratio(a, b) * half_width_ratio(a, b);
        const double c2 = p * (p - 1.0) / 6.0;
        const double c4 = p * (p - 1.0) * (p - 2.0) * (p - 3.0) / 120.0;
        return m * std::exp(std::log1p(c2 * u2 + c4 * u2 * u2) / p);
    }

    // T = (b^q - a^q) / (q (b - a)) with q = p + 1, always positive for
    // 0 < a < b. Evaluated in log space so b^q cannot overflow.
    const double q = p + 1.0;
    const double ln_a = std::log(a);
    const double ln_b = std::log(b);
    double ln_diff;  // ln |b^q - a^q|
    if (q > 0.0) {
        ln_diff = q * ln_b + std::log1p(-std::exp(q * (ln_a - ln_b)));
    } else {
        ln_diff = q * ln_a + std::log1p(-std::exp(q * (ln_b - ln_a)));
    }
    const double ln_t = ln_diff - std::log(std::abs(q)) - std::log(b - a);
    return std::exp(ln_t / p);
}

bool ChainReport::all_hold() const {
    for (const Comparison& c : comparisons) {
        if (!c.holds) return false;
    }
    return true;
}

ChainReport chain_check(double a, double b) {
    ChainReport report;
    report.a = a;
    report.b = b;
    report.means = {
        {"harmonic", mean(MeanKind::Harmonic, a, b)},
        {"geometric", mean(MeanKind::Geometric, a, b)},
        {"logarithmic", mean(MeanKind::Logarithmic, a, b)},
        {"identric", mean(MeanKind::Identric, a, b)},
        {"arithmetic", mean(MeanKind::Arithmetic, a, b)},
        {"quadratic", mean(MeanKind::Quadratic, a, b)},
    };
    double scale = 0.0;
    for (const ChainEntry& e : report.means) {
        scale = std::max(scale, std::abs(e.value));
    }
    const double slack = kChainSlack * scale;
    for (std::size_t i = 0; i + 1 < report.means.size(); ++i) {
        Comparison c;
        c.lhs = report.means[i].label;
        c.rhs = report.means[i + 1].label;
        c.margin = report.means[i + 1].value - report.means[i].value;
        c.holds = c.margin >= -slack;
        report.comparisons.push_back(std::move(c));
    }
    return report;
}

PropositionReport proposition_check(int id, double a, double b, double s,
                                    const SearchConfig& search) {
    if (id < 1 || id > 4) {
        throw std::invalid_argument("proposition id must be 1..4");
    }
    if (!(a > 2.0) || !(b > 2.0)) {
        throw std::invalid_argument("propositions require a, b in (2, infinity)");
    }
    if (a > b) {
        throw std::invalid_argument("propositions require a <= b");
    }
    if (!(s > 0.0) || s > 1.0) {
        throw std::invalid_argument("proposition exponent s must lie in (0, 1]");
    }

    PropositionReport report;
    report.id = id;
    report.a = a;
    report.b = b;
    report.s = s;

    const double ln_a = std::log(a);
    const double ln_b = std::log(b);
    const double a_of_logs = 0.5 * (ln_a + ln_b);           // A(ln a, ln b)
    const double ln_arith = std::log(0.5 * (a + b));        // ln A(a,b)
    const double ln_g_squared = ln_a + ln_b;                // ln G^2(a,b)

    report.ln_identric = std::log(mean(MeanKind::Identric, a, b));

    if (a < b) {
        const Interval iv(a, b);
        const QuadResult q = integral_mean(builtin_f("ln", iv), iv);
        report.ln_identric_quad = q.value;
        report.quad_error = q.error_estimate;
        report.hypothesis = check_membership(
            ClassSpec::hs_second(builtin_h("identity"), s), builtin_f("ln", iv), iv, search);
    } else {
        report.ln_identric_quad = report.ln_identric;
        report.quad_error = 0.0;
        // Degenerate interval: the only pair is x = y = a, where the defect
        // ln(a) (1 - h^s(t) - h^s(1-t)) is never positive for h(t) = t.
        report.hypothesis.status = MembershipStatus::MemberOnGrid;
        report.hypothesis.grid_x = 1;
        report.hypothesis.grid_y = 1;
        report.hypothesis.grid_t = search.grid_t;
        report.hypothesis.max_defect = 0.0;
        report.hypothesis.tolerance = search.tolerance_scale * (1.0 + std::abs(ln_a));
    }

    switch (id) {
        case 1:
            report.upper_printed = 2.0 / (s + 1.0) * a_of_logs;
            report.upper_derived = (ln_a + ln_b) / (s + 1.0);
            report.derived_theorem = "hs_symmetric_upper";
            break;
        case 2:
            report.lower_printed = std::pow(2.0, s - 1.0) * ln_arith;
            report.upper_printed = a_of_logs / (s + 1.0);
            report.lower_derived = report.lower_printed;
            report.upper_derived = (ln_a + ln_b) / (s + 1.0);
            report.derived_theorem = "hs_sandwich";
            break;
        case 3:
            report.upper_printed = ln_g_squared / (s + 1.0);
            report.upper_derived = (ln_a + ln_b) / (s + 1.0);
            report.derived_theorem = "hs_symmetric_upper";
            break;
        case 4:
            report.upper_printed = (0.5 * ln_g_squared + ln_arith) / (s + 1.0);
            report.upper_derived = report.upper_printed;
            report.derived_theorem = "hs_bullen";
            break;
    }

    double scale = std::max({1.0, std::abs(report.ln_identric), std::abs(report.upper_printed),
                             std::abs(report.upper_derived)});
    const double slack = 1e-12 * scale;
    const auto bound_holds = [&](const std::optional<double>& lower, double upper) {
        if (lower && !(report.ln_identric - *lower >= -slack)) return false;
        return upper - report.ln_identric >= -slack;
    };
    report.holds_printed = bound_holds(report.lower_printed, report.upper_printed);
    report.holds_derived = bound_holds(report.lower_derived, report.upper_derived);
    return report;
}

}  // namespace hsconvex
