#include "hsconvex/hadamard.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "hsconvex/special_functions.hpp"

namespace hsconvex {

namespace {

constexpr double kSlackScale = 1e-9;

double require_value(const RealFunction& fn, double x, const char* role) {
    EvalOutcome out = fn(x);
    if (!out.ok()) {
        throw std::domain_error(std::string(role) + " '" + fn.name() + "' failed at x = " +
                                std::to_string(x) + ": " + out.error().reason);
    }
    return out.value();
}

void validate_s_param(double s) {
    if (!(s > 0.0) || s > 1.0) {
        throw std::invalid_argument("theorem exponent s must lie in (0, 1], got " +
                                    std::to_string(s));
    }
}

RealFunction weight_integrand(const RealFunction& h, double q, bool reflected, std::string name) {
    return RealFunction(
        std::move(name),
        [h, q, reflected](double t) { return powered_eval(h, reflected ? 1.0 - t : t, q); }, 0.0,
        1.0);
}

RealFunction weight_sum_integrand(const RealFunction& h, double s) {
    return RealFunction(
        "h^s(t)+h^s(1-t)",
        [h, s](double t) {
            EvalOutcome lhs = powered_eval(h, t, s);
            if (!lhs.ok()) return lhs;
            EvalOutcome rhs = powered_eval(h, 1.0 - t, s);
            if (!rhs.ok()) return rhs;
            return EvalOutcome::of(lhs.value() + rhs.value());
        },
        0.0, 1.0);
}

RealFunction weight_cross_integrand(const RealFunction& h, double s) {
    return RealFunction(
        "h^s(t)*h^s(1-t)",
        [h, s](double t) {
            EvalOutcome lhs = powered_eval(h, t, s);
            if (!lhs.ok()) return lhs;
            EvalOutcome rhs = powered_eval(h, 1.0 - t, s);
            if (!rhs.ok()) return rhs;
            return EvalOutcome::of(lhs.value() * rhs.value());
        },
        0.0, 1.0);
}

RealFunction product_integrand(const RealFunction& f, const RealFunction& g) {
    return RealFunction(
        f.name() + "*" + g.name(),
        [f, g](double x) {
            EvalOutcome lhs = f(x);
            if (!lhs.ok()) return lhs;
            EvalOutcome rhs = g(x);
            if (!rhs.ok()) return rhs;
            return EvalOutcome::of(lhs.value() * rhs.value());
        },
        std::max(f.lower(), g.lower()), std::min(f.upper(), g.upper()),
        f.lower_open() || g.lower_open(), f.upper_open() || g.upper_open());
}

class ReportBuilder {
public:
    ReportBuilder(TheoremId id, double quad_tolerance)
        : quad_options_{quad_tolerance, 200000} {
        report_.theorem = id;
    }

    void term(std::string label, double value, double error_bound = 0.0) {
        report_.terms.push_back({std::move(label), value, error_bound});
    }

    QuadResult mean_term(std::string label, const RealFunction& fn, const Interval& iv) {
        QuadResult q = integral_mean(fn, iv, quad_options_);
        note_convergence(label, q);
        term(std::move(label), q.value, q.error_estimate);
        return q;
    }

    QuadResult unit_integral(std::string label, const RealFunction& fn) {
        QuadResult q = integrate(fn, Interval(0.0, 1.0), quad_options_);
        note_convergence(label, q);
        term(std::move(label), q.value, q.error_estimate);
        return q;
    }

    void compare(std::string_view lhs, std::string_view rhs) {
        chain_.emplace_back(std::string(lhs), std::string(rhs));
    }

    void note(std::string text) { report_.notes.push_back(std::move(text)); }

    InequalityReport finish() {
        double scale = 0.0;
        for (const Term& t : report_.terms) {
            scale = std::max(scale, std::abs(t.value));
        }
        const double slack = kSlackScale * scale;
        for (const auto& [lhs, rhs] : chain_) {
            const Term* tl = report_.find_term(lhs);
            const Term* tr = report_.find_term(rhs);
            Comparison c;
            c.lhs = lhs;
            c.rhs = rhs;
            c.margin = tr->value - tl->value;
            c.holds = c.margin >= -(tl->error_bound + tr->error_bound + slack);
            report_.comparisons.push_back(std::move(c));
        }
        return std::move(report_);
    }

private:
    void note_convergence(const std::string& label, const QuadResult& q) {
        if (!q.converged) {
            report_.quadrature_converged = false;
            report_.notes.push_back("quadrature did not converge for term '" + label +
                                    "' (estimate " + std::to_string(q.error_estimate) + ")");
        }
    }

    InequalityReport report_;
    QuadOptions quad_options_;
    std::vector<std::pair<std::string, std::string>> chain_;
};

ClassKind hypothesis_class(TheoremId id) {
    switch (id) {
        case TheoremId::HhClassic:
        case TheoremId::Bullen:
        case TheoremId::PachpatteProduct: return ClassKind::Convex;
        case TheoremId::PHadamard: return ClassKind::PFunction;
        case TheoremId::SConvexHadamard: return ClassKind::SConvexSecond;
        default: return ClassKind::HsSecond;
    }
}

}  // namespace

TheoremId theorem_from_string(std::string_view name) {
    if (name == "hh_classic") return TheoremId::HhClassic;
    if (name == "bullen") return TheoremId::Bullen;
    if (name == "p_hadamard") return TheoremId::PHadamard;
    if (name == "pachpatte_product") return TheoremId::PachpatteProduct;
    if (name == "s_convex_hadamard") return TheoremId::SConvexHadamard;
    if (name == "hs_upper") return TheoremId::HsUpper;
    if (name == "hs_sandwich") return TheoremId::HsSandwich;
    if (name == "hs_product") return TheoremId::HsProduct;
    if (name == "hs_symmetric_upper") return TheoremId::HsSymmetricUpper;
    if (name == "hs_bullen") return TheoremId::HsBullen;
    throw std::invalid_argument("unknown theorem '" + std::string(name) + "'");
}

std::string to_string(TheoremId id) {
    switch (id) {
        case TheoremId::HhClassic: return "hh_classic";
        case TheoremId::Bullen: return "bullen";
        case TheoremId::PHadamard: return "p_hadamard";
        case TheoremId::PachpatteProduct: return "pachpatte_product";
        case TheoremId::SConvexHadamard: return "s_convex_hadamard";
        case TheoremId::HsUpper: return "hs_upper";
        case TheoremId::HsSandwich: return "hs_sandwich";
        case TheoremId::HsProduct: return "hs_product";
        case TheoremId::HsSymmetricUpper: return "hs_symmetric_upper";
        case TheoremId::HsBullen: return "hs_bullen";
    }
    return "?";
}

bool is_product_theorem(TheoremId id) {
    return id == TheoremId::PachpatteProduct || id == TheoremId::HsProduct;
}

ProductEndpointTerms endpoint_terms(const RealFunction& f, const RealFunction& g,
                                    const Interval& interval) {
    const double fa = require_value(f, interval.a, "f");
    const double fb = require_value(f, interval.b, "f");
    const double ga = require_value(g, interval.a, "g");
    const double gb = require_value(g, interval.b, "g");
    return {fa * ga + fb * gb, fa * gb + fb * ga};
}

bool InequalityReport::all_hold() const {
    for (const Comparison& c : comparisons) {
        if (!c.holds) return false;
    }
    return true;
}

const Term* InequalityReport::find_term(std::string_view label) const {
    for (const Term& t : terms) {
        if (t.label == label) return &t;
    }
    return nullptr;
}

bool InequalityReport::hypothesis_established() const {
    if (hypothesis.empty()) return false;
    for (const HypothesisCheck& h : hypothesis) {
        if (h.verdict.status != MembershipStatus::MemberOnGrid || !h.verdict.search_complete) {
            return false;
        }
    }
    return true;
}

InequalityReport evaluate_theorem(const TheoremRequest& request) {
    const TheoremId id = request.theorem;
    const Interval& iv = request.interval;
    const bool product = is_product_theorem(id);
    const bool needs_s = id == TheoremId::SConvexHadamard || id == TheoremId::HsUpper ||
                         id == TheoremId::HsSandwich || id == TheoremId::HsProduct ||
                         id == TheoremId::HsSymmetricUpper || id == TheoremId::HsBullen;
    const bool needs_h = needs_s && id != TheoremId::SConvexHadamard;

    if (!product && request.g) {
        throw std::invalid_argument("theorem '" + to_string(id) + "' takes no second function g");
    }
    if (needs_s) {
        if (!request.s) {
            throw std::invalid_argument("theorem '" + to_string(id) + "' requires s");
        }
        validate_s_param(*request.s);
    }
    if (needs_h && !request.h) {
        throw std::invalid_argument("theorem '" + to_string(id) +
                                    "' requires a weight function h");
    }

    ReportBuilder builder(id, request.quad_tolerance);

    RealFunction g = request.g ? *request.g : request.f;
    if (product && !request.g) {
        builder.note("g defaulted to f");
    }

    const RealFunction& f = request.f;
    const double mid = iv.midpoint();
    const double s = request.s.value_or(1.0);

    switch (id) {
        case TheoremId::HhClassic: {
            builder.term("midpoint_value", require_value(f, mid, "f"));
            builder.mean_term("integral_mean", f, iv);
            builder.term("endpoint_average",
                         0.5 * (require_value(f, iv.a, "f") + require_value(f, iv.b, "f")));
            builder.compare("midpoint_value", "integral_mean");
            builder.compare("integral_mean", "endpoint_average");
            break;
        }
        case TheoremId::Bullen: {
            QuadResult q = integral_mean(f, iv, {request.quad_tolerance, 200000});
            builder.term("twice_integral_mean", 2.0 * q.value, 2.0 * q.error_estimate);
            if (!q.converged) {
                builder.note("quadrature did not converge for term 'twice_integral_mean'");
            }
            builder.term("bullen_bound",
                         0.5 * (require_value(f, iv.a, "f") + require_value(f, iv.b, "f") +
                                2.0 * require_value(f, mid, "f")));
            builder.compare("twice_integral_mean", "bullen_bound");
            break;
        }
        case TheoremId::PHadamard: {
            builder.term("midpoint_value", require_value(f, mid, "f"));
            QuadResult q = integral_mean(f, iv, {request.quad_tolerance, 200000});
            builder.term("twice_integral_mean", 2.0 * q.value, 2.0 * q.error_estimate);
            if (!q.converged) {
                builder.note("quadrature did not converge for term 'twice_integral_mean'");
            }
            builder.term("twice_endpoint_sum",
                         2.0 * (require_value(f, iv.a, "f") + require_value(f, iv.b, "f")));
            builder.compare("midpoint_value", "twice_integral_mean");
            builder.compare("twice_integral_mean", "twice_endpoint_sum");
            break;
        }
        case TheoremId::PachpatteProduct: {
            builder.mean_term("product_integral_mean", product_integrand(f, g), iv);
            const ProductEndpointTerms mn = endpoint_terms(f, g, iv);
            builder.term("endpoint_m", mn.m);
            builder.term("endpoint_n", mn.n);
            builder.term("pachpatte_bound", mn.m / 3.0 + mn.n / 6.0);
            builder.compare("product_integral_mean", "pachpatte_bound");
            break;
        }
        case TheoremId::SConvexHadamard: {
            builder.term("scaled_midpoint",
                         std::pow(2.0, s - 1.0) * require_value(f, mid, "f"));
            builder.mean_term("integral_mean", f, iv);
            builder.term("s_endpoint_bound",
                         (require_value(f, iv.a, "f") + require_value(f, iv.b, "f")) / (s + 1.0));
            builder.compare("scaled_midpoint", "integral_mean");
            builder.compare("integral_mean", "s_endpoint_bound");
            break;
        }
        case TheoremId::HsUpper: {
            builder.mean_term("integral_mean", f, iv);
            const QuadResult q1 =
                builder.unit_integral("int_h_s_t", weight_integrand(*request.h, s, false, "h^s(t)"));
            const QuadResult q2 = builder.unit_integral(
                "int_h_s_one_minus_t", weight_integrand(*request.h, s, true, "h^s(1-t)"));
            const double fa = require_value(f, iv.a, "f");
            const double fb = require_value(f, iv.b, "f");
            builder.term("hs_upper_bound", fa * q1.value + fb * q2.value,
                         std::abs(fa) * q1.error_estimate + std::abs(fb) * q2.error_estimate);
            builder.compare("integral_mean", "hs_upper_bound");
            break;
        }
        case TheoremId::HsSandwich: {
            EvalOutcome half = powered_eval(*request.h, 0.5, s);
            if (!half.ok()) {
                throw std::domain_error("h^s(1/2) is not evaluable: " + half.error().reason);
            }
            if (half.value() <= 0.0) {
                throw std::domain_error(
                    "h^s(1/2) = 0; the left factor 1/(2 h^s(1/2)) is undefined");
            }
            builder.term("h_s_half", half.value());
            builder.term("scaled_midpoint",
                         require_value(f, mid, "f") / (2.0 * half.value()));
            builder.mean_term("integral_mean", f, iv);
            const QuadResult qs =
                builder.unit_integral("int_h_s_sum", weight_sum_integrand(*request.h, s));
            const double avg =
                0.5 * (require_value(f, iv.a, "f") + require_value(f, iv.b, "f"));
            builder.term("hs_sandwich_bound", avg * qs.value,
                         std::abs(avg) * qs.error_estimate);
            builder.compare("scaled_midpoint", "integral_mean");
            builder.compare("integral_mean", "hs_sandwich_bound");
            break;
        }
        case TheoremId::HsProduct: {
            builder.mean_term("product_integral_mean", product_integrand(f, g), iv);
            const QuadResult q1 = builder.unit_integral(
                "int_h_2s_t", weight_integrand(*request.h, 2.0 * s, false, "h^2s(t)"));
            const QuadResult q2 = builder.unit_integral(
                "int_h_2s_one_minus_t", weight_integrand(*request.h, 2.0 * s, true, "h^2s(1-t)"));
            const QuadResult q3 =
                builder.unit_integral("int_h_s_cross", weight_cross_integrand(*request.h, s));
            const ProductEndpointTerms mn = endpoint_terms(f, g, iv);
            const double faga = require_value(f, iv.a, "f") * require_value(g, iv.a, "g");
            const double fbgb = require_value(f, iv.b, "f") * require_value(g, iv.b, "g");
            builder.term("endpoint_n", mn.n);
            builder.term("hs_product_bound",
                         faga * q1.value + fbgb * q2.value + mn.n * q3.value,
                         std::abs(faga) * q1.error_estimate + std::abs(fbgb) * q2.error_estimate +
                             std::abs(mn.n) * q3.error_estimate);
            builder.compare("product_integral_mean", "hs_product_bound");
            break;
        }
        case TheoremId::HsSymmetricUpper: {
            builder.mean_term("integral_mean", f, iv);
            const QuadResult q1 =
                builder.unit_integral("int_h_s_t", weight_integrand(*request.h, s, false, "h^s(t)"));
            const double sum = require_value(f, iv.a, "f") + require_value(f, iv.b, "f");
            builder.term("hs_symmetric_bound", sum * q1.value,
                         std::abs(sum) * q1.error_estimate);
            builder.compare("integral_mean", "hs_symmetric_bound");
            break;
        }
        case TheoremId::HsBullen: {
            builder.mean_term("integral_mean", f, iv);
            const QuadResult q1 =
                builder.unit_integral("int_h_s_t", weight_integrand(*request.h, s, false, "h^s(t)"));
            const double factor =
                0.5 * (require_value(f, iv.a, "f") + require_value(f, iv.b, "f")) +
                require_value(f, mid, "f");
            builder.term("hs_bullen_bound", factor * q1.value,
                         std::abs(factor) * q1.error_estimate);
            builder.compare("integral_mean", "hs_bullen_bound");
            break;
        }
    }

    InequalityReport report = builder.finish();

    if (request.check_hypothesis) {
        const ClassKind kind = hypothesis_class(id);
        std::optional<RealFunction> spec_h;
        std::optional<double> spec_s;
        if (kind == ClassKind::SConvexSecond) {
            spec_s = s;
        } else if (kind == ClassKind::HsSecond) {
            spec_h = *request.h;
            spec_s = s;
        }
        const ClassSpec spec = ClassSpec::make(kind, spec_h, spec_s);
        report.hypothesis.push_back(
            {"f", kind, check_membership(spec, f, iv, request.search)});
        if (product) {
            report.hypothesis.push_back(
                {"g", kind, check_membership(spec, g, iv, request.search)});
        }
        if (!report.hypothesis_established()) {
            report.notes.push_back("hypothesis not established on the search grid");
        }
    }

    return report;
}

std::vector<Coefficient> closed_form_coefficients(TheoremId id, double s) {
    validate_s_param(s);
    switch (id) {
        case TheoremId::HhClassic:
            return {{"endpoint_average_coefficient", 0.5}};
        case TheoremId::Bullen:
            return {{"bullen_coefficient", 0.5}};
        case TheoremId::PHadamard:
            return {{"mean_factor", 2.0}, {"endpoint_coefficient", 2.0}};
        case TheoremId::PachpatteProduct:
            return {{"m_coefficient", 1.0 / 3.0}, {"n_coefficient", 1.0 / 6.0}};
        case TheoremId::SConvexHadamard:
            return {{"midpoint_factor", std::pow(2.0, s - 1.0)},
                    {"endpoint_coefficient", 1.0 / (s + 1.0)}};
        case TheoremId::HsUpper:
            return {{"int_h_s_t", 1.0 / (s + 1.0)}, {"int_h_s_one_minus_t", 1.0 / (s + 1.0)}};
        case TheoremId::HsSandwich:
            return {{"midpoint_factor", std::pow(2.0, s - 1.0)},
                    {"int_h_s_sum", 2.0 / (s + 1.0)}};
        case TheoremId::HsProduct:
            return {{"int_h_2s_t", 1.0 / (2.0 * s + 1.0)},
                    {"int_h_2s_one_minus_t", 1.0 / (2.0 * s + 1.0)},
                    {"int_h_s_cross", beta(s + 1.0, s + 1.0)}};
        case TheoremId::HsSymmetricUpper:
            return {{"int_h_s_t", 1.0 / (s + 1.0)}};
        case TheoremId::HsBullen:
            return {{"int_h_s_t", 1.0 / (s + 1.0)}};
    }
    return {};
}

}  // namespace hsconvex
