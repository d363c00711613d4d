#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hsconvex/convexity_classes.hpp"
#include "hsconvex/interval.hpp"
#include "hsconvex/quadrature.hpp"
#include "hsconvex/real_function.hpp"

namespace hsconvex {

/// The ten Hadamard-type inequalities the engine evaluates. The first five
/// are the classical baselines, the rest are stated for (h-s)_2-convex
/// functions.
enum class TheoremId {
    HhClassic,         // f((a+b)/2) <= mean <= (f(a)+f(b))/2
    Bullen,            // 2 mean <= [f(a)+f(b)+2 f((a+b)/2)] / 2
    PHadamard,         // f((a+b)/2) <= 2 mean <= 2 [f(a)+f(b)]
    PachpatteProduct,  // mean(fg) <= M/3 + N/6
    SConvexHadamard,   // 2^(s-1) f((a+b)/2) <= mean <= (f(a)+f(b))/(s+1)
    HsUpper,           // mean <= f(a) Int h^s(t) + f(b) Int h^s(1-t)
    HsSandwich,        // f((a+b)/2)/(2 h^s(1/2)) <= mean <= (f(a)+f(b))/2 Int [h^s(t)+h^s(1-t)]
    HsProduct,         // mean(fg) <= f(a)g(a) Int h^2s(t) + f(b)g(b) Int h^2s(1-t) + N Int h^s(t)h^s(1-t)
    HsSymmetricUpper,  // mean <= [f(a)+f(b)] Int h^s(t)
    HsBullen,          // mean <= [(f(a)+f(b))/2 + f((a+b)/2)] Int h^s(t)
};

TheoremId theorem_from_string(std::string_view name);
std::string to_string(TheoremId id);

/// True for the two product inequalities, which take a second function g.
bool is_product_theorem(TheoremId id);

/// Endpoint products M = f(a)g(a) + f(b)g(b) and N = f(a)g(b) + f(b)g(a).
struct ProductEndpointTerms {
    double m = 0.0;
    double n = 0.0;
};

ProductEndpointTerms endpoint_terms(const RealFunction& f, const RealFunction& g,
                                    const Interval& interval);

/// One evaluated quantity in a report. error_bound is the quadrature error
/// estimate propagated into the term (0 for exactly computed terms).
struct Term {
    std::string label;
    double value = 0.0;
    double error_bound = 0.0;
};

/// One "lhs <= rhs" relation between two named terms. holds allows slack for
/// the quadrature error bounds on both sides.
struct Comparison {
    std::string lhs;
    std::string rhs;
    double margin = 0.0;  // rhs - lhs
    bool holds = false;
};

/// Hypothesis-class verdict for one of the functions in a theorem.
struct HypothesisCheck {
    std::string function_label;  // "f" or "g"
    ClassKind klass;
    MembershipVerdict verdict;
};

struct InequalityReport {
    TheoremId theorem = TheoremId::HhClassic;
    std::vector<Term> terms;
    std::vector<Comparison> comparisons;  // the printed chain, in order
    std::vector<HypothesisCheck> hypothesis;
    std::vector<std::string> notes;
    bool quadrature_converged = true;

    bool all_hold() const;
    const Term* find_term(std::string_view label) const;
    bool hypothesis_established() const;
};

struct TheoremRequest {
    TheoremId theorem = TheoremId::HhClassic;
    RealFunction f;
    std::optional<RealFunction> g;  // product theorems only; defaults to f
    std::optional<RealFunction> h;  // hs_* theorems
    std::optional<double> s;        // hs_* and s_convex_hadamard
    Interval interval;
    double quad_tolerance = 1e-10;
    bool check_hypothesis = false;
    SearchConfig search;
};

/// Evaluates every side of the chosen inequality. Integral terms go through
/// adaptive quadrature at quad_tolerance; a comparison "holds" when
/// margin >= -(error bounds + 1e-9 * max|term|). Reports are produced even
/// when the hypothesis check fails; the report is flagged instead.
InequalityReport evaluate_theorem(const TheoremRequest& request);

/// Analytic values of the weight integrals a theorem uses when h(t) = t,
/// used to cross-check the quadrature path. Only meaningful for h = identity.
struct Coefficient {
    std::string label;
    double value = 0.0;
};

std::vector<Coefficient> closed_form_coefficients(TheoremId id, double s);

}  // namespace hsconvex
