#include <doctest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "hsconvex/hadamard.hpp"
#include "hsconvex/special_functions.hpp"
#include "test_support.hpp"

using hsconvex::builtin_f;
using hsconvex::builtin_h;
using hsconvex::Coefficient;
using hsconvex::closed_form_coefficients;
using hsconvex::endpoint_terms;
using hsconvex::evaluate_theorem;
using hsconvex::InequalityReport;
using hsconvex::Interval;
using hsconvex::MembershipStatus;
using hsconvex::ProductEndpointTerms;
using hsconvex::RealFunction;
using hsconvex::TheoremId;
using hsconvex::TheoremRequest;

namespace {

double term(const InequalityReport& report, const char* label) {
    const hsconvex::Term* t = report.find_term(label);
    REQUIRE(t != nullptr);
    return t->value;
}

TheoremRequest request(TheoremId id, RealFunction f, Interval iv) {
    return TheoremRequest{id, std::move(f), std::nullopt, std::nullopt, std::nullopt, iv};
}

}  // namespace

TEST_CASE("endpoint terms M and N") {
    const RealFunction id01 = builtin_f("identity", Interval(0.0, 1.0));
    const ProductEndpointTerms unit = endpoint_terms(id01, id01, Interval(0.0, 1.0));
    CHECK(unit.m == 1.0);
    CHECK(unit.n == 0.0);

    const RealFunction id12 = builtin_f("identity", Interval(1.0, 2.0));
    const ProductEndpointTerms shifted = endpoint_terms(id12, id12, Interval(1.0, 2.0));
    CHECK(shifted.m == 5.0);
    CHECK(shifted.n == 4.0);

    const RealFunction ln24 = builtin_f("ln", Interval(2.0, 4.0));
    const ProductEndpointTerms logs = endpoint_terms(ln24, ln24, Interval(2.0, 4.0));
    const double l2 = std::log(2.0);
    const double l4 = std::log(4.0);
    CHECK(logs.m == doctest::Approx(l2 * l2 + l4 * l4).epsilon(1e-15));
    CHECK(logs.n == doctest::Approx(2.0 * l2 * l4).epsilon(1e-15));
    // M + N = (f(a)+f(b)) (g(a)+g(b))
    CHECK(logs.m + logs.n == doctest::Approx((l2 + l4) * (l2 + l4)).epsilon(1e-15));
}

TEST_CASE("classic Hermite-Hadamard for x^2 on [0,1]") {
    const Interval iv(0.0, 1.0);
    const InequalityReport r = evaluate_theorem(request(TheoremId::HhClassic,
                                                        builtin_f("square", iv), iv));
    CHECK(term(r, "midpoint_value") == 0.25);
    CHECK(term(r, "integral_mean") == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(term(r, "endpoint_average") == 0.5);
    REQUIRE(r.comparisons.size() == 2);
    CHECK(r.all_hold());
    CHECK(r.quadrature_converged);
}

TEST_CASE("product theorem equality witness at s = 1") {
    const Interval iv(0.0, 1.0);
    TheoremRequest req = request(TheoremId::HsProduct, builtin_f("identity", iv), iv);
    req.h = builtin_h("identity");
    req.s = 1.0;
    const InequalityReport r = evaluate_theorem(req);

    CHECK(term(r, "product_integral_mean") == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    CHECK(term(r, "hs_product_bound") == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    CHECK(std::abs(term(r, "product_integral_mean") - term(r, "hs_product_bound")) <= 1e-9);
    CHECK(term(r, "int_h_2s_t") == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    CHECK(term(r, "int_h_s_cross") == doctest::Approx(1.0 / 6.0).epsilon(1e-10));
    CHECK(r.all_hold());

    // Invoked with one function: the note records the defaulted g.
    bool noted = false;
    for (const std::string& n : r.notes) {
        noted = noted || n == "g defaulted to f";
    }
    CHECK(noted);
}

TEST_CASE("s-convex Hadamard right-hand equality for sqrt on [0,1]") {
    const Interval iv(0.0, 1.0);
    TheoremRequest req = request(TheoremId::SConvexHadamard, builtin_f("power(0.5)", iv), iv);
    req.s = 0.5;
    const InequalityReport r = evaluate_theorem(req);
    CHECK(term(r, "scaled_midpoint") == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(term(r, "integral_mean") == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
    CHECK(term(r, "s_endpoint_bound") == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(std::abs(term(r, "integral_mean") - term(r, "s_endpoint_bound")) <= 1e-9);
    CHECK(r.all_hold());
}

TEST_CASE("hs variants hold for x^2 with h = identity, s = 1") {
    const Interval iv(0.0, 1.0);
    const RealFunction square = builtin_f("square", iv);

    TheoremRequest bullen = request(TheoremId::HsBullen, square, iv);
    bullen.h = builtin_h("identity");
    bullen.s = 1.0;
    const InequalityReport rb = evaluate_theorem(bullen);
    CHECK(term(rb, "integral_mean") == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    CHECK(term(rb, "hs_bullen_bound") == doctest::Approx(0.375).epsilon(1e-10));
    CHECK(rb.all_hold());

    TheoremRequest upper = request(TheoremId::HsUpper, square, iv);
    upper.h = builtin_h("identity");
    upper.s = 1.0;
    const InequalityReport ru = evaluate_theorem(upper);
    CHECK(term(ru, "hs_upper_bound") == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(ru.all_hold());

    TheoremRequest sandwich = request(TheoremId::HsSandwich, square, iv);
    sandwich.h = builtin_h("identity");
    sandwich.s = 1.0;
    const InequalityReport rs = evaluate_theorem(sandwich);
    CHECK(term(rs, "scaled_midpoint") == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(term(rs, "hs_sandwich_bound") == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(rs.all_hold());

    TheoremRequest symmetric = request(TheoremId::HsSymmetricUpper, square, iv);
    symmetric.h = builtin_h("identity");
    symmetric.s = 1.0;
    const InequalityReport ry = evaluate_theorem(symmetric);
    CHECK(term(ry, "hs_symmetric_bound") == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(ry.all_hold());
}

TEST_CASE("baseline theorems for x^2 on [0,1]") {
    const Interval iv(0.0, 1.0);
    const RealFunction square = builtin_f("square", iv);

    const InequalityReport rb = evaluate_theorem(request(TheoremId::Bullen, square, iv));
    CHECK(term(rb, "twice_integral_mean") == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
    CHECK(term(rb, "bullen_bound") == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(rb.all_hold());

    const InequalityReport rp = evaluate_theorem(request(TheoremId::PHadamard, square, iv));
    CHECK(term(rp, "twice_endpoint_sum") == 2.0);
    CHECK(rp.all_hold());

    const InequalityReport rq =
        evaluate_theorem(request(TheoremId::PachpatteProduct, square, iv));
    CHECK(term(rq, "product_integral_mean") == doctest::Approx(0.2).epsilon(1e-10));
    CHECK(term(rq, "pachpatte_bound") == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(rq.all_hold());
}

TEST_CASE("request validation") {
    const Interval iv(0.0, 1.0);
    const RealFunction square = builtin_f("square", iv);

    TheoremRequest with_g = request(TheoremId::HhClassic, square, iv);
    with_g.g = square;
    CHECK_THROWS_AS(evaluate_theorem(with_g), std::invalid_argument);

    TheoremRequest no_s = request(TheoremId::HsUpper, square, iv);
    no_s.h = builtin_h("identity");
    CHECK_THROWS_AS(evaluate_theorem(no_s), std::invalid_argument);

    TheoremRequest no_h = request(TheoremId::HsUpper, square, iv);
    no_h.s = 0.5;
    CHECK_THROWS_AS(evaluate_theorem(no_h), std::invalid_argument);

    TheoremRequest bad_s = request(TheoremId::SConvexHadamard, square, iv);
    bad_s.s = 1.5;
    CHECK_THROWS_AS(evaluate_theorem(bad_s), std::invalid_argument);

    // h with h(1/2) = 0 breaks the sandwich's left factor.
    TheoremRequest degenerate = request(TheoremId::HsSandwich, square, iv);
    degenerate.h = hsconvex::resolve_function("abs(t-0.5)", Interval(0.0, 1.0), true);
    degenerate.s = 0.5;
    CHECK_THROWS_AS(evaluate_theorem(degenerate), std::domain_error);
}

TEST_CASE("closed-form coefficients") {
    const auto upper = closed_form_coefficients(TheoremId::HsUpper, 1.0);
    REQUIRE(upper.size() == 2);
    CHECK(upper[0].value == 0.5);
    CHECK(upper[1].value == 0.5);

    const auto product = closed_form_coefficients(TheoremId::HsProduct, 1.0);
    REQUIRE(product.size() == 3);
    CHECK(product[0].value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(product[1].value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(product[2].value == doctest::Approx(1.0 / 6.0).epsilon(1e-12));

    const auto sandwich = closed_form_coefficients(TheoremId::HsSandwich, 0.5);
    REQUIRE(sandwich.size() == 2);
    CHECK(sandwich[0].value == doctest::Approx(0.7071067811865476).epsilon(1e-14));
    CHECK(sandwich[1].value == doctest::Approx(4.0 / 3.0).epsilon(1e-14));

    CHECK_THROWS_AS(closed_form_coefficients(TheoremId::HsUpper, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(closed_form_coefficients(TheoremId::HsUpper, 1.2), std::invalid_argument);
}

TEST_CASE("quadrature coefficients match the closed forms across s") {
    const Interval iv(0.0, 1.0);
    const RealFunction id = builtin_f("identity", iv);
    for (int i = 1; i <= 20; ++i) {
        const double s = 0.05 * i;
        TheoremRequest upper = request(TheoremId::HsUpper, id, iv);
        upper.h = builtin_h("identity");
        upper.s = s;
        const InequalityReport ru = evaluate_theorem(upper);
        const auto cu = closed_form_coefficients(TheoremId::HsUpper, s);
        CHECK(std::abs(term(ru, "int_h_s_t") - cu[0].value) <= 1e-8);
        CHECK(std::abs(term(ru, "int_h_s_one_minus_t") - cu[1].value) <= 1e-8);

        TheoremRequest prod = request(TheoremId::HsProduct, id, iv);
        prod.h = builtin_h("identity");
        prod.s = s;
        const InequalityReport rp = evaluate_theorem(prod);
        const auto cp = closed_form_coefficients(TheoremId::HsProduct, s);
        CHECK(std::abs(term(rp, "int_h_2s_t") - cp[0].value) <= 1e-8);
        CHECK(std::abs(term(rp, "int_h_2s_one_minus_t") - cp[1].value) <= 1e-8);
        CHECK(std::abs(term(rp, "int_h_s_cross") - cp[2].value) <= 1e-8);

        TheoremRequest sand = request(TheoremId::HsSandwich, id, iv);
        sand.h = builtin_h("identity");
        sand.s = s;
        const InequalityReport rs = evaluate_theorem(sand);
        const auto cs = closed_form_coefficients(TheoremId::HsSandwich, s);
        CHECK(std::abs(term(rs, "int_h_s_sum") - cs[1].value) <= 1e-8);
    }
}

TEST_CASE("specialization collapse onto the classical inequalities") {
    const Interval unit(0.0, 1.0);
    std::vector<RealFunction> catalog = {
        builtin_f("square", unit), builtin_f("identity", unit), builtin_f("abs", unit),
        builtin_f("expfn", unit), builtin_f("power(1.5)", unit)};

    for (const RealFunction& f : catalog) {
        // hs_upper at h = identity, s = 1 reproduces the classic right side.
        TheoremRequest upper = request(TheoremId::HsUpper, f, unit);
        upper.h = builtin_h("identity");
        upper.s = 1.0;
        const InequalityReport ru = evaluate_theorem(upper);
        const InequalityReport rc = evaluate_theorem(request(TheoremId::HhClassic, f, unit));
        CHECK(std::abs(term(ru, "hs_upper_bound") - term(rc, "endpoint_average")) <= 1e-10);
        CHECK(std::abs(term(ru, "integral_mean") - term(rc, "integral_mean")) <= 1e-10);

        // hs_sandwich at h = identity reproduces the s-convex chain.
        for (double s : {0.25, 0.5, 0.75, 1.0}) {
            TheoremRequest sandwich = request(TheoremId::HsSandwich, f, unit);
            sandwich.h = builtin_h("identity");
            sandwich.s = s;
            const InequalityReport rs = evaluate_theorem(sandwich);
            TheoremRequest sconv = request(TheoremId::SConvexHadamard, f, unit);
            sconv.s = s;
            const InequalityReport rv = evaluate_theorem(sconv);
            CHECK(std::abs(term(rs, "scaled_midpoint") - term(rv, "scaled_midpoint")) <= 1e-10);
            CHECK(std::abs(term(rs, "integral_mean") - term(rv, "integral_mean")) <= 1e-10);
            CHECK(std::abs(term(rs, "hs_sandwich_bound") - term(rv, "s_endpoint_bound")) <=
                  1e-10);
        }

        // hs_bullen at h = identity, s = 1 is half of Bullen's inequality.
        TheoremRequest hb = request(TheoremId::HsBullen, f, unit);
        hb.h = builtin_h("identity");
        hb.s = 1.0;
        const InequalityReport rhb = evaluate_theorem(hb);
        const InequalityReport rb = evaluate_theorem(request(TheoremId::Bullen, f, unit));
        CHECK(std::abs(2.0 * term(rhb, "integral_mean") - term(rb, "twice_integral_mean")) <=
              1e-10);
        CHECK(std::abs(2.0 * term(rhb, "hs_bullen_bound") - term(rb, "bullen_bound")) <= 1e-10);
    }
}

TEST_CASE("reciprocal weights: convergent at small s, flagged when divergent") {
    const Interval iv(2.0, 4.0);
    const RealFunction square = builtin_f("square", iv);

    // int_0^1 t^-0.5 dt = 2 converges even though h = 1/t blows up at 0. The
    // inverse-sqrt endpoint costs accuracy, so ask for a tolerance the open
    // rule can certify.
    TheoremRequest mild = request(TheoremId::HsSymmetricUpper, square, iv);
    mild.h = builtin_h("reciprocal");
    mild.s = 0.5;
    mild.quad_tolerance = 1e-6;
    const InequalityReport rm = evaluate_theorem(mild);
    CHECK(rm.quadrature_converged);
    CHECK(term(rm, "int_h_s_t") == doctest::Approx(2.0).epsilon(1e-6));

    // At s = 1 the weight integral is int 1/t dt, which diverges: the report
    // is still produced, flagged instead of suppressed.
    TheoremRequest divergent = request(TheoremId::HsSymmetricUpper, square, iv);
    divergent.h = builtin_h("reciprocal");
    divergent.s = 1.0;
    const InequalityReport rd = evaluate_theorem(divergent);
    CHECK_FALSE(rd.quadrature_converged);
    CHECK_FALSE(rd.notes.empty());
    CHECK_FALSE(rd.comparisons.empty());
}

TEST_CASE("product report is symmetric in f and g") {
    const Interval iv(0.0, 1.0);
    TheoremRequest fg = request(TheoremId::HsProduct, builtin_f("square", iv), iv);
    fg.g = builtin_f("identity", iv);
    fg.h = builtin_h("identity");
    fg.s = 0.5;
    TheoremRequest gf = request(TheoremId::HsProduct, builtin_f("identity", iv), iv);
    gf.g = builtin_f("square", iv);
    gf.h = builtin_h("identity");
    gf.s = 0.5;

    const InequalityReport a = evaluate_theorem(fg);
    const InequalityReport b = evaluate_theorem(gf);
    CHECK(std::abs(term(a, "product_integral_mean") - term(b, "product_integral_mean")) <=
          1e-12);
    CHECK(std::abs(term(a, "hs_product_bound") - term(b, "hs_product_bound")) <= 1e-12);
    CHECK(a.all_hold() == b.all_hold());
}

TEST_CASE("hypothesis checking annotates the report without suppressing it") {
    const Interval iv(0.0, 1.0);
    TheoremRequest good = request(TheoremId::HhClassic, builtin_f("square", iv), iv);
    good.check_hypothesis = true;
    const InequalityReport rg = evaluate_theorem(good);
    REQUIRE(rg.hypothesis.size() == 1);
    CHECK(rg.hypothesis[0].verdict.status == MembershipStatus::MemberOnGrid);
    CHECK(rg.hypothesis_established());

    const Interval two_four(2.0, 4.0);
    TheoremRequest bad = request(TheoremId::HhClassic, builtin_f("ln", two_four), two_four);
    bad.check_hypothesis = true;
    const InequalityReport rb = evaluate_theorem(bad);
    REQUIRE(rb.hypothesis.size() == 1);
    CHECK(rb.hypothesis[0].verdict.status == MembershipStatus::Violated);
    CHECK_FALSE(rb.hypothesis_established());
    CHECK_FALSE(rb.comparisons.empty());  // still reported
    // ln is concave: the midpoint side of the chain flips.
    CHECK_FALSE(rb.all_hold());
    bool flagged = false;
    for (const std::string& n : rb.notes) {
        flagged = flagged || n == "hypothesis not established on the search grid";
    }
    CHECK(flagged);

    TheoremRequest product = request(TheoremId::PachpatteProduct, builtin_f("square", iv), iv);
    product.g = builtin_f("identity", iv);
    product.check_hypothesis = true;
    const InequalityReport rp = evaluate_theorem(product);
    REQUIRE(rp.hypothesis.size() == 2);
    CHECK(rp.hypothesis[0].function_label == "f");
    CHECK(rp.hypothesis[1].function_label == "g");
    CHECK(rp.hypothesis_established());
}

TEST_CASE("hypothesis-conditional soundness on a seeded sample") {
    std::mt19937_64 rng(60601u);
    const TheoremId ids[] = {TheoremId::HhClassic,      TheoremId::Bullen,
                             TheoremId::PHadamard,      TheoremId::PachpatteProduct,
                             TheoremId::SConvexHadamard, TheoremId::HsUpper,
                             TheoremId::HsSandwich,      TheoremId::HsProduct,
                             TheoremId::HsSymmetricUpper, TheoremId::HsBullen};
    const char* functions[] = {"square", "power(1.5)", "power(2.5)", "expfn"};
    const double esses[] = {0.25, 0.5, 0.75, 1.0};

    hsconvex::SearchConfig search;
    search.grid_x = search.grid_y = search.grid_t = 21;

    int passed = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const double a = test_support::uniform(rng, 0.0, 3.0);
        const double b = a + test_support::uniform(rng, 0.25, 4.0 - a);
        const Interval iv(a, b);
        const TheoremId id = ids[trial % 10];
        TheoremRequest req{id,
                           builtin_f(functions[rng() % 4], iv),
                           std::nullopt,
                           builtin_h(rng() % 2 == 0 ? "identity" : "one"),
                           esses[rng() % 4],
                           iv};
        if (hsconvex::is_product_theorem(id)) {
            req.g = builtin_f(functions[rng() % 4], iv);
        }
        req.check_hypothesis = true;
        req.search = search;
        const InequalityReport r = evaluate_theorem(req);
        if (r.hypothesis_established()) {
            ++passed;
            CHECK(r.all_hold());
        }
    }
    CHECK(passed >= 40);
}
