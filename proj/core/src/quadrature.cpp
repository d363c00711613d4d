#include "hsconvex/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace hsconvex {

namespace {

// 15-point Kronrod abscissae (positive half) and weights, with the embedded
// 7-point Gauss weights, as tabulated in QUADPACK's dqk15. All nodes are
// interior to the panel.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr double kWg[4] = {0.129484966168869693270611432679082,
                           0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975,
                           0.417959183673469387755102040816327};

struct Panel {
    double a;
    double b;
    double value;
    double error;
};

double checked_eval(const RealFunction& fn, double x) {
    EvalOutcome out = fn(x);
    if (!out.ok()) {
        throw QuadratureError(x, out.error());
    }
    if (!std::isfinite(out.value())) {
        throw QuadratureError(x, DomainError{"non-finite integrand value", fn.name(), x});
    }
    return out.value();
}

// Panels narrower than this cannot be split without quadrature nodes rounding
// onto the panel endpoints (where singular integrands live), so subdivision
// stops there.
bool splittable(double a, double b) {
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return b - a > 1e-13 * scale;
}

Panel evaluate_panel(const RealFunction& fn, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = checked_eval(fn, center);
    double resg = kWg[3] * fc;
    double resk = kWgk[7] * fc;
    double fv1[7];
    double fv2[7];
    for (int j = 0; j < 7; ++j) {
        const double absc = half * kXgk[j];
        fv1[j] = checked_eval(fn, center - absc);
        fv2[j] = checked_eval(fn, center + absc);
        const double fsum = fv1[j] + fv2[j];
        resk += kWgk[j] * fsum;
        if (j % 2 == 1) {
            resg += kWg[j / 2] * fsum;
        }
    }

    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j) {
        resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
    }
    resasc *= std::abs(half);

    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    return Panel{a, b, resk * half, err};
}

constexpr int kEvaluationsPerPanel = 15;

}  // namespace

QuadResult integrate(const RealFunction& fn, Interval iv, QuadOptions opts) {
    // Panels stay sorted by left endpoint; totals are summed in that order so
    // reruns and the convergence decision see identical values.
    std::vector<Panel> panels;
    panels.push_back(evaluate_panel(fn, iv.a, iv.b));
    std::int64_t evaluations = kEvaluationsPerPanel;

    const auto totals = [&panels]() {
        double value = 0.0;
        double error = 0.0;
        for (const Panel& p : panels) {
            value += p.value;
            error += p.error;
        }
        return std::pair<double, double>(value, error);
    };

    for (;;) {
        const auto [value, error] = totals();
        if (error <= opts.tolerance) {
            return {value, error, evaluations, true};
        }
        if (evaluations + 2 * kEvaluationsPerPanel > opts.max_evaluations) {
            return {value, error, evaluations, false};
        }

        // Worst splittable panel first; ties keep the leftmost (panels are
        // left-sorted). Panels at the width floor are skipped: their error
        // cannot improve further.
        std::size_t worst = panels.size();
        double stuck_error = 0.0;
        for (std::size_t i = 0; i < panels.size(); ++i) {
            if (!splittable(panels[i].a, panels[i].b)) {
                stuck_error += panels[i].error;
                continue;
            }
            if (worst == panels.size() || panels[i].error > panels[worst].error) {
                worst = i;
            }
        }
        if (worst == panels.size() || stuck_error > opts.tolerance) {
            // No further subdivision can bring the estimate below tolerance.
            return {value, error, evaluations, false};
        }
        const Panel split = panels[worst];
        const double mid = 0.5 * (split.a + split.b);
        Panel left = evaluate_panel(fn, split.a, mid);
        Panel right = evaluate_panel(fn, mid, split.b);
        evaluations += 2 * kEvaluationsPerPanel;
        panels[worst] = left;
        panels.insert(panels.begin() + static_cast<std::ptrdiff_t>(worst) + 1, right);
    }
}

QuadResult integral_mean(const RealFunction& fn, Interval iv, QuadOptions opts) {
    QuadResult r = integrate(fn, iv, opts);
    const double scale = 1.0 / iv.width();
    r.value *= scale;
    r.error_estimate *= scale;
    return r;
}

QuadResult kronrod_panel(const RealFunction& fn, double a, double b) {
    Panel p = evaluate_panel(fn, a, b);
    return {p.value, p.error, kEvaluationsPerPanel, true};
}

}  // namespace hsconvex
