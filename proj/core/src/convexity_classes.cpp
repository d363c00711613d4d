#include "hsconvex/convexity_classes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace hsconvex {

namespace {

constexpr double kGodunovaLevinClip = 1e-3;

struct Weights {
    bool ok = true;
    double wx = 0.0;
    double wy = 0.0;
    DomainError fault;
};

Weights make_fault(EvalOutcome bad) {
    Weights w;
    w.ok = false;
    w.fault = bad.error();
    return w;
}

Weights class_weights(const ClassSpec& spec, double t) {
    switch (spec.kind()) {
        case ClassKind::Convex:
            return {true, t, 1.0 - t, {}};
        case ClassKind::GodunovaLevin: {
            if (t <= 0.0 || t >= 1.0) {
                Weights w;
                w.ok = false;
                w.fault = {"t outside the open interval (0,1)", "1/t, 1/(1-t)", t};
                return w;
            }
            return {true, 1.0 / t, 1.0 / (1.0 - t), {}};
        }
        case ClassKind::PFunction:
            return {true, 1.0, 1.0, {}};
        case ClassKind::SConvexSecond:
            return {true, std::pow(t, spec.s()), std::pow(1.0 - t, spec.s()), {}};
        case ClassKind::HConvex: {
            EvalOutcome ht = spec.h()(t);
            if (!ht.ok()) return make_fault(ht);
            EvalOutcome h1t = spec.h()(1.0 - t);
            if (!h1t.ok()) return make_fault(h1t);
            return {true, ht.value(), h1t.value(), {}};
        }
        case ClassKind::HsFirst: {
            EvalOutcome ht = powered_eval(spec.h(), t, spec.s());
            if (!ht.ok()) return make_fault(ht);
            return {true, ht.value(), 1.0 - ht.value(), {}};
        }
        case ClassKind::HsSecond: {
            EvalOutcome ht = powered_eval(spec.h(), t, spec.s());
            if (!ht.ok()) return make_fault(ht);
            EvalOutcome h1t = powered_eval(spec.h(), 1.0 - t, spec.s());
            if (!h1t.ok()) return make_fault(h1t);
            return {true, ht.value(), h1t.value(), {}};
        }
    }
    Weights w;
    w.ok = false;
    w.fault = {"unknown class kind", "", t};
    return w;
}

void validate_s(double s) {
    if (!(s > 0.0) || s > 1.0) {
        throw std::invalid_argument("class exponent s must lie in (0, 1], got " +
                                    std::to_string(s));
    }
}

double checked_f(const RealFunction& f, double v, double x, double y, double t) {
    EvalOutcome out = f(v);
    if (!out.ok()) {
        throw SearchError(x, y, t, out.error());
    }
    return out.value();
}

}  // namespace

ClassKind class_kind_from_string(std::string_view name) {
    if (name == "convex") return ClassKind::Convex;
    if (name == "godunova_levin") return ClassKind::GodunovaLevin;
    if (name == "p_function") return ClassKind::PFunction;
    if (name == "s_convex_2") return ClassKind::SConvexSecond;
    if (name == "h_convex") return ClassKind::HConvex;
    if (name == "hs_first") return ClassKind::HsFirst;
    if (name == "hs_second") return ClassKind::HsSecond;
    throw std::invalid_argument("unknown class kind '" + std::string(name) + "'");
}

std::string to_string(ClassKind kind) {
    switch (kind) {
        case ClassKind::Convex: return "convex";
        case ClassKind::GodunovaLevin: return "godunova_levin";
        case ClassKind::PFunction: return "p_function";
        case ClassKind::SConvexSecond: return "s_convex_2";
        case ClassKind::HConvex: return "h_convex";
        case ClassKind::HsFirst: return "hs_first";
        case ClassKind::HsSecond: return "hs_second";
    }
    return "?";
}

ClassSpec ClassSpec::s_convex_second(double s) {
    validate_s(s);
    return ClassSpec(ClassKind::SConvexSecond, std::nullopt, s);
}

ClassSpec ClassSpec::h_convex(RealFunction h) {
    return ClassSpec(ClassKind::HConvex, std::move(h), std::nullopt);
}

ClassSpec ClassSpec::hs_first(RealFunction h, double s) {
    validate_s(s);
    return ClassSpec(ClassKind::HsFirst, std::move(h), s);
}

ClassSpec ClassSpec::hs_second(RealFunction h, double s) {
    validate_s(s);
    return ClassSpec(ClassKind::HsSecond, std::move(h), s);
}

ClassSpec ClassSpec::make(ClassKind kind, std::optional<RealFunction> h, std::optional<double> s) {
    const bool needs_h =
        kind == ClassKind::HConvex || kind == ClassKind::HsFirst || kind == ClassKind::HsSecond;
    const bool needs_s = kind == ClassKind::SConvexSecond || kind == ClassKind::HsFirst ||
                         kind == ClassKind::HsSecond;
    if (needs_h && !h) {
        throw std::invalid_argument("class '" + to_string(kind) + "' requires a weight function h");
    }
    if (!needs_h && h) {
        throw std::invalid_argument("class '" + to_string(kind) + "' takes no weight function");
    }
    if (needs_s && !s) {
        throw std::invalid_argument("class '" + to_string(kind) + "' requires an exponent s");
    }
    if (!needs_s && s) {
        throw std::invalid_argument("class '" + to_string(kind) + "' takes no exponent");
    }
    if (needs_s) validate_s(*s);
    return ClassSpec(kind, std::move(h), s);
}

std::pair<double, double> ClassSpec::t_grid_range() const {
    if (t_domain_open()) {
        return {kGodunovaLevinClip, 1.0 - kGodunovaLevinClip};
    }
    return {0.0, 1.0};
}

double convex_combination(double x, double y, double t) {
    const double mid = t * x + (1.0 - t) * y;
    const double lo = std::min(x, y);
    const double hi = std::max(x, y);
    return std::min(hi, std::max(lo, mid));
}

namespace {

// f(mid) - wx f(x) - wy f(y), arranged so that degenerate points come out
// exact: at f(x) == f(y) the result is f(mid) - f(x) - (wx + wy - 1) f(x),
// which is exactly 0 for the weight pairs that sum to 1 (convex, hs_first,
// and h^s with s = 1), and f(x)(1 - wx - wy) in general.
inline double weighted_defect(double fm, double fx, double fy, double wx, double wy) {
    if (fx == fy) {
        const double excess = wy - (1.0 - wx);  // wx + wy - 1, exact where it matters
        return fm - (fx + excess * fx);
    }
    return fm - wx * fx - wy * fy;
}

}  // namespace

double defect(const ClassSpec& spec, const RealFunction& f, const Interval& interval, double x,
              double y, double t) {
    if (!interval.contains(x) || !interval.contains(y)) {
        throw std::invalid_argument("defect: x and y must lie in the interval");
    }
    if (spec.t_domain_open() ? !(t > 0.0 && t < 1.0) : !(t >= 0.0 && t <= 1.0)) {
        throw std::invalid_argument("defect: t outside the class's t-domain");
    }
    const Weights w = class_weights(spec, t);
    if (!w.ok) {
        throw SearchError(x, y, t, w.fault);
    }
    const double fx = checked_f(f, x, x, y, t);
    const double fy = checked_f(f, y, x, y, t);
    const double fm = checked_f(f, convex_combination(x, y, t), x, y, t);
    return weighted_defect(fm, fx, fy, w.wx, w.wy);
}

namespace {

struct Cell {
    double defect;
    double x;
    double y;
    double t;
};

bool better_cell(const Cell& a, const Cell& b) {
    if (a.defect != b.defect) return a.defect > b.defect;
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    return a.t < b.t;
}

}  // namespace

MembershipVerdict check_membership(const ClassSpec& spec, const RealFunction& f,
                                   const Interval& interval, const SearchConfig& config) {
    if (config.grid_x < 2 || config.grid_y < 2 || config.grid_t < 2) {
        throw std::invalid_argument("check_membership: grid sizes must be >= 2");
    }
    if (config.max_defect_evaluations < 1) {
        throw std::invalid_argument("check_membership: evaluation budget must be positive");
    }

    const auto [t_lo, t_hi] = spec.t_grid_range();
    const int nx = config.grid_x;
    const int ny = config.grid_y;
    const int nt = config.grid_t;

    std::vector<double> xs(nx), ys(ny), ts(nt);
    for (int i = 0; i < nx; ++i) xs[i] = interval.a + interval.width() * i / (nx - 1);
    for (int j = 0; j < ny; ++j) ys[j] = interval.a + interval.width() * j / (ny - 1);
    for (int k = 0; k < nt; ++k) ts[k] = t_lo + (t_hi - t_lo) * k / (nt - 1);
    xs.back() = interval.b;
    ys.back() = interval.b;
    ts.back() = t_hi;

    // Cache f on the axis grids and the weights on the t grid; faults are
    // reported at the first grid cell that would touch them.
    std::vector<double> fx(nx), fy(ny), wx(nt), wy(nt);
    double max_abs_f = 0.0;
    for (int i = 0; i < nx; ++i) {
        fx[i] = checked_f(f, xs[i], xs[i], interval.a, t_lo);
        max_abs_f = std::max(max_abs_f, std::abs(fx[i]));
    }
    for (int j = 0; j < ny; ++j) {
        fy[j] = checked_f(f, ys[j], interval.a, ys[j], t_lo);
        max_abs_f = std::max(max_abs_f, std::abs(fy[j]));
    }
    for (int k = 0; k < nt; ++k) {
        const Weights w = class_weights(spec, ts[k]);
        if (!w.ok) {
            throw SearchError(interval.a, interval.a, ts[k], w.fault);
        }
        wx[k] = w.wx;
        wy[k] = w.wy;
    }

    std::int64_t evaluations = 0;
    bool budget_ok = true;
    Cell best{-std::numeric_limits<double>::infinity(), xs[0], ys[0], ts[0]};
    std::vector<Cell> positive;

    for (int i = 0; i < nx && budget_ok; ++i) {
        for (int j = 0; j < ny && budget_ok; ++j) {
            for (int k = 0; k < nt; ++k) {
                if (evaluations >= config.max_defect_evaluations) {
                    budget_ok = false;
                    break;
                }
                ++evaluations;
                const double mid = convex_combination(xs[i], ys[j], ts[k]);
                const double fm = checked_f(f, mid, xs[i], ys[j], ts[k]);
                max_abs_f = std::max(max_abs_f, std::abs(fm));
                const double d = weighted_defect(fm, fx[i], fy[j], wx[k], wy[k]);
                const Cell cell{d, xs[i], ys[j], ts[k]};
                if (better_cell(cell, best)) {
                    best = cell;
                }
                if (d > 0.0) {
                    positive.push_back(cell);
                }
            }
        }
    }

    // Local coordinate ascent from the most promising positive cells.
    const int top_k = static_cast<int>(std::min<std::size_t>(
        static_cast<std::size_t>(std::max(config.refine_top_k, 0)), positive.size()));
    std::partial_sort(positive.begin(), positive.begin() + top_k, positive.end(), better_cell);

    const double step0_x = interval.width() / (nx - 1);
    const double step0_y = interval.width() / (ny - 1);
    const double step0_t = (t_hi - t_lo) / (nt - 1);

    for (int c = 0; c < top_k && budget_ok; ++c) {
        double px = positive[c].x;
        double py = positive[c].y;
        double pt = positive[c].t;
        double cur = positive[c].defect;
        double sx = step0_x, sy = step0_y, st = step0_t;
        while (std::max(sx, std::max(sy, st)) > config.refine_step_tolerance && budget_ok) {
            bool improved = false;
            for (int axis = 0; axis < 3; ++axis) {
                for (int dir = 1; dir >= -1; dir -= 2) {
                    double qx = px, qy = py, qt = pt;
                    if (axis == 0) qx = std::clamp(px + dir * sx, interval.a, interval.b);
                    if (axis == 1) qy = std::clamp(py + dir * sy, interval.a, interval.b);
                    if (axis == 2) qt = std::clamp(pt + dir * st, t_lo, t_hi);
                    if (qx == px && qy == py && qt == pt) continue;
                    if (evaluations >= config.max_defect_evaluations) {
                        budget_ok = false;
                        break;
                    }
                    ++evaluations;
                    const double d = defect(spec, f, interval, qx, qy, qt);
                    if (d > cur) {
                        cur = d;
                        px = qx;
                        py = qy;
                        pt = qt;
                        improved = true;
                    }
                }
                if (!budget_ok) break;
            }
            if (!improved) {
                sx *= 0.5;
                sy *= 0.5;
                st *= 0.5;
            }
        }
        const Cell refined{cur, px, py, pt};
        if (better_cell(refined, best)) {
            best = refined;
        }
    }

    MembershipVerdict verdict;
    verdict.grid_x = nx;
    verdict.grid_y = ny;
    verdict.grid_t = nt;
    verdict.max_defect = best.defect;
    verdict.tolerance = config.tolerance_scale * (1.0 + max_abs_f);
    verdict.search_complete = budget_ok;
    if (best.defect > verdict.tolerance) {
        verdict.status = MembershipStatus::Violated;
        verdict.witness = ViolationWitness{best.x, best.y, best.t, best.defect};
    } else {
        verdict.status = MembershipStatus::MemberOnGrid;
    }
    return verdict;
}

std::vector<SRange> find_valid_s_range(ClassKind kind, const RealFunction& h,
                                       const RealFunction& f, const Interval& interval,
                                       const SearchConfig& config) {
    if (kind != ClassKind::SConvexSecond && kind != ClassKind::HsFirst &&
        kind != ClassKind::HsSecond) {
        throw std::invalid_argument("find_valid_s_range supports s_convex_2, hs_first, hs_second");
    }

    const auto spec_at = [&](double s) {
        if (kind == ClassKind::SConvexSecond) return ClassSpec::s_convex_second(s);
        if (kind == ClassKind::HsFirst) return ClassSpec::hs_first(h, s);
        return ClassSpec::hs_second(h, s);
    };

    std::vector<std::pair<double, bool>> probes;  // (s, member) sorted by s
    const auto member_at = [&](double s) {
        const MembershipVerdict v = check_membership(spec_at(s), f, interval, config);
        return v.status == MembershipStatus::MemberOnGrid;
    };
    const auto add_probe = [&](double s) {
        const bool m = member_at(s);
        probes.emplace_back(s, m);
        return m;
    };

    // Coarse scan at 1/32 steps plus the lower edge of the resolution.
    add_probe(kSRangeResolution);
    for (int k = 1; k <= 32; ++k) {
        add_probe(static_cast<double>(k) / 32.0);
    }
    std::sort(probes.begin(), probes.end());

    // Bisect every status change down to the reporting resolution.
    std::vector<std::pair<double, bool>> refined;
    for (std::size_t i = 0; i + 1 < probes.size(); ++i) {
        auto [lo, lo_member] = probes[i];
        auto [hi, hi_member] = probes[i + 1];
        while (lo_member != hi_member && hi - lo > kSRangeResolution) {
            const double mid = 0.5 * (lo + hi);
            const bool m = member_at(mid);
            refined.emplace_back(mid, m);
            if (m == lo_member) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }
    probes.insert(probes.end(), refined.begin(), refined.end());
    std::sort(probes.begin(), probes.end());

    std::vector<SRange> ranges;
    for (std::size_t i = 0; i < probes.size(); ++i) {
        if (!probes[i].second) continue;
        const double lo = probes[i].first;
        while (i + 1 < probes.size() && probes[i + 1].second) ++i;
        ranges.push_back({lo, probes[i].first});
    }
    return ranges;
}

}  // namespace hsconvex
