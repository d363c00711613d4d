#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hsconvex/interval.hpp"
#include "hsconvex/real_function.hpp"

namespace hsconvex {

enum class ClassKind {
    Convex,          // f(tx+(1-t)y) <= t f(x) + (1-t) f(y)
    GodunovaLevin,   // weights 1/t, 1/(1-t), t in (0,1)
    PFunction,       // weights 1, 1
    SConvexSecond,   // weights t^s, (1-t)^s
    HConvex,         // weights h(t), h(1-t)
    HsFirst,         // weights h^s(t), 1 - h^s(t)
    HsSecond,        // weights h^s(t), h^s(1-t)
};

ClassKind class_kind_from_string(std::string_view name);
std::string to_string(ClassKind kind);

/// A convexity class together with the parameters its kind requires: a weight
/// function h for the h-based kinds, an exponent s in (0,1] for the s-based
/// kinds. Constructed through the factories so parameters are present exactly
/// when required.
class ClassSpec {
public:
    static ClassSpec convex() { return ClassSpec(ClassKind::Convex, std::nullopt, std::nullopt); }
    static ClassSpec godunova_levin() {
        return ClassSpec(ClassKind::GodunovaLevin, std::nullopt, std::nullopt);
    }
    static ClassSpec p_function() {
        return ClassSpec(ClassKind::PFunction, std::nullopt, std::nullopt);
    }
    static ClassSpec s_convex_second(double s);
    static ClassSpec h_convex(RealFunction h);
    static ClassSpec hs_first(RealFunction h, double s);
    static ClassSpec hs_second(RealFunction h, double s);

    /// Generic factory used by the CLI; validates parameter presence.
    static ClassSpec make(ClassKind kind, std::optional<RealFunction> h, std::optional<double> s);

    ClassKind kind() const { return kind_; }
    bool has_h() const { return h_.has_value(); }
    bool has_s() const { return s_.has_value(); }
    const RealFunction& h() const { return *h_; }
    double s() const { return *s_; }

    /// Definitional t-domain: open (0,1) for Godunova-Levin, closed [0,1]
    /// otherwise.
    bool t_domain_open() const { return kind_ == ClassKind::GodunovaLevin; }

    /// The t range actually sampled by grid search. Godunova-Levin clips to
    /// [1e-3, 1-1e-3] because 1/t blows up at the open endpoints.
    std::pair<double, double> t_grid_range() const;

private:
    ClassSpec(ClassKind kind, std::optional<RealFunction> h, std::optional<double> s)
        : kind_(kind), h_(std::move(h)), s_(std::move(s)) {}

    ClassKind kind_;
    std::optional<RealFunction> h_;
    std::optional<double> s_;
};

/// A point certifying a membership violation: the defining inequality's
/// LHS - RHS is positive there.
struct ViolationWitness {
    double x = 0.0;
    double y = 0.0;
    double t = 0.0;
    double defect = 0.0;
};

enum class MembershipStatus { MemberOnGrid, Violated };

/// Sampling verdict. "member_on_grid" is not a proof of membership, only the
/// statement that no sampled or refined point produced a defect above
/// tolerance.
struct MembershipVerdict {
    MembershipStatus status = MembershipStatus::MemberOnGrid;
    std::optional<ViolationWitness> witness;
    int grid_x = 0;
    int grid_y = 0;
    int grid_t = 0;
    double max_defect = 0.0;
    double tolerance = 0.0;
    bool search_complete = true;  // false when the evaluation budget ran out
};

struct SearchConfig {
    int grid_x = 41;
    int grid_y = 41;
    int grid_t = 41;
    int refine_top_k = 16;
    double refine_step_tolerance = 1e-6;
    double tolerance_scale = 1e-9;  // violation when defect > scale * (1 + max|f|)
    std::int64_t max_defect_evaluations = 4000000;
};

/// A domain error hit while searching; carries the sample point.
class SearchError : public std::runtime_error {
public:
    SearchError(double x, double y, double t, DomainError cause)
        : std::runtime_error("domain error during membership search at (x=" + std::to_string(x) +
                             ", y=" + std::to_string(y) + ", t=" + std::to_string(t) +
                             "): " + cause.reason),
          x_(x),
          y_(y),
          t_(t),
          cause_(std::move(cause)) {}

    double x() const { return x_; }
    double y() const { return y_; }
    double t() const { return t_; }
    const DomainError& cause() const { return cause_; }

private:
    double x_, y_, t_;
    DomainError cause_;
};

/// The convex combination t*x + (1-t)*y, clamped into [min(x,y), max(x,y)] so
/// floating-point rounding cannot push it outside the functions' domain.
double convex_combination(double x, double y, double t);

/// LHS - RHS of the class's defining inequality at one point. Positive means
/// the inequality is violated there. Throws SearchError when f or h fault.
double defect(const ClassSpec& spec, const RealFunction& f, const Interval& interval, double x,
              double y, double t);

/// Grid search plus local refinement for the largest defect. See SearchConfig
/// for the knobs.
MembershipVerdict check_membership(const ClassSpec& spec, const RealFunction& f,
                                   const Interval& interval, const SearchConfig& config = {});

struct SRange {
    double lo = 0.0;
    double hi = 0.0;
};

/// Maximal subintervals of (0,1] on which check_membership reports
/// member_on_grid, located by coarse scan plus bisection to 1e-3 resolution.
/// Valid kinds: SConvexSecond, HsFirst, HsSecond.
std::vector<SRange> find_valid_s_range(ClassKind kind, const RealFunction& h,
                                       const RealFunction& f, const Interval& interval,
                                       const SearchConfig& config = {});

/// Resolution of the s boundaries reported by find_valid_s_range.
inline constexpr double kSRangeResolution = 1e-3;

}  // namespace hsconvex
