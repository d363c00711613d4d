#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hsconvex/convexity_classes.hpp"
#include "hsconvex/hadamard.hpp"

namespace hsconvex {

enum class MeanKind {
    Arithmetic,
    Geometric,
    Harmonic,
    Quadratic,
    Logarithmic,
    Identric,
    PLogarithmic,
};

MeanKind mean_kind_from_string(std::string_view name);
std::string to_string(MeanKind kind);

/// The six parameter-free means. Arguments are sorted before evaluation, so
/// mean(k, a, b) == mean(k, b, a) bit-exactly.
double mean(MeanKind kind, double a, double b);

/// The p-logarithmic mean L_p. p = 0 and p = -1 route to the identric and
/// logarithmic means (L_0 = I, L_-1 = L); a == b returns a. Computed in log
/// space with a series branch near the diagonal.
double p_log_mean(double a, double b, double p);

struct ChainEntry {
    std::string label;
    double value = 0.0;
};

/// The ordering H <= G <= L <= I <= A <= K with per-link margins.
struct ChainReport {
    double a = 0.0;
    double b = 0.0;
    std::vector<ChainEntry> means;
    std::vector<Comparison> comparisons;

    bool all_hold() const;
};

ChainReport chain_check(double a, double b);

/// Numerical audit of one of the four special-means propositions for
/// f(x) = ln x. Carries both the bound exactly as printed and the bound
/// re-derived from the matching (h-s)_2 theorem with h(t) = t, because the
/// two disagree for proposition 2.
struct PropositionReport {
    int id = 0;
    double a = 0.0;
    double b = 0.0;
    double s = 0.0;

    double ln_identric = 0.0;       // ln I(a,b), closed form
    double ln_identric_quad = 0.0;  // integral mean of ln over [a,b]
    double quad_error = 0.0;

    std::optional<double> lower_printed;  // proposition 2 only
    double upper_printed = 0.0;
    std::optional<double> lower_derived;
    double upper_derived = 0.0;
    std::string derived_theorem;

    bool holds_printed = false;
    bool holds_derived = false;

    MembershipVerdict hypothesis;  // ln in SX((h-s)_2) with h = identity on [a,b]
};

/// id in 1..4; requires a, b > 2 with a <= b and s in (0,1].
PropositionReport proposition_check(int id, double a, double b, double s,
                                    const SearchConfig& search = {});

}  // namespace hsconvex
