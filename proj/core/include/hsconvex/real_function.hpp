#pragma once

#include <functional>
#include <limits>
#include <string>
#include <string_view>

#include "hsconvex/eval_outcome.hpp"
#include "hsconvex/expr.hpp"
#include "hsconvex/interval.hpp"

namespace hsconvex {

/// An evaluable real-valued function of one variable with a declared natural
/// domain. Immutable after construction; freely shareable across threads.
class RealFunction {
public:
    using Evaluator = std::function<EvalOutcome(double)>;

    RealFunction(std::string name, Evaluator evaluator, double lower, double upper,
                 bool lower_open = false, bool upper_open = false);

    /// Evaluates at x. Inputs outside the natural domain come back as domain
    /// errors without invoking the underlying evaluator.
    EvalOutcome operator()(double x) const;

    const std::string& name() const { return name_; }
    double lower() const { return lower_; }
    double upper() const { return upper_; }
    bool lower_open() const { return lower_open_; }
    bool upper_open() const { return upper_open_; }

    /// True when the closed interval [lo, hi] lies inside the natural domain.
    bool admits(double lo, double hi) const;

    bool in_domain(double x) const;

private:
    std::string name_;
    Evaluator evaluator_;
    double lower_;
    double upper_;
    bool lower_open_;
    bool upper_open_;
};

/// Weight functions on [0,1] used by the generalized convexity classes:
/// "identity" (t), "one" (1), "reciprocal" (1/t on (0,1]) and "power(p)"
/// (t^p, p > 0).
RealFunction builtin_h(std::string_view name);

/// Catalog functions restricted to `domain`: "ln", "square", "identity",
/// "power(p)", "abs", "expfn". Throws std::invalid_argument when the
/// requested domain is incompatible (e.g. ln on [-1, 1]).
RealFunction builtin_f(std::string_view name, Interval domain);

/// Wraps a parsed expression as a RealFunction on `domain`.
RealFunction from_expression(const expr::Expression& expression, Interval domain,
                             std::string name = {});

/// Resolves a CLI-style spec: a catalog name if it matches one, otherwise an
/// expression. `as_weight` selects the h catalog (domain [0,1]) instead of
/// the f catalog.
RealFunction resolve_function(std::string_view spec, Interval domain, bool as_weight = false);

/// h(t)^q for q > 0, with h(t) < 0 a domain error and h(t) = 0 mapping to 0.
/// q == 1 short-circuits to h(t) itself.
EvalOutcome powered_eval(const RealFunction& h, double t, double q);

/// The composite weight h^s(t) with s in (0,1]. For s = 1 evaluation is
/// bit-identical to h itself.
class HPower {
public:
    HPower(RealFunction base, double s);

    EvalOutcome operator()(double t) const { return powered_eval(base_, t, s_); }

    const RealFunction& base() const { return base_; }
    double exponent() const { return s_; }

    /// View as a RealFunction on the base's domain (for quadrature).
    RealFunction as_function() const;

private:
    RealFunction base_;
    double s_;
};

}  // namespace hsconvex
