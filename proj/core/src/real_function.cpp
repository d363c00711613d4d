#include "hsconvex/real_function.hpp"

#include <cmath>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <utility>

namespace hsconvex {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Parses "power(<p>)" and returns p, or nullopt when `name` is not of that
/// form.
std::optional<double> parse_power_param(std::string_view name) {
    if (name.size() < 7 || name.substr(0, 6) != "power(" || name.back() != ')') {
        return std::nullopt;
    }
    std::string inner(name.substr(6, name.size() - 7));
    char* end = nullptr;
    const double p = std::strtod(inner.c_str(), &end);
    if (end == inner.c_str() || *end != '\0' || !std::isfinite(p)) {
        throw std::invalid_argument("bad exponent in '" + std::string(name) + "'");
    }
    return p;
}

}  // namespace

RealFunction::RealFunction(std::string name, Evaluator evaluator, double lower, double upper,
                           bool lower_open, bool upper_open)
    : name_(std::move(name)),
      evaluator_(std::move(evaluator)),
      lower_(lower),
      upper_(upper),
      lower_open_(lower_open),
      upper_open_(upper_open) {
    if (!(lower < upper)) {
        throw std::invalid_argument("RealFunction '" + name_ + "': empty domain");
    }
}

bool RealFunction::in_domain(double x) const {
    if (lower_open_ ? !(x > lower_) : !(x >= lower_)) return false;
    if (upper_open_ ? !(x < upper_) : !(x <= upper_)) return false;
    return true;
}

EvalOutcome RealFunction::operator()(double x) const {
    if (!in_domain(x)) {
        return EvalOutcome::fault("input outside natural domain", name_, x);
    }
    return evaluator_(x);
}

bool RealFunction::admits(double lo, double hi) const {
    if (lower_open_ ? !(lo > lower_) : !(lo >= lower_)) return false;
    if (upper_open_ ? !(hi < upper_) : !(hi <= upper_)) return false;
    return true;
}

RealFunction builtin_h(std::string_view name) {
    if (name == "identity") {
        return RealFunction("identity", [](double t) { return EvalOutcome::of(t); }, 0.0, 1.0);
    }
    if (name == "one") {
        return RealFunction("one", [](double) { return EvalOutcome::of(1.0); }, 0.0, 1.0);
    }
    if (name == "reciprocal") {
        return RealFunction(
            "reciprocal",
            [](double t) {
                if (t == 0.0) {
                    return EvalOutcome::fault("division by zero", "1/t", t);
                }
                return EvalOutcome::of(1.0 / t);
            },
            0.0, 1.0, /*lower_open=*/true);
    }
    if (auto p = parse_power_param(name)) {
        if (!(*p > 0.0)) {
            throw std::invalid_argument("builtin_h power exponent must be > 0");
        }
        const double exponent = *p;
        return RealFunction(
            std::string(name),
            [exponent](double t) { return EvalOutcome::of(std::pow(t, exponent)); }, 0.0, 1.0);
    }
    throw std::invalid_argument("unknown weight function '" + std::string(name) +
                                "' (expected identity, one, reciprocal or power(p))");
}

RealFunction builtin_f(std::string_view name, Interval domain) {
    const auto restrict_to = [&domain](std::string fname, RealFunction::Evaluator eval,
                                       double natural_lo, double natural_hi,
                                       bool natural_lo_open = false) {
        const bool lo_ok = natural_lo_open ? domain.a > natural_lo : domain.a >= natural_lo;
        if (!lo_ok || domain.b > natural_hi) {
            throw std::invalid_argument("function '" + fname + "' is not defined on [" +
                                        std::to_string(domain.a) + ", " + std::to_string(domain.b) +
                                        "]");
        }
        return RealFunction(std::move(fname), std::move(eval), domain.a, domain.b);
    };

    if (name == "ln") {
        return restrict_to(
            "ln",
            [](double x) {
                if (x <= 0.0) {
                    return EvalOutcome::fault("logarithm of non-positive value", "ln", x);
                }
                return EvalOutcome::of(std::log(x));
            },
            0.0, kInf, /*natural_lo_open=*/true);
    }
    if (name == "square") {
        return restrict_to("square", [](double x) { return EvalOutcome::of(x * x); }, -kInf, kInf);
    }
    if (name == "identity") {
        return restrict_to("identity", [](double x) { return EvalOutcome::of(x); }, -kInf, kInf);
    }
    if (name == "abs") {
        return restrict_to("abs", [](double x) { return EvalOutcome::of(std::abs(x)); }, -kInf,
                           kInf);
    }
    if (name == "expfn") {
        return restrict_to(
            "expfn",
            [](double x) {
                const double v = std::exp(x);
                if (!std::isfinite(v)) {
                    return EvalOutcome::fault("non-finite result", "exp", x);
                }
                return EvalOutcome::of(v);
            },
            -kInf, kInf);
    }
    if (auto p = parse_power_param(name)) {
        if (!(*p > 0.0)) {
            throw std::invalid_argument("builtin_f power exponent must be > 0");
        }
        const double exponent = *p;
        return restrict_to(
            std::string(name),
            [exponent](double x) {
                if (x < 0.0) {
                    return EvalOutcome::fault("negative base with non-integer exponent", "power",
                                              x);
                }
                return EvalOutcome::of(std::pow(x, exponent));
            },
            0.0, kInf);
    }
    throw std::invalid_argument("unknown catalog function '" + std::string(name) + "'");
}

RealFunction from_expression(const expr::Expression& expression, Interval domain,
                             std::string name) {
    if (name.empty()) {
        name = expression.unparse();
    }
    return RealFunction(
        std::move(name), [expression](double x) { return expression.evaluate(x); }, domain.a,
        domain.b);
}

RealFunction resolve_function(std::string_view spec, Interval domain, bool as_weight) {
    if (as_weight) {
        if (spec == "identity" || spec == "one" || spec == "reciprocal" ||
            parse_power_param(spec)) {
            return builtin_h(spec);
        }
        return from_expression(expr::Expression::parse(spec), domain, std::string(spec));
    }
    if (spec == "ln" || spec == "square" || spec == "identity" || spec == "abs" ||
        spec == "expfn" || parse_power_param(spec)) {
        return builtin_f(spec, domain);
    }
    return from_expression(expr::Expression::parse(spec), domain, std::string(spec));
}

EvalOutcome powered_eval(const RealFunction& h, double t, double q) {
    if (q == 1.0) {
        return h(t);
    }
    EvalOutcome base = h(t);
    if (!base.ok()) {
        return base;
    }
    const double v = base.value();
    if (v < 0.0) {
        return EvalOutcome::fault("negative weight value raised to a power", h.name(), v);
    }
    if (v == 0.0) {
        return EvalOutcome::of(0.0);  // q > 0: lim_{v->0+} v^q = 0
    }
    const double powered = std::exp(q * std::log(v));
    if (!std::isfinite(powered)) {
        return EvalOutcome::fault("non-finite result", h.name(), v);
    }
    return EvalOutcome::of(powered);
}

HPower::HPower(RealFunction base, double s) : base_(std::move(base)), s_(s) {
    if (!(s > 0.0) || s > 1.0) {
        throw std::invalid_argument("HPower exponent must lie in (0, 1], got " +
                                    std::to_string(s));
    }
    if (!(base_.lower() <= 0.0 && base_.upper() >= 1.0)) {
        throw std::invalid_argument("HPower base '" + base_.name() +
                                    "' must be defined on [0,1] or (0,1)");
    }
}

RealFunction HPower::as_function() const {
    RealFunction h = base_;
    const double s = s_;
    std::string name = h.name() + "^" + std::to_string(s);
    return RealFunction(
        std::move(name), [h, s](double t) { return powered_eval(h, t, s); }, h.lower(), h.upper(),
        h.lower_open(), h.upper_open());
}

}  // namespace hsconvex
