#pragma once

#include <cmath>
#include <memory>
#include <string>
#include <utility>

namespace hsconvex {

/// Description of a failed evaluation: which rule was broken, the text of the
/// sub-expression that broke it, and the offending input value.
struct DomainError {
    std::string reason;
    std::string subexpression;
    double input = 0.0;
};

/// Result of evaluating a real-valued function at a point. Either a finite
/// double or a domain error; non-finite values never escape as plain doubles.
class EvalOutcome {
public:
    static EvalOutcome of(double value) {
        EvalOutcome out;
        out.value_ = value;
        return out;
    }

    static EvalOutcome fault(std::string reason, std::string subexpression, double input) {
        EvalOutcome out;
        out.error_ = std::make_shared<const DomainError>(
            DomainError{std::move(reason), std::move(subexpression), input});
        return out;
    }

    static EvalOutcome fault(DomainError err) {
        EvalOutcome out;
        out.error_ = std::make_shared<const DomainError>(std::move(err));
        return out;
    }

    bool ok() const { return error_ == nullptr; }
    explicit operator bool() const { return ok(); }

    /// Only meaningful when ok().
    double value() const { return value_; }

    /// Only meaningful when !ok().
    const DomainError& error() const { return *error_; }

private:
    double value_ = 0.0;
    std::shared_ptr<const DomainError> error_;
};

}  // namespace hsconvex
