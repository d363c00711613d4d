#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hsconvex/eval_outcome.hpp"

namespace hsconvex::expr {

/// Built-in functions accepted by the grammar. `pow` is the only two-argument
/// one; `x^y` parses to the same node.
enum class Builtin { Ln, Exp, Sqrt, Abs, Pow };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    struct Number {
        double value;
    };
    struct Variable {
        std::string name;
    };
    struct Negate {
        NodePtr operand;
    };
    struct Binary {
        char op;  // one of + - * / ^
        NodePtr lhs;
        NodePtr rhs;
    };
    struct Call {
        Builtin fn;
        std::vector<NodePtr> args;
    };

    std::variant<Number, Variable, Negate, Binary, Call> data;
};

/// Syntax error with a 1-based character position into the source text.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t position)
        : std::runtime_error(message + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// A parsed one-variable expression. Immutable after parse; safe to share and
/// evaluate concurrently.
class Expression {
public:
    /// Parses `source` under standard precedence: ^ binds tightest and is
    /// right-associative, unary minus sits below ^, then * /, then + -.
    /// Throws ParseError on malformed input or more than one distinct
    /// variable name.
    static Expression parse(std::string_view source);

    /// Evaluates the tree at `binding` in IEEE double precision. Domain
    /// violations (ln of non-positive, division by zero, sqrt of negative,
    /// zero or negative base with a bad exponent, overflow) come back as
    /// domain errors, never as NaN or infinity.
    EvalOutcome evaluate(double binding) const;

    /// Name of the single free variable, or nullopt for constant expressions.
    const std::optional<std::string>& free_variable() const { return variable_; }

    /// Renders the tree back to text; reparsing the result reproduces the
    /// tree exactly.
    std::string unparse() const;

    const NodePtr& root() const { return root_; }

    friend bool operator==(const Expression& a, const Expression& b) {
        return structurally_equal(a.root_, b.root_);
    }

    static bool structurally_equal(const NodePtr& a, const NodePtr& b);

private:
    Expression(NodePtr root, std::optional<std::string> variable)
        : root_(std::move(root)), variable_(std::move(variable)) {}

    NodePtr root_;
    std::optional<std::string> variable_;
};

std::string unparse(const NodePtr& node);

}  // namespace hsconvex::expr
