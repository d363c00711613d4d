#include "hsconvex/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <utility>

namespace hsconvex::expr {

namespace {

enum class TokenKind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Token {
    TokenKind kind;
    std::size_t position;  // 1-based offset of the first character
    double number = 0.0;
    std::string text;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
            ++pos_;
        }
        const std::size_t at = pos_ + 1;
        if (pos_ >= src_.size()) {
            return {TokenKind::End, at};
        }
        const char c = src_[pos_];
        switch (c) {
            case '+': ++pos_; return {TokenKind::Plus, at};
            case '-': ++pos_; return {TokenKind::Minus, at};
            case '*': ++pos_; return {TokenKind::Star, at};
            case '/': ++pos_; return {TokenKind::Slash, at};
            case '^': ++pos_; return {TokenKind::Caret, at};
            case '(': ++pos_; return {TokenKind::LParen, at};
            case ')': ++pos_; return {TokenKind::RParen, at};
            case ',': ++pos_; return {TokenKind::Comma, at};
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return lex_number(at);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                ++pos_;
            }
            Token t{TokenKind::Ident, at};
            t.text = std::string(src_.substr(start, pos_ - start));
            return t;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", at);
    }

private:
    Token lex_number(std::size_t at) {
        std::size_t start = pos_;
        bool any_digit = false;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            ++pos_;
            any_digit = true;
        }
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                ++pos_;
                any_digit = true;
            }
        }
        if (!any_digit) {
            throw ParseError("malformed number literal", at);
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t mark = pos_;
            ++pos_;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) {
                ++pos_;
            }
            if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                    ++pos_;
                }
            } else {
                pos_ = mark;  // "2e" is the number 2 followed by identifier "e"? No:
                              // bare 'e' after a number is a malformed exponent.
                throw ParseError("malformed exponent in number literal", mark + 1);
            }
        }
        const std::string text(src_.substr(start, pos_ - start));
        char* end = nullptr;
        const double value = std::strtod(text.c_str(), &end);
        if (!std::isfinite(value)) {
            throw ParseError("number literal out of range", at);
        }
        Token t{TokenKind::Number, at};
        t.number = value;
        return t;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

class Parser {
public:
    explicit Parser(std::string_view src) : lexer_(src) { advance(); }

    NodePtr parse_all(std::optional<std::string>& variable) {
        NodePtr root = parse_expression();
        expect(TokenKind::End, "unexpected trailing input");
        variable = variable_;
        return root;
    }

private:
    void advance() { current_ = lexer_.next(); }

    void expect(TokenKind kind, const char* message) {
        if (current_.kind != kind) {
            throw ParseError(message, current_.position);
        }
        advance();
    }

    NodePtr parse_expression() {
        NodePtr lhs = parse_term();
        while (current_.kind == TokenKind::Plus || current_.kind == TokenKind::Minus) {
            const char op = current_.kind == TokenKind::Plus ? '+' : '-';
            advance();
            NodePtr rhs = parse_term();
            lhs = std::make_shared<const Node>(Node{Node::Binary{op, std::move(lhs), std::move(rhs)}});
        }
        return lhs;
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_unary();
        while (current_.kind == TokenKind::Star || current_.kind == TokenKind::Slash) {
            const char op = current_.kind == TokenKind::Star ? '*' : '/';
            advance();
            NodePtr rhs = parse_unary();
            lhs = std::make_shared<const Node>(Node{Node::Binary{op, std::move(lhs), std::move(rhs)}});
        }
        return lhs;
    }

    NodePtr parse_unary() {
        if (current_.kind == TokenKind::Minus) {
            advance();
            NodePtr operand = parse_unary();
            return std::make_shared<const Node>(Node{Node::Negate{std::move(operand)}});
        }
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_primary();
        if (current_.kind == TokenKind::Caret) {
            advance();
            // Right-associative; the exponent may carry its own unary minus.
            NodePtr exponent = parse_unary();
            return std::make_shared<const Node>(
                Node{Node::Binary{'^', std::move(base), std::move(exponent)}});
        }
        return base;
    }

    NodePtr parse_primary() {
        switch (current_.kind) {
            case TokenKind::Number: {
                const double v = current_.number;
                advance();
                return std::make_shared<const Node>(Node{Node::Number{v}});
            }
            case TokenKind::LParen: {
                advance();
                NodePtr inner = parse_expression();
                expect(TokenKind::RParen, "expected ')'");
                return inner;
            }
            case TokenKind::Ident: {
                Token ident = current_;
                advance();
                if (current_.kind == TokenKind::LParen) {
                    return parse_call(ident);
                }
                if (variable_ && *variable_ != ident.text) {
                    throw ParseError("more than one free variable ('" + *variable_ + "' and '" +
                                         ident.text + "')",
                                     ident.position);
                }
                variable_ = ident.text;
                return std::make_shared<const Node>(Node{Node::Variable{ident.text}});
            }
            default:
                throw ParseError("expected a number, variable, function call or '('",
                                 current_.position);
        }
    }

    NodePtr parse_call(const Token& ident) {
        Builtin fn;
        std::size_t arity = 1;
        if (ident.text == "ln") {
            fn = Builtin::Ln;
        } else if (ident.text == "exp") {
            fn = Builtin::Exp;
        } else if (ident.text == "sqrt") {
            fn = Builtin::Sqrt;
        } else if (ident.text == "abs") {
            fn = Builtin::Abs;
        } else if (ident.text == "pow") {
            fn = Builtin::Pow;
            arity = 2;
        } else {
            throw ParseError("unknown function '" + ident.text + "'", ident.position);
        }
        expect(TokenKind::LParen, "expected '('");
        std::vector<NodePtr> args;
        args.push_back(parse_expression());
        while (args.size() < arity) {
            expect(TokenKind::Comma, "expected ','");
            args.push_back(parse_expression());
        }
        expect(TokenKind::RParen, "expected ')'");
        return std::make_shared<const Node>(Node{Node::Call{fn, std::move(args)}});
    }

    Lexer lexer_;
    Token current_{TokenKind::End, 0};
    std::optional<std::string> variable_;
};

const char* builtin_name(Builtin fn) {
    switch (fn) {
        case Builtin::Ln: return "ln";
        case Builtin::Exp: return "exp";
        case Builtin::Sqrt: return "sqrt";
        case Builtin::Abs: return "abs";
        case Builtin::Pow: return "pow";
    }
    return "?";
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Precedence levels used by the printer: + - < * / < unary - < ^ < atoms.
int precedence(const Node& node) {
    return std::visit(
        [](const auto& n) -> int {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Node::Binary>) {
                switch (n.op) {
                    case '+':
                    case '-': return 1;
                    case '*':
                    case '/': return 2;
                    default: return 4;  // '^'
                }
            } else if constexpr (std::is_same_v<T, Node::Negate>) {
                return 3;
            } else {
                return 5;
            }
        },
        node.data);
}

void print(const Node& node, std::string& out) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Node::Number>) {
                out += format_number(n.value);
            } else if constexpr (std::is_same_v<T, Node::Variable>) {
                out += n.name;
            } else if constexpr (std::is_same_v<T, Node::Negate>) {
                out += '-';
                const bool parens =
                    precedence(*n.operand) < 3 || std::holds_alternative<Node::Negate>(n.operand->data);
                if (parens) out += '(';
                print(*n.operand, out);
                if (parens) out += ')';
            } else if constexpr (std::is_same_v<T, Node::Binary>) {
                const int prec = precedence(node);
                if (n.op == '^') {
                    // Right-associative; the exponent slot accepts unary minus.
                    const bool lp = precedence(*n.lhs) <= prec;
                    const bool rp = precedence(*n.rhs) < 3;
                    if (lp) out += '(';
                    print(*n.lhs, out);
                    if (lp) out += ')';
                    out += '^';
                    if (rp) out += '(';
                    print(*n.rhs, out);
                    if (rp) out += ')';
                } else {
                    const bool lp = precedence(*n.lhs) < prec;
                    const bool rp = precedence(*n.rhs) <= prec;
                    if (lp) out += '(';
                    print(*n.lhs, out);
                    if (lp) out += ')';
                    out += n.op;
                    if (rp) out += '(';
                    print(*n.rhs, out);
                    if (rp) out += ')';
                }
            } else if constexpr (std::is_same_v<T, Node::Call>) {
                out += builtin_name(n.fn);
                out += '(';
                for (std::size_t i = 0; i < n.args.size(); ++i) {
                    if (i) out += ", ";
                    print(*n.args[i], out);
                }
                out += ')';
            }
        },
        node.data);
}

bool is_integer_valued(double v) {
    return std::isfinite(v) && std::floor(v) == v && std::abs(v) < 9.007199254740992e15;
}

EvalOutcome eval_node(const Node& node, double binding);

// Subexpression text in faults is filled in by the caller.
EvalOutcome eval_pow(double base, double exponent) {
    if (base > 0.0) {
        return EvalOutcome::of(std::pow(base, exponent));
    }
    if (base == 0.0) {
        if (exponent > 0.0) return EvalOutcome::of(0.0);
        if (exponent == 0.0) return EvalOutcome::of(1.0);
        return EvalOutcome::fault("zero base with negative exponent", "", base);
    }
    if (is_integer_valued(exponent)) {
        return EvalOutcome::of(std::pow(base, exponent));
    }
    return EvalOutcome::fault("negative base with non-integer exponent", "", base);
}

EvalOutcome finite_or_fault(const Node& node, double v) {
    if (std::isfinite(v)) {
        return EvalOutcome::of(v);
    }
    return EvalOutcome::fault("non-finite result", unparse(std::make_shared<const Node>(node)), v);
}

EvalOutcome eval_node(const Node& node, double binding) {
    return std::visit(
        [&](const auto& n) -> EvalOutcome {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Node::Number>) {
                return EvalOutcome::of(n.value);
            } else if constexpr (std::is_same_v<T, Node::Variable>) {
                return EvalOutcome::of(binding);
            } else if constexpr (std::is_same_v<T, Node::Negate>) {
                EvalOutcome inner = eval_node(*n.operand, binding);
                if (!inner.ok()) return inner;
                return EvalOutcome::of(-inner.value());
            } else if constexpr (std::is_same_v<T, Node::Binary>) {
                EvalOutcome lhs = eval_node(*n.lhs, binding);
                if (!lhs.ok()) return lhs;
                EvalOutcome rhs = eval_node(*n.rhs, binding);
                if (!rhs.ok()) return rhs;
                const double a = lhs.value();
                const double b = rhs.value();
                switch (n.op) {
                    case '+': return finite_or_fault(node, a + b);
                    case '-': return finite_or_fault(node, a - b);
                    case '*': return finite_or_fault(node, a * b);
                    case '/':
                        if (b == 0.0) {
                            return EvalOutcome::fault("division by zero",
                                                      unparse(std::make_shared<const Node>(node)), b);
                        }
                        return finite_or_fault(node, a / b);
                    default: {  // '^'
                        EvalOutcome p = eval_pow(a, b);
                        if (!p.ok()) {
                            DomainError err = p.error();
                            err.subexpression = unparse(std::make_shared<const Node>(node));
                            return EvalOutcome::fault(std::move(err));
                        }
                        return finite_or_fault(node, p.value());
                    }
                }
            } else {  // Call
                EvalOutcome a0 = eval_node(*n.args[0], binding);
                if (!a0.ok()) return a0;
                const double v = a0.value();
                switch (n.fn) {
                    case Builtin::Ln:
                        if (v <= 0.0) {
                            return EvalOutcome::fault("logarithm of non-positive value",
                                                      unparse(std::make_shared<const Node>(node)), v);
                        }
                        return finite_or_fault(node, std::log(v));
                    case Builtin::Exp:
                        return finite_or_fault(node, std::exp(v));
                    case Builtin::Sqrt:
                        if (v < 0.0) {
                            return EvalOutcome::fault("square root of negative value",
                                                      unparse(std::make_shared<const Node>(node)), v);
                        }
                        return finite_or_fault(node, std::sqrt(v));
                    case Builtin::Abs:
                        return EvalOutcome::of(std::abs(v));
                    case Builtin::Pow: {
                        EvalOutcome a1 = eval_node(*n.args[1], binding);
                        if (!a1.ok()) return a1;
                        EvalOutcome p = eval_pow(v, a1.value());
                        if (!p.ok()) {
                            DomainError err = p.error();
                            err.subexpression = unparse(std::make_shared<const Node>(node));
                            return EvalOutcome::fault(std::move(err));
                        }
                        return finite_or_fault(node, p.value());
                    }
                }
                return EvalOutcome::fault("unknown builtin", "", v);
            }
        },
        node.data);
}

}  // namespace

Expression Expression::parse(std::string_view source) {
    std::size_t i = 0;
    while (i < source.size() && std::isspace(static_cast<unsigned char>(source[i]))) ++i;
    if (i == source.size()) {
        throw ParseError("empty expression", 1);
    }
    Parser parser(source);
    std::optional<std::string> variable;
    NodePtr root = parser.parse_all(variable);
    return Expression(std::move(root), std::move(variable));
}

EvalOutcome Expression::evaluate(double binding) const { return eval_node(*root_, binding); }

std::string Expression::unparse() const { return expr::unparse(root_); }

std::string unparse(const NodePtr& node) {
    if (!node) return {};
    std::string out;
    print(*node, out);
    return out;
}

bool Expression::structurally_equal(const NodePtr& a, const NodePtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->data.index() != b->data.index()) return false;
    if (const auto* na = std::get_if<Node::Number>(&a->data)) {
        return na->value == std::get<Node::Number>(b->data).value;
    }
    if (const auto* va = std::get_if<Node::Variable>(&a->data)) {
        return va->name == std::get<Node::Variable>(b->data).name;
    }
    if (const auto* ua = std::get_if<Node::Negate>(&a->data)) {
        return structurally_equal(ua->operand, std::get<Node::Negate>(b->data).operand);
    }
    if (const auto* ba = std::get_if<Node::Binary>(&a->data)) {
        const auto& bb = std::get<Node::Binary>(b->data);
        return ba->op == bb.op && structurally_equal(ba->lhs, bb.lhs) &&
               structurally_equal(ba->rhs, bb.rhs);
    }
    const auto& ca = std::get<Node::Call>(a->data);
    const auto& cb = std::get<Node::Call>(b->data);
    if (ca.fn != cb.fn || ca.args.size() != cb.args.size()) return false;
    for (std::size_t i = 0; i < ca.args.size(); ++i) {
        if (!structurally_equal(ca.args[i], cb.args[i])) return false;
    }
    return true;
}

}  // namespace hsconvex::expr
