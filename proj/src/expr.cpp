#include "gpbench/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

#include "gpbench/textio.hpp"

namespace gpbench {

std::string_view violation_name(Violation v) {
    switch (v) {
    case Violation::None: return "none";
    case Violation::DivByZero: return "div-by-zero";
    case Violation::LogNonPositive: return "log-nonpositive";
    case Violation::SqrtNegative: return "sqrt-negative";
    case Violation::PowDomain: return "pow-domain";
    case Violation::NonFinite: return "non-finite";
    }
    return "?";
}

int Expr::push(Node n) {
    nodes_.push_back(n);
    return static_cast<int>(nodes_.size()) - 1;
}

int Expr::add_constant(double v) {
    Node n;
    n.kind = Kind::Constant;
    n.value = v;
    return push(n);
}

int Expr::add_variable(int index_1based) {
    if (index_1based < 1)
        throw DataError("variable index must be >= 1 (variables are x1..xN)");
    Node n;
    n.kind = Kind::Variable;
    n.var = index_1based;
    return push(n);
}

int Expr::add_unary(UnaryOp op, int child) {
    GPB_ENSURE(child >= 0 && child < static_cast<int>(nodes_.size()), "bad child index");
    Node n;
    n.kind = Kind::Unary;
    n.uop = op;
    n.lhs = child;
    return push(n);
}

int Expr::add_binary(BinaryOp op, int lhs, int rhs) {
    GPB_ENSURE(lhs >= 0 && lhs < static_cast<int>(nodes_.size()), "bad lhs index");
    GPB_ENSURE(rhs >= 0 && rhs < static_cast<int>(nodes_.size()), "bad rhs index");
    Node n;
    n.kind = Kind::Binary;
    n.bop = op;
    n.lhs = lhs;
    n.rhs = rhs;
    return push(n);
}

int Expr::add_triangular_sum(int child) {
    GPB_ENSURE(child >= 0 && child < static_cast<int>(nodes_.size()), "bad child index");
    Node n;
    n.kind = Kind::TriangularSum;
    n.lhs = child;
    return push(n);
}

void Expr::set_root(int index) {
    GPB_ENSURE(index >= 0 && index < static_cast<int>(nodes_.size()), "bad root index");
    root_ = index;
}

int Expr::max_var_index() const {
    int m = 0;
    for (const Node& n : nodes_)
        if (n.kind == Kind::Variable && n.var > m)
            m = n.var;
    return m;
}

namespace {

std::string unary_name(UnaryOp op) {
    switch (op) {
    case UnaryOp::Neg: return "-";
    case UnaryOp::Sqrt: return "sqrt";
    case UnaryOp::Sin: return "sin";
    case UnaryOp::Cos: return "cos";
    case UnaryOp::Ln: return "ln";
    case UnaryOp::Exp: return "exp";
    case UnaryOp::Arcsinh: return "arcsinh";
    case UnaryOp::Abs: return "abs";
    }
    return "?";
}

char binary_symbol(BinaryOp op) {
    switch (op) {
    case BinaryOp::Add: return '+';
    case BinaryOp::Sub: return '-';
    case BinaryOp::Mul: return '*';
    case BinaryOp::Div: return '/';
    case BinaryOp::Pow: return '^';
    }
    return '?';
}

void print_node(const Expr& e, int idx, std::string& out) {
    const Expr::Node& n = e.nodes()[idx];
    switch (n.kind) {
    case Expr::Kind::Constant:
        if (n.value < 0) {
            out += '(';
            out += format_double(n.value);
            out += ')';
        } else {
            out += format_double(n.value);
        }
        break;
    case Expr::Kind::Variable:
        out += 'x';
        out += std::to_string(n.var);
        break;
    case Expr::Kind::Unary:
        if (n.uop == UnaryOp::Neg) {
            out += "(-";
            print_node(e, n.lhs, out);
            out += ')';
        } else {
            out += unary_name(n.uop);
            out += '(';
            print_node(e, n.lhs, out);
            out += ')';
        }
        break;
    case Expr::Kind::Binary:
        out += '(';
        print_node(e, n.lhs, out);
        out += binary_symbol(n.bop);
        print_node(e, n.rhs, out);
        out += ')';
        break;
    case Expr::Kind::TriangularSum:
        out += "tri(";
        print_node(e, n.lhs, out);
        out += ')';
        break;
    }
}

} // namespace

std::string Expr::to_string() const {
    GPB_ENSURE(root_ >= 0, "expression has no root");
    std::string out;
    print_node(*this, root_, out);
    return out;
}

EvalOutcome eval_expr(const Expr& e, std::span<const double> point,
                      std::vector<double>& scratch) {
    GPB_ENSURE(e.root() >= 0, "expression has no root");
    const auto& nodes = e.nodes();
    scratch.resize(nodes.size());
    // Children precede parents in the pool, so one forward pass suffices.
    for (std::size_t i = 0; i <= static_cast<std::size_t>(e.root()); ++i) {
        const Expr::Node& n = nodes[i];
        double v = 0.0;
        switch (n.kind) {
        case Expr::Kind::Constant:
            v = n.value;
            break;
        case Expr::Kind::Variable:
            GPB_ENSURE(static_cast<std::size_t>(n.var) <= point.size(),
                       "point shorter than max variable index");
            v = point[static_cast<std::size_t>(n.var) - 1];
            break;
        case Expr::Kind::Unary: {
            const double a = scratch[n.lhs];
            switch (n.uop) {
            case UnaryOp::Neg: v = -a; break;
            case UnaryOp::Sqrt:
                if (a < 0.0)
                    return {0.0, Violation::SqrtNegative};
                v = std::sqrt(a);
                break;
            case UnaryOp::Sin: v = std::sin(a); break;
            case UnaryOp::Cos: v = std::cos(a); break;
            case UnaryOp::Ln:
                if (a <= 0.0)
                    return {0.0, Violation::LogNonPositive};
                v = std::log(a);
                break;
            case UnaryOp::Exp: v = std::exp(a); break;
            case UnaryOp::Arcsinh: v = std::asinh(a); break;
            case UnaryOp::Abs: v = std::abs(a); break;
            }
            break;
        }
        case Expr::Kind::Binary: {
            const double a = scratch[n.lhs];
            const double b = scratch[n.rhs];
            switch (n.bop) {
            case BinaryOp::Add: v = a + b; break;
            case BinaryOp::Sub: v = a - b; break;
            case BinaryOp::Mul: v = a * b; break;
            case BinaryOp::Div:
                if (b == 0.0)
                    return {0.0, Violation::DivByZero};
                v = a / b;
                break;
            case BinaryOp::Pow:
                if (a == 0.0 && b < 0.0)
                    return {0.0, Violation::PowDomain};
                if (a < 0.0 && b != std::trunc(b))
                    return {0.0, Violation::PowDomain};
                v = std::pow(a, b);
                break;
            }
            break;
        }
        case Expr::Kind::TriangularSum: {
            const double a = scratch[n.lhs];
            v = a * (a + 1.0) / 2.0;
            break;
        }
        }
        if (!std::isfinite(v))
            return {0.0, Violation::NonFinite};
        scratch[i] = v;
    }
    return {scratch[static_cast<std::size_t>(e.root())], Violation::None};
}

EvalOutcome eval_expr(const Expr& e, std::span<const double> point) {
    std::vector<double> scratch;
    return eval_expr(e, point, scratch);
}

ParseError::ParseError(const std::string& msg, std::size_t pos)
    : DataError(msg + " (at offset " + std::to_string(pos) + ")"), position(pos) {}

namespace {

// Recursive-descent parser over the raw text; builds nodes children-first.
class Parser {
public:
    Parser(std::string_view text, Expr& out) : text_(text), expr_(out) {}

    void run() {
        const int root = parse_sum();
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError("unexpected trailing input", pos_);
        expr_.set_root(root);
    }

private:
    std::string_view text_;
    Expr& expr_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c))
            throw ParseError(std::string("expected '") + c + "'", pos_);
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    int parse_sum() {
        int lhs = parse_term();
        for (;;) {
            if (accept('+'))
                lhs = expr_.add_binary(BinaryOp::Add, lhs, parse_term());
            else if (accept('-'))
                lhs = expr_.add_binary(BinaryOp::Sub, lhs, parse_term());
            else
                return lhs;
        }
    }

    int parse_term() {
        int lhs = parse_unary();
        for (;;) {
            if (accept('*'))
                lhs = expr_.add_binary(BinaryOp::Mul, lhs, parse_unary());
            else if (accept('/'))
                lhs = expr_.add_binary(BinaryOp::Div, lhs, parse_unary());
            else
                return lhs;
        }
    }

    // '^' binds tighter than unary minus: -x^2 is -(x^2).
    int parse_unary() {
        if (accept('-'))
            return expr_.add_unary(UnaryOp::Neg, parse_unary());
        return parse_power();
    }

    int parse_power() {
        const int base = parse_primary();
        if (accept('^'))
            return expr_.add_binary(BinaryOp::Pow, base, parse_unary());
        return base;
    }

    int parse_primary() {
        skip_ws();
        if (pos_ >= text_.size())
            throw ParseError("unexpected end of expression", pos_);
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            const int inner = parse_sum();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)))
            return parse_identifier();
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    int parse_number() {
        const std::size_t start = pos_;
        double value = 0.0;
        auto res = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
        if (res.ec != std::errc())
            throw ParseError("malformed number", start);
        pos_ = static_cast<std::size_t>(res.ptr - text_.data());
        return expr_.add_constant(value);
    }

    int parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        const std::string_view name = text_.substr(start, pos_ - start);

        if (name == "pi")
            return expr_.add_constant(3.14159265358979323846);

        if (name.size() >= 2 && name[0] == 'x' &&
            std::isdigit(static_cast<unsigned char>(name[1]))) {
            int index = 0;
            auto res = std::from_chars(name.data() + 1, name.data() + name.size(), index);
            if (res.ec == std::errc() && res.ptr == name.data() + name.size()) {
                if (index == 0)
                    throw ParseError("variable index 0 is invalid (variables start at x1)",
                                     start);
                return expr_.add_variable(index);
            }
        }

        // Named unary function.
        UnaryOp op = UnaryOp::Abs;
        bool is_tri = false;
        if (name == "sqrt") op = UnaryOp::Sqrt;
        else if (name == "sin") op = UnaryOp::Sin;
        else if (name == "cos") op = UnaryOp::Cos;
        else if (name == "ln") op = UnaryOp::Ln;
        else if (name == "exp") op = UnaryOp::Exp;
        else if (name == "arcsinh" || name == "asinh") op = UnaryOp::Arcsinh;
        else if (name == "abs") op = UnaryOp::Abs;
        else if (name == "tri") is_tri = true;
        else
            throw ParseError("unknown function or identifier '" + std::string(name) + "'", start);

        expect('(');
        const int arg = parse_sum();
        expect(')');
        return is_tri ? expr_.add_triangular_sum(arg) : expr_.add_unary(op, arg);
    }
};

} // namespace

Expr parse_expression(std::string_view text) {
    Expr e;
    Parser(text, e).run();
    return e;
}

} // namespace gpbench
