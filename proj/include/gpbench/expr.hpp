#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gpbench/errors.hpp"

namespace gpbench {

enum class UnaryOp { Neg, Sqrt, Sin, Cos, Ln, Exp, Arcsinh, Abs };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };

// Where an evaluation left the function's domain. Evaluation never returns a
// silent NaN or infinity; it reports one of these instead.
enum class Violation {
    None,
    DivByZero,
    LogNonPositive,
    SqrtNegative,
    PowDomain,   // 0^negative or negative^non-integer
    NonFinite,   // overflow
};

std::string_view violation_name(Violation v);

// Expression tree in a node pool. Children always precede their parent, so a
// single forward pass over the pool evaluates the tree bottom-up.
class Expr {
public:
    enum class Kind { Constant, Variable, Unary, Binary, TriangularSum };

    struct Node {
        Kind kind{};
        double value = 0.0;  // Constant
        int var = 0;         // Variable, 1-based
        UnaryOp uop{};
        BinaryOp bop{};
        int lhs = -1, rhs = -1;  // child indices; lhs doubles as the sole child
    };

    int add_constant(double v);
    int add_variable(int index_1based);  // throws DataError on index < 1
    int add_unary(UnaryOp op, int child);
    int add_binary(BinaryOp op, int lhs, int rhs);
    int add_triangular_sum(int child);  // x*(x+1)/2, the closed form of sum(1..x)
    void set_root(int index);

    const std::vector<Node>& nodes() const { return nodes_; }
    int root() const { return root_; }
    bool empty() const { return nodes_.empty(); }
    int max_var_index() const;

    std::string to_string() const;

private:
    int push(Node n);
    std::vector<Node> nodes_;
    int root_ = -1;
};

struct EvalOutcome {
    double value = 0.0;
    Violation violation = Violation::None;
    bool ok() const { return violation == Violation::None; }
};

// Forward pass over the node pool; `scratch` holds one slot per node and is
// resized as needed (reuse it across rows when evaluating in bulk).
EvalOutcome eval_expr(const Expr& e, std::span<const double> point,
                      std::vector<double>& scratch);
EvalOutcome eval_expr(const Expr& e, std::span<const double> point);

struct ParseError : DataError {
    std::size_t position;
    ParseError(const std::string& msg, std::size_t pos);
};

// Infix grammar: + - * / ^ (right-associative, binds tighter than unary
// minus), parentheses, numeric literals, pi, variables x1..xN, and the unary
// functions sqrt, sin, cos, ln, exp, arcsinh (alias asinh), abs, tri.
Expr parse_expression(std::string_view text);

} // namespace gpbench
