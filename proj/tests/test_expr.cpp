#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gpbench/catalog.hpp"
#include "gpbench/expr.hpp"
#include "gpbench/rng.hpp"
#include "support/oracles.hpp"

using namespace gpbench;

namespace {

double eval_at(const std::string& text, std::vector<double> point) {
    const Expr e = parse_expression(text);
    const EvalOutcome r = eval_expr(e, point);
    REQUIRE(r.ok());
    return r.value;
}

Violation violation_at(const std::string& text, std::vector<double> point) {
    const Expr e = parse_expression(text);
    return eval_expr(e, point).violation;
}

} // namespace

TEST_CASE("polynomial at 1 sums to 3") {
    CHECK(eval_at("x1^3+x1^2+x1", {1.0}) == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("sin factor vanishes at zero") {
    CHECK(eval_at("6*sin(x1)*cos(x2)", {0.0, 17.25}) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("affine formula at origin keeps intercept") {
    CHECK(eval_at("1.57+24.3*x4", {0.0, 0.0, 0.0, 0.0}) == doctest::Approx(1.57));
}

TEST_CASE("rational formula by direct substitution") {
    CHECK(eval_at("8/(2+x1^2+x2^2)", {0.0, 0.0}) == doctest::Approx(4.0));
}

TEST_CASE("triangular node matches brute-force summation") {
    CHECK(eval_at("tri(x1)", {50.0}) == doctest::Approx(oracle::brute_triangular(50)));
    CHECK(eval_at("tri(x1)", {50.0}) == doctest::Approx(1275.0));
    for (long long k = 1; k <= 120; ++k)
        CHECK(eval_at("tri(x1)", {static_cast<double>(k)}) ==
              doctest::Approx(oracle::brute_triangular(k)).epsilon(1e-14));
}

TEST_CASE("domain violations are values, not crashes") {
    CHECK(violation_at("3+2.13*ln(x5)", {0, 0, 0, 0, -1.0}) == Violation::LogNonPositive);
    CHECK(violation_at("ln(x1)", {0.0}) == Violation::LogNonPositive);
    CHECK(violation_at("sqrt(x1)", {-4.0}) == Violation::SqrtNegative);
    CHECK(violation_at("1/x1", {0.0}) == Violation::DivByZero);
    CHECK(violation_at("x1^(-1)", {0.0}) == Violation::PowDomain);
    CHECK(violation_at("x1^0.5", {-2.0}) == Violation::PowDomain);
    CHECK(violation_at("exp(x1)", {1000.0}) == Violation::NonFinite);
    CHECK(violation_at("x1^3", {-2.0}) == Violation::None);
    CHECK(eval_at("x1^3", {-2.0}) == doctest::Approx(-8.0));
}

TEST_CASE("precedence: power binds tighter than unary minus") {
    CHECK(eval_at("-x1^2", {2.0}) == doctest::Approx(-4.0));
    CHECK(eval_at("2^(-3)", {}) == doctest::Approx(0.125));
    CHECK(eval_at("x1^2^3", {1.1}) == doctest::Approx(std::pow(1.1, 8.0)));
    CHECK(eval_at("2*pi", {}) == doctest::Approx(6.283185307179586));
}

TEST_CASE("parse errors carry a position") {
    CHECK_THROWS_AS(parse_expression("1+*2"), ParseError);
    try {
        parse_expression("1+*2");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position == 2);
    }
    CHECK_THROWS_AS(parse_expression("foo(x1)"), ParseError);
    CHECK_THROWS_AS(parse_expression("x0+1"), ParseError);
    CHECK_THROWS_AS(parse_expression("sin(x1"), ParseError);
    CHECK_THROWS_AS(parse_expression(""), ParseError);
    CHECK_THROWS_AS(parse_expression("1+2)"), ParseError);
}

TEST_CASE("asinh alias and abs") {
    CHECK(eval_at("arcsinh(x1)", {3.0}) == doctest::Approx(std::asinh(3.0)));
    CHECK(eval_at("asinh(x1)", {3.0}) == doctest::Approx(std::asinh(3.0)));
    CHECK(eval_at("abs(x1)", {-3.5}) == doctest::Approx(3.5));
}

TEST_CASE("flat evaluation agrees with the recursive oracle on the whole catalog") {
    // 1000 random points per benchmark drawn from the per-variable boxes.
    for (const BenchmarkDef& def : builtin_catalog().defs) {
        Rng rng(fnv1a(def.name));
        std::vector<double> point(def.train_specs.size());
        std::vector<double> scratch;
        int checked = 0;
        for (int trial = 0; trial < 1000; ++trial) {
            for (std::size_t j = 0; j < point.size(); ++j)
                point[j] = rng.uniform(def.train_specs[j].lo, def.train_specs[j].hi);
            const EvalOutcome fast = eval_expr(def.objective, point, scratch);
            const EvalOutcome slow = oracle::naive_eval_expr(def.objective, point);
            CHECK(fast.violation == slow.violation);
            if (fast.ok() && slow.ok()) {
                const double scale = std::max(1.0, std::abs(slow.value));
                CHECK(std::abs(fast.value - slow.value) / scale <= 1e-12);
                ++checked;
            }
        }
        CHECK(checked > 0);
    }
}

TEST_CASE("to_string round-trips through the parser") {
    for (const BenchmarkDef& def : builtin_catalog().defs) {
        const Expr reparsed = parse_expression(def.objective.to_string());
        Rng rng(fnv1a(def.name) ^ 0xabcd);
        std::vector<double> point(def.train_specs.size());
        for (int trial = 0; trial < 50; ++trial) {
            for (std::size_t j = 0; j < point.size(); ++j)
                point[j] = rng.uniform(def.train_specs[j].lo, def.train_specs[j].hi);
            const EvalOutcome a = eval_expr(def.objective, point);
            const EvalOutcome b = eval_expr(reparsed, point);
            CHECK(a.violation == b.violation);
            if (a.ok())
                CHECK(std::abs(a.value - b.value) <= 1e-12 * std::max(1.0, std::abs(a.value)));
        }
    }
}

TEST_CASE("variable index validation") {
    Expr e;
    CHECK_THROWS_AS(e.add_variable(0), DataError);
    const int v = e.add_variable(3);
    e.set_root(v);
    CHECK(e.max_var_index() == 3);
}
