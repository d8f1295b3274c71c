#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "gpbench/catalog.hpp"
#include "gpbench/sampling.hpp"

using namespace gpbench;

TEST_CASE("grid counts for the documented examples") {
    CHECK(sample_grid(SamplingSpec::grid(-1, 1, 0.1)).size() == 21);
    CHECK(sample_grid(SamplingSpec::grid(-1, 1, 0.001)).size() == 2001);
    CHECK(sample_grid(SamplingSpec::grid(0.05, 10.05, 0.1)).size() == 101);

    const auto ints = sample_grid(SamplingSpec::grid(1, 50, 1));
    REQUIRE(ints.size() == 50);
    for (std::size_t i = 0; i < ints.size(); ++i)
        CHECK(ints[i] == doctest::Approx(static_cast<double>(i + 1)));
}

TEST_CASE("grid endpoints stay within tolerance of the bound") {
    for (const SamplingSpec spec : {SamplingSpec::grid(-3, 3, 0.01), SamplingSpec::grid(0, 6.2, 0.1),
                                    SamplingSpec::grid(-0.25, 6.35, 0.2)}) {
        const auto pts = sample_grid(spec);
        CHECK(std::abs(pts.back() - spec.hi) <= 1e-9 * spec.size + 1e-12);
        CHECK(pts.front() == spec.lo);
    }
}

TEST_CASE("step larger than the interval degenerates to the start point") {
    const auto pts = sample_grid(SamplingSpec::grid(0, 1, 5));
    REQUIRE(pts.size() == 1);
    CHECK(pts[0] == 0.0);
}

TEST_CASE("point-count grids hit both endpoints") {
    const auto pts = sample_grid(SamplingSpec::grid_points(-1, 1, 20));
    REQUIRE(pts.size() == 20);
    CHECK(pts.front() == doctest::Approx(-1.0));
    CHECK(pts.back() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("every catalog grid matches its closed-form count") {
    // The closed form is cross-checked against a naive walk.
    auto naive_count = [](const SamplingSpec& s) {
        std::size_t k = 0;
        while (s.lo + static_cast<double>(k) * s.size <= s.hi + 1e-9 * s.size)
            ++k;
        return k;
    };
    int grids = 0;
    for (const BenchmarkDef& def : builtin_catalog().defs) {
        auto check_specs = [&](const std::vector<SamplingSpec>& specs) {
            for (const SamplingSpec& s : specs) {
                if (s.kind != SampleKind::Grid)
                    continue;
                ++grids;
                CHECK(grid_point_count(s) == naive_count(s));
                CHECK(sample_grid(s).size() == grid_point_count(s));
            }
        };
        check_specs(def.train_specs);
        if (def.test_specs)
            check_specs(*def.test_specs);
    }
    CHECK(grids > 30);
}

TEST_CASE("uniform sampling: bounds, count, determinism") {
    const SamplingSpec spec = SamplingSpec::uniform(-1, 1, 20);
    Rng a(42), b(42), c(43);
    const auto va = sample_uniform(spec, a);
    const auto vb = sample_uniform(spec, b);
    const auto vc = sample_uniform(spec, c);
    REQUIRE(va.size() == 20);
    for (double v : va) {
        CHECK(v >= -1.0);
        CHECK(v <= 1.0);
    }
    CHECK(va == vb);  // bitwise
    CHECK(va != vc);
}

TEST_CASE("degenerate uniform interval collapses to the bound") {
    Rng rng(7);
    const auto v = sample_uniform(SamplingSpec::uniform(5, 5 + 1e-12, 3), rng);
    REQUIRE(v.size() == 3);
    for (double x : v)
        CHECK(x == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(SamplingSpec::uniform(1, 1, 5), ConfigError);
    CHECK_THROWS_AS(SamplingSpec::uniform(0, 1, 2.5), ConfigError);
    CHECK_THROWS_AS(SamplingSpec::uniform(0, 1, 0), ConfigError);
    CHECK_THROWS_AS(SamplingSpec::grid(0, 1, 0), ConfigError);
    CHECK_THROWS_AS(SamplingSpec::grid(2, 1, 0.1), ConfigError);
}

TEST_CASE("build_inputs: single-variable grid") {
    Rng rng(1);
    const SamplingSpec spec[] = {SamplingSpec::grid(0, 2, 1)};
    const Matrix m = build_inputs(spec, rng);
    REQUIRE(m.rows == 3);
    CHECK(m.at(0, 0) == 0.0);
    CHECK(m.at(1, 0) == 1.0);
    CHECK(m.at(2, 0) == 2.0);
}

TEST_CASE("build_inputs: uniform columns are independent and equal length") {
    Rng rng(99);
    const SamplingSpec specs[] = {SamplingSpec::uniform(0, 1, 100), SamplingSpec::uniform(0, 1, 100)};
    const Matrix m = build_inputs(specs, rng);
    REQUIRE(m.rows == 100);
    REQUIRE(m.cols == 2);
    bool any_diff = false;
    for (std::size_t r = 0; r < m.rows; ++r)
        any_diff |= m.at(r, 0) != m.at(r, 1);
    CHECK(any_diff);
}

TEST_CASE("build_inputs: Cartesian product on a 3x3 miniature") {
    Rng rng(1);
    const SamplingSpec specs[] = {SamplingSpec::grid(0, 2, 1), SamplingSpec::grid(0, 2, 1)};
    const Matrix m = build_inputs(specs, rng);
    REQUIRE(m.rows == 9);
    std::set<std::pair<double, double>> seen;
    for (std::size_t r = 0; r < 9; ++r)
        seen.insert({m.at(r, 0), m.at(r, 1)});
    CHECK(seen.size() == 9);
    // Last variable varies fastest.
    CHECK(m.at(0, 0) == 0.0);
    CHECK(m.at(0, 1) == 0.0);
    CHECK(m.at(1, 0) == 0.0);
    CHECK(m.at(1, 1) == 1.0);
    CHECK(m.at(3, 0) == 1.0);
    CHECK(m.at(3, 1) == 0.0);
}

TEST_CASE("the 601x601 grid size is the arithmetic product") {
    const SamplingSpec axis = SamplingSpec::grid(-3, 3, 0.01);
    CHECK(grid_point_count(axis) == 601);
    const SamplingSpec specs[] = {axis, axis};
    CHECK(input_row_count(specs) == 361201);
}

TEST_CASE("inconsistent uniform sizes are rejected") {
    Rng rng(1);
    const SamplingSpec specs[] = {SamplingSpec::uniform(0, 1, 10), SamplingSpec::uniform(0, 1, 20)};
    CHECK_THROWS_AS(build_inputs(specs, rng), DataError);
}

TEST_CASE("mixed spec lists need matching sizes") {
    Rng rng(1);
    const SamplingSpec bad[] = {SamplingSpec::grid(0, 2, 1), SamplingSpec::uniform(0, 1, 10)};
    CHECK_THROWS_AS(build_inputs(bad, rng), DataError);
    const SamplingSpec good[] = {SamplingSpec::grid(0, 2, 1), SamplingSpec::uniform(0, 1, 3)};
    const Matrix m = build_inputs(good, rng);
    CHECK(m.rows == 3);
}
