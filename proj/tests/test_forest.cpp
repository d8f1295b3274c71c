#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "gpbench/forest.hpp"
#include "gpbench/rng.hpp"
#include "support/oracles.hpp"

using namespace gpbench;

namespace {

void make_regression(std::size_t n, std::size_t d, std::uint64_t seed, Matrix& x,
                 std::vector<double>& y, int signal_feature = -1) {
    Rng rng(seed);
    x = Matrix(n, d);
    y.resize(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < d; ++c)
            x.at(r, c) = rng.uniform(-1, 1);
        if (signal_feature >= 0)
            y[r] = x.at(r, static_cast<std::size_t>(signal_feature)) + 0.01 * rng.uniform(-1, 1);
        else
            y[r] = rng.uniform(-1, 1);
    }
}

} // namespace

TEST_CASE("a single unbootstrapped tree interpolates distinct rows") {
    Matrix x;
    std::vector<double> y;
    make_regression(60, 3, 1, x, y, 0);
    ForestOptions options;
    options.n_trees = 1;
    options.bootstrap = false;
    const ForestModel model = fit_forest(x, y, 7, options);
    const FitMetrics m = forest_fit_metrics(model, x, y);
    CHECK(m.r2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m.rmse == doctest::Approx(0.0).epsilon(1e-12));
    for (std::size_t r = 0; r < x.rows; ++r)
        CHECK(predict_forest(model, x.row(r)) == doctest::Approx(y[r]).epsilon(1e-12));
}

TEST_CASE("trees match the exhaustive-split oracle on small instances") {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        Matrix x;
        std::vector<double> y;
        const std::size_t n = 5 + seed % 16;  // n <= 20
        const std::size_t d = 1 + seed % 4;
        make_regression(n, d, seed, x, y, static_cast<int>(seed % d));
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), 0);

        TreeOptions options;
        const RegressionTree tree = fit_tree(x, y, idx, options, {});
        const oracle::BruteTree ref = oracle::brute_force_tree(x, y, idx);

        // training rows and fresh probe rows
        for (std::size_t r = 0; r < n; ++r)
            CHECK(tree.predict(x.row(r)) == doctest::Approx(ref.predict(x.row(r))).epsilon(1e-8));
        Rng rng(seed ^ 0xbeef);
        std::vector<double> probe(d);
        for (int t = 0; t < 50; ++t) {
            for (double& v : probe)
                v = rng.uniform(-1.2, 1.2);
            CHECK(tree.predict(probe) == doctest::Approx(ref.predict(probe)).epsilon(1e-8));
        }
    }
}

TEST_CASE("importance concentrates on the only informative feature") {
    Matrix x;
    std::vector<double> y;
    make_regression(200, 5, 3, x, y, 3);
    const ForestModel model = fit_forest(x, y, 11);
    CHECK(model.importances[3] > 0.8);
    const double sum =
        std::accumulate(model.importances.begin(), model.importances.end(), 0.0);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("duplicating every row barely moves the importances") {
    Matrix x;
    std::vector<double> y;
    make_regression(120, 4, 9, x, y, 1);
    Matrix x2(240, 4);
    std::vector<double> y2(240);
    for (std::size_t r = 0; r < 120; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            x2.at(r, c) = x.at(r, c);
            x2.at(r + 120, c) = x.at(r, c);
        }
        y2[r] = y[r];
        y2[r + 120] = y[r];
    }
    const ForestModel a = fit_forest(x, y, 5);
    const ForestModel b = fit_forest(x2, y2, 5);
    for (std::size_t j = 0; j < 4; ++j)
        CHECK(std::abs(a.importances[j] - b.importances[j]) < 0.02);
}

TEST_CASE("a single feature takes all the importance") {
    Matrix x;
    std::vector<double> y;
    make_regression(50, 1, 13, x, y, 0);
    const ForestModel model = fit_forest(x, y, 2);
    REQUIRE(model.importances.size() == 1);
    CHECK(model.importances[0] == doctest::Approx(1.0));
}

TEST_CASE("constant targets are rejected") {
    Matrix x;
    std::vector<double> y;
    make_regression(20, 2, 17, x, y);
    std::fill(y.begin(), y.end(), 5.0);
    CHECK_THROWS_AS(fit_forest(x, y, 1), DataError);
}

TEST_CASE("metrics flag an undefined R2 on constant targets") {
    // Hand-built single-leaf forest, evaluated on a constant target.
    ForestModel model;
    model.trees.resize(1);
    TreeNode leaf;
    leaf.value = 5.0;
    leaf.n_samples = 2;
    model.trees[0].nodes = {leaf};
    model.importances = {1.0};
    Matrix x(2, 1);
    x.at(0, 0) = 0.0;
    x.at(1, 0) = 1.0;
    const std::vector<double> y = {5.0, 5.0};
    const FitMetrics m = forest_fit_metrics(model, x, y);
    CHECK_FALSE(m.r2_defined);
    CHECK(m.rmse == 0.0);
}

TEST_CASE("permuting feature columns permutes importances identically") {
    Matrix x;
    std::vector<double> y;
    make_regression(90, 4, 21, x, y, 2);
    // permutation: new column j holds old column perm[j]
    const std::size_t perm[4] = {2, 0, 3, 1};
    Matrix xp(x.rows, x.cols);
    for (std::size_t r = 0; r < x.rows; ++r)
        for (std::size_t j = 0; j < 4; ++j)
            xp.at(r, j) = x.at(r, perm[j]);
    const ForestModel a = fit_forest(x, y, 33);
    const ForestModel b = fit_forest(xp, y, 33);
    for (std::size_t j = 0; j < 4; ++j)
        CHECK(b.importances[j] == doctest::Approx(a.importances[perm[j]]).epsilon(1e-12));
}

TEST_CASE("forest fitting is identical on serial and parallel workers") {
    Matrix x;
    std::vector<double> y;
    make_regression(100, 6, 29, x, y, 4);
    ForestOptions serial, parallel;
    serial.workers = 1;
    parallel.workers = 4;
    const ForestModel a = fit_forest(x, y, 55, serial);
    const ForestModel b = fit_forest(x, y, 55, parallel);
    CHECK(a.importances == b.importances);  // bitwise
}

TEST_CASE("bootstrap draws differ per tree but are seed-stable") {
    Matrix x;
    std::vector<double> y;
    make_regression(80, 3, 31, x, y, 0);
    const ForestModel a = fit_forest(x, y, 4242);
    const ForestModel b = fit_forest(x, y, 4242);
    const ForestModel c = fit_forest(x, y, 4243);
    CHECK(a.importances == b.importances);
    CHECK(a.importances != c.importances);
}
