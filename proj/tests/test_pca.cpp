#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gpbench/pca.hpp"
#include "gpbench/rng.hpp"
#include "support/oracles.hpp"

using namespace gpbench;

namespace {

// Scale to [0,1] and center, mirroring the model's preprocessing, so the
// oracle sees the same matrix the SVD saw.
Matrix scaled_centered(const Matrix& rows, const PcaModel& model) {
    Matrix out(rows.rows, model.kept.size());
    for (std::size_t jj = 0; jj < model.kept.size(); ++jj) {
        const std::size_t j = model.kept[jj];
        const double span = model.feat_max[jj] - model.feat_min[jj];
        for (std::size_t r = 0; r < rows.rows; ++r)
            out.at(r, jj) = (rows.at(r, j) - model.feat_min[jj]) / span - model.means[jj];
    }
    return out;
}

double dot_component(const PcaModel& model, std::size_t c, const Matrix& vectors,
                     std::size_t col) {
    double s = 0.0;
    for (std::size_t j = 0; j < model.kept.size(); ++j)
        s += model.components.at(c, j) * vectors.at(j, col);
    return s;
}

} // namespace

TEST_CASE("data on an exact plane is fully explained by two components") {
    Rng rng(1);
    Matrix rows(40, 4);
    for (std::size_t r = 0; r < 40; ++r) {
        const double a = rng.uniform(-1, 1);
        const double b = rng.uniform(-1, 1);
        rows.at(r, 0) = a;
        rows.at(r, 1) = b;
        rows.at(r, 2) = 2.0 * a - b;
        rows.at(r, 3) = -a + 0.5 * b;
    }
    const PcaModel model = fit_pca2(rows);
    CHECK(model.explained_share[0] + model.explained_share[1] ==
          doctest::Approx(1.0).epsilon(1e-10));

    // Projection and reconstruction: scores reproduce the centered data.
    const Matrix scores = pca_project(model, rows);
    const Matrix centered = scaled_centered(rows, model);
    for (std::size_t r = 0; r < rows.rows; ++r) {
        for (std::size_t j = 0; j < model.kept.size(); ++j) {
            const double rebuilt = scores.at(r, 0) * model.components.at(0, j) +
                                   scores.at(r, 1) * model.components.at(1, j);
            CHECK(rebuilt == doctest::Approx(centered.at(r, j)).epsilon(1e-8));
        }
    }
}

TEST_CASE("components are orthonormal") {
    Rng rng(3);
    Matrix rows(60, 5);
    for (double& v : rows.data)
        v = rng.uniform(0, 10);
    const PcaModel model = fit_pca2(rows);
    double n0 = 0, n1 = 0, dot = 0;
    for (std::size_t j = 0; j < model.kept.size(); ++j) {
        n0 += model.components.at(0, j) * model.components.at(0, j);
        n1 += model.components.at(1, j) * model.components.at(1, j);
        dot += model.components.at(0, j) * model.components.at(1, j);
    }
    CHECK(n0 == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(n1 == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(dot) < 1e-10);
}

TEST_CASE("a correlated cloud aligns the first component with the diagonal") {
    Rng rng(5);
    Matrix rows(2000, 2);
    for (std::size_t r = 0; r < 2000; ++r) {
        const double u = rng.uniform(-1, 1);
        const double v = rng.uniform(-1, 1);
        rows.at(r, 0) = u;
        rows.at(r, 1) = 0.9 * u + std::sqrt(1.0 - 0.81) * v;
    }
    const PcaModel model = fit_pca2(rows);
    const double inv = 1.0 / std::sqrt(2.0);
    const double dot = model.components.at(0, 0) * inv + model.components.at(0, 1) * inv;
    CHECK(std::abs(dot) > 0.99);
    CHECK(model.components.at(0, 0) > 0.0);  // sign convention
}

TEST_CASE("PCA agrees with the covariance-eigendecomposition oracle") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        Rng rng(seed);
        const std::size_t n = 30 + seed, d = 5;
        Matrix rows(n, d);
        for (std::size_t r = 0; r < n; ++r) {
            const double base = rng.uniform(-2, 2);
            for (std::size_t c = 0; c < d; ++c)
                rows.at(r, c) = base * rng.uniform(0.5, 1.5) + rng.uniform(-1, 1);
        }
        const PcaModel model = fit_pca2(rows);
        const Matrix centered = scaled_centered(rows, model);
        const oracle::EigenPairs eig = oracle::gram_eigen(centered);

        for (std::size_t c = 0; c < 2; ++c) {
            // same direction up to sign
            CHECK(std::abs(dot_component(model, c, eig.vectors, c)) ==
                  doctest::Approx(1.0).epsilon(1e-8));
        }
        // explained shares match the eigenvalue shares
        double total = 0.0;
        for (double v : eig.values)
            total += v;
        CHECK(model.explained_share[0] == doctest::Approx(eig.values[0] / total).epsilon(1e-8));
        CHECK(model.explained_share[1] == doctest::Approx(eig.values[1] / total).epsilon(1e-8));
    }
}

TEST_CASE("projection is invariant under row permutation") {
    Rng rng(7);
    Matrix rows(25, 3);
    for (double& v : rows.data)
        v = rng.uniform(-4, 4);
    Matrix reversed(25, 3);
    for (std::size_t r = 0; r < 25; ++r)
        for (std::size_t c = 0; c < 3; ++c)
            reversed.at(r, c) = rows.at(24 - r, c);

    const PcaModel a = fit_pca2(rows);
    const PcaModel b = fit_pca2(reversed);
    const Matrix sa = pca_project(a, rows);
    const Matrix sb = pca_project(b, rows);
    for (std::size_t r = 0; r < 25; ++r)
        for (std::size_t c = 0; c < 2; ++c)
            CHECK(sa.at(r, c) == doctest::Approx(sb.at(r, c)).epsilon(1e-9));
}

TEST_CASE("constant features are dropped with a record") {
    Rng rng(9);
    Matrix rows(20, 4);
    for (std::size_t r = 0; r < 20; ++r) {
        rows.at(r, 0) = rng.uniform(-1, 1);
        rows.at(r, 1) = 3.0;  // constant
        rows.at(r, 2) = rng.uniform(-1, 1);
        rows.at(r, 3) = rng.uniform(-1, 1);
    }
    const PcaModel model = fit_pca2(rows);
    REQUIRE(model.dropped.size() == 1);
    CHECK(model.dropped[0] == 1);
    CHECK(model.kept.size() == 3);
}

TEST_CASE("degenerate inputs are rejected") {
    Matrix tiny(2, 3);
    CHECK_THROWS_AS(fit_pca2(tiny), DataError);
    Matrix flat(10, 2);
    for (std::size_t r = 0; r < 10; ++r) {
        flat.at(r, 0) = 1.0;
        flat.at(r, 1) = 2.0;
    }
    CHECK_THROWS_AS(fit_pca2(flat), DataError);
}
