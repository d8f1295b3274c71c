#include "gpbench/pca.hpp"

#include <cmath>

#include "gpbench/errors.hpp"

namespace gpbench {

PcaModel fit_pca2(const Matrix& rows) {
    if (rows.rows < 3)
        throw DataError("PCA needs at least 3 rows");

    PcaModel model;
    for (std::size_t j = 0; j < rows.cols; ++j) {
        double lo = rows.at(0, j), hi = rows.at(0, j);
        for (std::size_t r = 1; r < rows.rows; ++r) {
            lo = std::min(lo, rows.at(r, j));
            hi = std::max(hi, rows.at(r, j));
        }
        if (hi > lo) {
            model.kept.push_back(j);
            model.feat_min.push_back(lo);
            model.feat_max.push_back(hi);
        } else {
            model.dropped.push_back(j);
        }
    }
    if (model.kept.size() < 2)
        throw DataError("PCA needs at least 2 non-constant features");

    const std::size_t n = rows.rows;
    const std::size_t k = model.kept.size();
    Matrix scaled(n, k);
    for (std::size_t jj = 0; jj < k; ++jj) {
        const std::size_t j = model.kept[jj];
        const double span = model.feat_max[jj] - model.feat_min[jj];
        for (std::size_t r = 0; r < n; ++r)
            scaled.at(r, jj) = (rows.at(r, j) - model.feat_min[jj]) / span;
    }

    model.means.resize(k);
    for (std::size_t jj = 0; jj < k; ++jj) {
        double s = 0.0;
        for (std::size_t r = 0; r < n; ++r)
            s += scaled.at(r, jj);
        model.means[jj] = s / static_cast<double>(n);
        for (std::size_t r = 0; r < n; ++r)
            scaled.at(r, jj) -= model.means[jj];
    }

    const JacobiSvd svd = jacobi_svd(scaled);

    model.components = Matrix(2, k);
    for (std::size_t c = 0; c < 2; ++c) {
        // Sign convention: the largest-magnitude loading is positive.
        std::size_t arg = 0;
        for (std::size_t jj = 1; jj < k; ++jj)
            if (std::abs(svd.v.at(jj, c)) > std::abs(svd.v.at(arg, c)))
                arg = jj;
        const double sign = svd.v.at(arg, c) < 0.0 ? -1.0 : 1.0;
        for (std::size_t jj = 0; jj < k; ++jj)
            model.components.at(c, jj) = sign * svd.v.at(jj, c);
    }

    double total = 0.0;
    for (double s : svd.sigma)
        total += s * s;
    model.explained_share.resize(2);
    for (std::size_t c = 0; c < 2; ++c)
        model.explained_share[c] = total > 0.0 ? svd.sigma[c] * svd.sigma[c] / total : 0.0;
    return model;
}

Matrix pca_project(const PcaModel& model, const Matrix& rows) {
    const std::size_t k = model.kept.size();
    Matrix scores(rows.rows, 2);
    for (std::size_t r = 0; r < rows.rows; ++r) {
        for (std::size_t c = 0; c < 2; ++c) {
            double s = 0.0;
            for (std::size_t jj = 0; jj < k; ++jj) {
                const std::size_t j = model.kept[jj];
                const double span = model.feat_max[jj] - model.feat_min[jj];
                const double v = (rows.at(r, j) - model.feat_min[jj]) / span - model.means[jj];
                s += v * model.components.at(c, jj);
            }
            scores.at(r, c) = s;
        }
    }
    return scores;
}

} // namespace gpbench
