#include "gpbench/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gpbench/errors.hpp"

namespace gpbench {

double mean(std::span<const double> v) {
    GPB_ENSURE(!v.empty(), "mean of empty vector");
    double s = 0.0;
    for (double x : v)
        s += x;
    return s / static_cast<double>(v.size());
}

double median(std::vector<double> v) {
    GPB_ENSURE(!v.empty(), "median of empty vector");
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n % 2 == 1)
        return v[n / 2];
    return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double skewness(std::span<const double> v) {
    const std::size_t n = v.size();
    if (n < 3)
        throw DataError("skewness needs at least 3 values, got " + std::to_string(n));
    const double m = mean(v);
    double s2 = 0.0, s3 = 0.0;
    for (double x : v) {
        const double d = x - m;
        s2 += d * d;
        s3 += d * d * d;
    }
    if (s2 == 0.0)
        throw DataError("skewness undefined for a zero-variance sample");
    const double nn = static_cast<double>(n);
    return nn * std::sqrt(nn - 1.0) / (nn - 2.0) * s3 / std::pow(s2, 1.5);
}

double sample_std(std::span<const double> v) {
    const std::size_t n = v.size();
    if (n < 2)
        throw DataError("standard deviation needs at least 2 values");
    const double m = mean(v);
    double s2 = 0.0;
    for (double x : v) {
        const double d = x - m;
        s2 += d * d;
    }
    return std::sqrt(s2 / (static_cast<double>(n) - 1.0));
}

namespace {

// Average ranks (1-based); tied runs share the mean of their positions.
std::vector<double> average_ranks(std::span<const double> v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && v[order[j + 1]] == v[order[i]])
            ++j;
        const double shared = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
        for (std::size_t k = i; k <= j; ++k)
            ranks[order[k]] = shared;
        i = j + 1;
    }
    return ranks;
}

double pearson(std::span<const double> a, std::span<const double> b, bool& degenerate) {
    const double ma = mean(a);
    const double mb = mean(b);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - ma;
        const double db = b[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (saa == 0.0 || sbb == 0.0) {
        degenerate = true;
        return 0.0;
    }
    degenerate = false;
    return sab / std::sqrt(saa * sbb);
}

} // namespace

SpearmanResult spearman(std::span<const double> u, std::span<const double> v) {
    GPB_ENSURE(u.size() == v.size(), "spearman length mismatch");
    if (u.size() < 2)
        throw DataError("spearman needs at least 2 pairs");
    const std::vector<double> ru = average_ranks(u);
    const std::vector<double> rv = average_ranks(v);
    SpearmanResult out;
    out.rho = pearson(ru, rv, out.constant_input);
    return out;
}

MeanAbsCorr mean_abs_corr(const Dataset& ds) {
    GPB_ENSURE(ds.d() >= 1, "mean_abs_corr on empty dataset");
    MeanAbsCorr out;
    double sum = 0.0;
    for (std::size_t j = 0; j < ds.d(); ++j) {
        const std::vector<double> col = ds.x.column(j);
        const SpearmanResult r = spearman(col, ds.y);
        if (r.constant_input)
            ++out.constant_columns;
        sum += std::abs(r.rho);
    }
    out.value = sum / static_cast<double>(ds.d());
    return out;
}

double OlsFit::predict(std::span<const double> row) const {
    GPB_ENSURE(row.size() == coef.size(), "predict row width mismatch");
    double v = intercept;
    for (std::size_t j = 0; j < coef.size(); ++j)
        v += coef[j] * row[j];
    return v;
}

OlsFit fit_ols(const Matrix& x, std::span<const double> y) {
    GPB_ENSURE(x.rows == y.size(), "fit_ols row/target mismatch");
    GPB_ENSURE(x.rows >= 1 && x.cols >= 1, "fit_ols on empty data");

    // Center columns and the target so the intercept falls out of the means,
    // then equilibrate each centered column to unit norm: feature scales can
    // span many orders of magnitude and would otherwise drive the rank
    // threshold. Rank deficiency yields the minimum-norm solution in the
    // equilibrated coordinates.
    std::vector<double> col_means(x.cols, 0.0);
    for (std::size_t j = 0; j < x.cols; ++j) {
        double s = 0.0;
        for (std::size_t r = 0; r < x.rows; ++r)
            s += x.at(r, j);
        col_means[j] = s / static_cast<double>(x.rows);
    }
    const double y_mean = mean(y);

    Matrix centered(x.rows, x.cols);
    std::vector<double> col_norms(x.cols, 0.0);
    for (std::size_t j = 0; j < x.cols; ++j) {
        double sq = 0.0;
        for (std::size_t r = 0; r < x.rows; ++r) {
            const double v = x.at(r, j) - col_means[j];
            centered.at(r, j) = v;
            sq += v * v;
        }
        col_norms[j] = std::sqrt(sq);
        if (col_norms[j] > 0.0)
            for (std::size_t r = 0; r < x.rows; ++r)
                centered.at(r, j) /= col_norms[j];
    }
    std::vector<double> yc(x.rows);
    for (std::size_t r = 0; r < x.rows; ++r)
        yc[r] = y[r] - y_mean;

    OlsFit fit;
    fit.coef = svd_least_squares(centered, yc);
    for (std::size_t j = 0; j < x.cols; ++j)
        fit.coef[j] = col_norms[j] > 0.0 ? fit.coef[j] / col_norms[j] : 0.0;
    fit.intercept = y_mean;
    for (std::size_t j = 0; j < x.cols; ++j)
        fit.intercept -= fit.coef[j] * col_means[j];
    fit.degenerate = x.rows <= x.cols;
    return fit;
}

double r_squared(const OlsFit& fit, const Matrix& x, std::span<const double> y) {
    GPB_ENSURE(x.rows == y.size(), "r_squared row/target mismatch");
    const double y_mean = mean(y);
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t r = 0; r < x.rows; ++r) {
        const double e = y[r] - fit.predict(x.row(r));
        ss_res += e * e;
        const double d = y[r] - y_mean;
        ss_tot += d * d;
    }
    if (ss_tot == 0.0)
        throw DataError("R^2 undefined: target has zero variance");
    return 1.0 - ss_res / ss_tot;
}

LinearityR2 linearity_r2(const Dataset& ds) {
    const OlsFit fit = fit_ols(ds.x, ds.y);
    return {r_squared(fit, ds.x, ds.y), fit.degenerate};
}

} // namespace gpbench
