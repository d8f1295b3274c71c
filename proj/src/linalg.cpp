#include "gpbench/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gpbench/errors.hpp"

namespace gpbench {

std::vector<double> Matrix::column(std::size_t c) const {
    std::vector<double> out(rows);
    for (std::size_t r = 0; r < rows; ++r)
        out[r] = at(r, c);
    return out;
}

namespace {

double column_dot(const Matrix& m, std::size_t a, std::size_t b) {
    double s = 0.0;
    for (std::size_t r = 0; r < m.rows; ++r)
        s += m.at(r, a) * m.at(r, b);
    return s;
}

void rotate_columns(Matrix& m, std::size_t p, std::size_t q, double c, double s) {
    for (std::size_t r = 0; r < m.rows; ++r) {
        const double vp = m.at(r, p);
        const double vq = m.at(r, q);
        m.at(r, p) = c * vp - s * vq;
        m.at(r, q) = s * vp + c * vq;
    }
}

} // namespace

JacobiSvd jacobi_svd(const Matrix& a) {
    const std::size_t d = a.cols;
    JacobiSvd out;
    out.scaled = a;
    out.v = Matrix(d, d);
    for (std::size_t j = 0; j < d; ++j)
        out.v.at(j, j) = 1.0;

    const double tol = 1e-14;
    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < d; ++p) {
            for (std::size_t q = p + 1; q < d; ++q) {
                const double app = column_dot(out.scaled, p, p);
                const double aqq = column_dot(out.scaled, q, q);
                const double apq = column_dot(out.scaled, p, q);
                if (std::abs(apq) <= tol * std::sqrt(app * aqq) || apq == 0.0)
                    continue;
                rotated = true;
                const double zeta = (aqq - app) / (2.0 * apq);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                rotate_columns(out.scaled, p, q, c, s);
                rotate_columns(out.v, p, q, c, s);
            }
        }
        if (!rotated)
            break;
    }

    out.sigma.resize(d);
    for (std::size_t j = 0; j < d; ++j)
        out.sigma[j] = std::sqrt(column_dot(out.scaled, j, j));

    // Order by descending singular value.
    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return out.sigma[i] > out.sigma[j]; });

    JacobiSvd sorted;
    sorted.scaled = Matrix(a.rows, d);
    sorted.v = Matrix(d, d);
    sorted.sigma.resize(d);
    for (std::size_t jj = 0; jj < d; ++jj) {
        const std::size_t src = order[jj];
        sorted.sigma[jj] = out.sigma[src];
        for (std::size_t r = 0; r < a.rows; ++r)
            sorted.scaled.at(r, jj) = out.scaled.at(r, src);
        for (std::size_t r = 0; r < d; ++r)
            sorted.v.at(r, jj) = out.v.at(r, src);
    }
    return sorted;
}

std::vector<double> svd_least_squares(const Matrix& x, std::span<const double> y, double rcond) {
    GPB_ENSURE(x.rows == y.size(), "svd_least_squares: row/target length mismatch");
    const JacobiSvd svd = jacobi_svd(x);
    const std::size_t d = x.cols;
    const double smax = svd.sigma.empty() ? 0.0 : svd.sigma.front();
    std::vector<double> beta(d, 0.0);
    for (std::size_t j = 0; j < d; ++j) {
        const double sj = svd.sigma[j];
        if (sj <= rcond * smax || sj == 0.0)
            continue;
        // u_j = scaled_j / sigma_j, so (u_j . y)/sigma_j = (scaled_j . y)/sigma_j^2.
        double dot = 0.0;
        for (std::size_t r = 0; r < x.rows; ++r)
            dot += svd.scaled.at(r, j) * y[r];
        const double w = dot / (sj * sj);
        for (std::size_t k = 0; k < d; ++k)
            beta[k] += w * svd.v.at(k, j);
    }
    return beta;
}

} // namespace gpbench
