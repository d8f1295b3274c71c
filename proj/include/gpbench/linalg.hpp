#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gpbench {

// Dense row-major matrix; rows are observations.
struct Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    std::span<const double> row(std::size_t r) const { return {data.data() + r * cols, cols}; }
    std::span<double> row(std::size_t r) { return {data.data() + r * cols, cols}; }
    std::vector<double> column(std::size_t c) const;
};

// Thin SVD A = U S V^T via one-sided Jacobi rotations on the columns of A.
// Never forms A^T A, which keeps it a route independent of the
// covariance-eigendecomposition oracle used in tests.
struct JacobiSvd {
    Matrix scaled;              // n x d; column j is u_j * sigma_j
    Matrix v;                   // d x d; right singular vectors in columns
    std::vector<double> sigma;  // descending
};

JacobiSvd jacobi_svd(const Matrix& a);

// Minimum-norm least squares through the Jacobi SVD; singular values below
// rcond * sigma_max count as zero.
std::vector<double> svd_least_squares(const Matrix& x, std::span<const double> y,
                                      double rcond = 1e-12);

} // namespace gpbench
