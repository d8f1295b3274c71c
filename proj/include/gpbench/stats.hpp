#pragma once

#include <span>
#include <vector>

#include "gpbench/dataset.hpp"
#include "gpbench/linalg.hpp"

namespace gpbench {

// Adjusted Fisher-Pearson sample skewness:
//   n*sqrt(n-1)/(n-2) * sum((x_i - mean)^3) / [sum((x_i - mean)^2)]^(3/2)
// Throws DataError for n < 3 or zero variance (undefined, never reported 0).
double skewness(std::span<const double> v);

// Sample standard deviation with the n-1 denominator. Throws for n < 2.
double sample_std(std::span<const double> v);

double mean(std::span<const double> v);

// Even-length input: mean of the two central order statistics.
double median(std::vector<double> v);

struct SpearmanResult {
    double rho = 0.0;
    bool constant_input = false;  // rho defined as 0 in that case
};

// Pearson correlation of average-tie ranks.
SpearmanResult spearman(std::span<const double> u, std::span<const double> v);

struct MeanAbsCorr {
    double value = 0.0;
    int constant_columns = 0;
};

// Mean over features of |spearman(column_j, y)|.
MeanAbsCorr mean_abs_corr(const Dataset& ds);

struct OlsFit {
    std::vector<double> coef;
    double intercept = 0.0;
    bool degenerate = false;  // n <= d; the fit is still returned
    double predict(std::span<const double> row) const;
};

// Least squares on centered columns through the Jacobi SVD (minimum-norm
// slopes for rank-deficient X), intercept recovered from the means.
OlsFit fit_ols(const Matrix& x, std::span<const double> y);

// 1 - SS_res/SS_tot, evaluated in sample. Throws DataError when SS_tot == 0.
double r_squared(const OlsFit& fit, const Matrix& x, std::span<const double> y);

struct LinearityR2 {
    double r2 = 0.0;
    bool degenerate = false;
};

// Coefficient of determination of the OLS fit of y on the dataset's own
// features (each split is characterized on its own fit).
LinearityR2 linearity_r2(const Dataset& ds);

} // namespace gpbench
