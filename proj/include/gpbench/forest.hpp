#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gpbench/linalg.hpp"

namespace gpbench {

struct TreeNode {
    int feature = -1;  // -1: leaf
    double threshold = 0.0;
    int left = -1, right = -1;
    double value = 0.0;  // mean of node samples
    std::size_t n_samples = 0;
};

struct TreeOptions {
    std::size_t min_samples_split = 2;
    int max_depth = -1;  // -1: unlimited
};

struct RegressionTree {
    std::vector<TreeNode> nodes;
    double predict(std::span<const double> row) const;
};

// CART regression tree with the variance (MSE) criterion: exhaustive split
// search over all features and the midpoints between consecutive distinct
// values. A candidate must beat the incumbent by a relative tolerance; within
// that band the smaller threshold wins (a content-based rule, so the tree is
// invariant under feature-column permutation). The `importance` span (one
// slot per feature) accumulates the SSE decrease of every split on that
// feature.
RegressionTree fit_tree(const Matrix& x, std::span<const double> y,
                        std::span<const std::size_t> sample_indices, const TreeOptions& options,
                        std::span<double> importance);

struct ForestOptions {
    int n_trees = 120;
    bool bootstrap = true;  // n draws with replacement per tree
    TreeOptions tree;
    int workers = 1;
};

struct ForestModel {
    std::vector<RegressionTree> trees;
    std::vector<double> importances;  // normalized, sums to 1
    std::uint64_t seed = 0;
};

// Tree t trains on the bootstrap resample drawn from the stream derived from
// (seed, t); trees fit on parallel workers with identical results. Importance
// is the per-tree normalized SSE decrease averaged over trees. Throws
// DataError on a constant target.
ForestModel fit_forest(const Matrix& x, std::span<const double> y, std::uint64_t seed,
                       const ForestOptions& options = {});

double predict_forest(const ForestModel& model, std::span<const double> row);

struct FitMetrics {
    double r2 = 0.0;
    double rmse = 0.0;          // sqrt(SS_res / n)
    bool r2_defined = true;     // false when SS_tot == 0
};

// In-sample fit quality on the given data.
FitMetrics forest_fit_metrics(const ForestModel& model, const Matrix& x,
                              std::span<const double> y);

} // namespace gpbench
