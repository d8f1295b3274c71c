#include "gpbench/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gpbench/errors.hpp"
#include "gpbench/parallel.hpp"
#include "gpbench/rng.hpp"

namespace gpbench {

double RegressionTree::predict(std::span<const double> row) const {
    GPB_ENSURE(!nodes.empty(), "predict on empty tree");
    int at = 0;
    while (nodes[static_cast<std::size_t>(at)].feature >= 0) {
        const TreeNode& n = nodes[static_cast<std::size_t>(at)];
        at = row[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
    }
    return nodes[static_cast<std::size_t>(at)].value;
}

namespace {

struct NodeStats {
    double mean = 0.0;
    double sse = 0.0;
    std::size_t n = 0;
};

// Two passes: the scan below works on centered values, otherwise the
// sum-of-squares form cancels catastrophically when the mean dominates.
NodeStats stats_of(std::span<const double> y, std::span<const std::size_t> idx) {
    NodeStats s;
    s.n = idx.size();
    double sum = 0.0;
    for (std::size_t i : idx)
        sum += y[i];
    s.mean = sum / static_cast<double>(s.n);
    for (std::size_t i : idx) {
        const double d = y[i] - s.mean;
        s.sse += d * d;
    }
    return s;
}

struct BestSplit {
    int feature = -1;
    double threshold = 0.0;
    double improvement = 0.0;
};

// Exhaustive search over features and midpoints between consecutive distinct
// sorted values; prefix sums over centered targets give each candidate in
// O(1). A candidate must beat the incumbent by more than a relative
// tolerance; within that band the smaller threshold wins, then the lower
// feature index. The threshold rule is content-based, which keeps the fitted
// tree (and the importances) invariant under feature-column permutation.
BestSplit find_best_split(const Matrix& x, std::span<const double> y,
                          std::span<const std::size_t> idx, const NodeStats& node) {
    BestSplit best;
    const double tie_tol = 1e-12 * node.sse;
    std::vector<std::pair<double, double>> pairs(idx.size());
    for (std::size_t j = 0; j < x.cols; ++j) {
        for (std::size_t i = 0; i < idx.size(); ++i)
            pairs[i] = {x.at(idx[i], j), y[idx[i]] - node.mean};
        std::sort(pairs.begin(), pairs.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });

        double total_sum = 0.0, total_sumsq = 0.0;
        for (const auto& [xv, yc] : pairs) {
            total_sum += yc;
            total_sumsq += yc * yc;
        }
        const double node_sse = total_sumsq - total_sum * total_sum / static_cast<double>(pairs.size());

        double left_sum = 0.0, left_sumsq = 0.0;
        for (std::size_t i = 0; i + 1 < pairs.size(); ++i) {
            left_sum += pairs[i].second;
            left_sumsq += pairs[i].second * pairs[i].second;
            if (pairs[i].first == pairs[i + 1].first)
                continue;
            const double nl = static_cast<double>(i + 1);
            const double nr = static_cast<double>(pairs.size() - i - 1);
            const double right_sum = total_sum - left_sum;
            const double right_sumsq = total_sumsq - left_sumsq;
            const double sse_l = left_sumsq - left_sum * left_sum / nl;
            const double sse_r = right_sumsq - right_sum * right_sum / nr;
            const double improvement = node_sse - sse_l - sse_r;
            const double threshold = 0.5 * (pairs[i].first + pairs[i + 1].first);
            const bool wins =
                improvement > best.improvement + tie_tol ||
                (best.feature >= 0 && improvement > best.improvement - tie_tol &&
                 threshold < best.threshold);
            if (improvement > tie_tol && wins) {
                best.feature = static_cast<int>(j);
                best.threshold = threshold;
                best.improvement = improvement;
            }
        }
    }
    return best;
}

struct TreeBuilder {
    const Matrix& x;
    std::span<const double> y;
    const TreeOptions& options;
    std::span<double> importance;
    std::vector<TreeNode> nodes;

    int build(std::vector<std::size_t>& idx, int depth) {
        const NodeStats stats = stats_of(y, idx);
        const int slot = static_cast<int>(nodes.size());
        nodes.emplace_back();
        nodes.back().value = stats.mean;
        nodes.back().n_samples = stats.n;

        const bool can_split = stats.n >= options.min_samples_split &&
                               (options.max_depth < 0 || depth < options.max_depth) &&
                               stats.sse > 0.0;
        if (!can_split)
            return slot;
        const BestSplit split = find_best_split(x, y, idx, stats);
        if (split.feature < 0 || split.improvement <= 0.0)
            return slot;

        if (!importance.empty())
            importance[static_cast<std::size_t>(split.feature)] += split.improvement;

        std::vector<std::size_t> left, right;
        left.reserve(idx.size());
        right.reserve(idx.size());
        for (std::size_t i : idx)
            (x.at(i, static_cast<std::size_t>(split.feature)) <= split.threshold ? left : right)
                .push_back(i);
        GPB_ENSURE(!left.empty() && !right.empty(), "degenerate split");

        idx.clear();
        idx.shrink_to_fit();
        const int left_slot = build(left, depth + 1);
        const int right_slot = build(right, depth + 1);
        nodes[static_cast<std::size_t>(slot)].feature = split.feature;
        nodes[static_cast<std::size_t>(slot)].threshold = split.threshold;
        nodes[static_cast<std::size_t>(slot)].left = left_slot;
        nodes[static_cast<std::size_t>(slot)].right = right_slot;
        return slot;
    }
};

} // namespace

RegressionTree fit_tree(const Matrix& x, std::span<const double> y,
                        std::span<const std::size_t> sample_indices, const TreeOptions& options,
                        std::span<double> importance) {
    GPB_ENSURE(x.rows == y.size(), "fit_tree row/target mismatch");
    GPB_ENSURE(!sample_indices.empty(), "fit_tree with no samples");
    GPB_ENSURE(importance.empty() || importance.size() == x.cols,
               "importance span must have one slot per feature");
    TreeBuilder builder{x, y, options, importance, {}};
    std::vector<std::size_t> idx(sample_indices.begin(), sample_indices.end());
    builder.build(idx, 0);
    RegressionTree tree;
    tree.nodes = std::move(builder.nodes);
    return tree;
}

ForestModel fit_forest(const Matrix& x, std::span<const double> y, std::uint64_t seed,
                       const ForestOptions& options) {
    GPB_ENSURE(x.rows == y.size(), "fit_forest row/target mismatch");
    if (x.rows < 2)
        throw DataError("forest needs at least 2 rows");
    if (options.n_trees < 1)
        throw ConfigError("forest needs at least one tree");
    {
        const double first = y.front();
        if (std::all_of(y.begin(), y.end(), [&](double v) { return v == first; }))
            throw DataError("forest target is constant");
    }

    const std::size_t n = x.rows;
    const auto trees = static_cast<std::size_t>(options.n_trees);
    ForestModel model;
    model.seed = seed;
    model.trees.resize(trees);
    std::vector<std::vector<double>> tree_importance(trees, std::vector<double>(x.cols, 0.0));

    parallel_for(trees, options.workers, [&](std::size_t t) {
        Rng rng = Rng(seed).derive(t);
        std::vector<std::size_t> idx(n);
        if (options.bootstrap) {
            for (std::size_t i = 0; i < n; ++i)
                idx[i] = rng.uniform_int(n);
        } else {
            std::iota(idx.begin(), idx.end(), 0);
        }
        model.trees[t] = fit_tree(x, y, idx, options.tree, tree_importance[t]);
    });

    // Per-tree normalization, then the average across trees, normalized once
    // more so the result sums to exactly 1.
    model.importances.assign(x.cols, 0.0);
    for (std::size_t t = 0; t < trees; ++t) {
        const double total =
            std::accumulate(tree_importance[t].begin(), tree_importance[t].end(), 0.0);
        if (total <= 0.0)
            continue;
        for (std::size_t j = 0; j < x.cols; ++j)
            model.importances[j] += tree_importance[t][j] / total;
    }
    const double sum = std::accumulate(model.importances.begin(), model.importances.end(), 0.0);
    if (sum <= 0.0)
        throw DataError("forest produced no splits; importances undefined");
    for (double& v : model.importances)
        v /= sum;
    return model;
}

double predict_forest(const ForestModel& model, std::span<const double> row) {
    GPB_ENSURE(!model.trees.empty(), "predict on empty forest");
    double s = 0.0;
    for (const RegressionTree& tree : model.trees)
        s += tree.predict(row);
    return s / static_cast<double>(model.trees.size());
}

FitMetrics forest_fit_metrics(const ForestModel& model, const Matrix& x,
                              std::span<const double> y) {
    GPB_ENSURE(x.rows == y.size(), "metrics row/target mismatch");
    double y_mean = 0.0;
    for (double v : y)
        y_mean += v;
    y_mean /= static_cast<double>(y.size());

    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t r = 0; r < x.rows; ++r) {
        const double e = y[r] - predict_forest(model, x.row(r));
        ss_res += e * e;
        const double d = y[r] - y_mean;
        ss_tot += d * d;
    }
    FitMetrics m;
    m.rmse = std::sqrt(ss_res / static_cast<double>(x.rows));
    if (ss_tot == 0.0) {
        m.r2_defined = false;
        m.r2 = 0.0;
    } else {
        m.r2 = 1.0 - ss_res / ss_tot;
    }
    return m;
}

} // namespace gpbench
