#pragma once

#include <cstddef>
#include <vector>

#include "gpbench/linalg.hpp"

namespace gpbench {

// Min-max scaling of each feature to [0,1], column centering, then the top
// two right singular directions of the centered matrix. Constant features
// are dropped (with a record) before scaling. Sign convention: each
// component's largest-magnitude loading is positive.
struct PcaModel {
    std::vector<std::size_t> kept;     // surviving feature indices
    std::vector<double> feat_min, feat_max;  // per kept feature
    std::vector<double> means;               // per kept feature, after scaling
    Matrix components;                       // 2 x kept.size(), orthonormal rows
    std::vector<double> explained_share;     // 2 entries, shares of total variance
    std::vector<std::size_t> dropped;        // constant feature indices
};

PcaModel fit_pca2(const Matrix& rows);  // throws DataError if < 3 rows or < 2 usable features

// n x 2 component scores for new rows (same scaling and centering).
Matrix pca_project(const PcaModel& model, const Matrix& rows);

} // namespace gpbench
