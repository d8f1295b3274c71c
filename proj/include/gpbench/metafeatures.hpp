#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "gpbench/dataset.hpp"

namespace gpbench {

inline constexpr std::size_t kMetaFeatureCount = 11;

// Fixed column order; these names are the CSV contract and the join key for
// the analysis stage.
extern const std::array<const char*, kMetaFeatureCount> kMetaFeatureColumns;
// Human-readable labels used in report tables, same order.
extern const std::array<const char*, kMetaFeatureCount> kMetaFeatureLabels;

struct MetaFeatureVector {
    double n_features = 0;
    double n_instances_train = 0, n_instances_test = 0;
    double target_skewness_train = 0, target_skewness_test = 0;
    double target_std_train = 0, target_std_test = 0;
    double mean_abs_corr_train = 0, mean_abs_corr_test = 0;
    double linearity_r2_train = 0, linearity_r2_test = 0;
    std::vector<std::string> warnings;

    std::array<double, kMetaFeatureCount> values() const;
    static MetaFeatureVector from_values(const std::array<double, kMetaFeatureCount>& v);
};

// The 11 meta-features of a (train, test) pair. Sub-operation failures are
// rethrown with the offending field name prepended.
MetaFeatureVector extract(const Dataset& train, const Dataset& test);

// Field-wise median; reduces per-fold vectors of a CV plan to one row.
MetaFeatureVector median_metafeatures(std::span<const MetaFeatureVector> rows);

struct MetaFeatureRecord {
    std::string dataset;
    Provenance provenance = Provenance::Synthetic;
    MetaFeatureVector mf;
};

void write_metafeatures_csv(const std::string& path, std::span<const MetaFeatureRecord> rows);
std::vector<MetaFeatureRecord> read_metafeatures_csv(const std::string& path);

} // namespace gpbench
