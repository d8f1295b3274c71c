#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gpbench/forest.hpp"
#include "gpbench/metafeatures.hpp"
#include "gpbench/pca.hpp"
#include "gpbench/stats.hpp"

namespace gpbench {

struct GpSummaryRecord {
    std::string dataset;
    Provenance provenance = Provenance::Synthetic;
    int runs = 0;
    double median_train_nrmse = 0.0;
    double median_test_nrmse = 0.0;
};

void write_summary_csv(const std::string& path, std::span<const GpSummaryRecord> rows);
std::vector<GpSummaryRecord> read_summary_csv(const std::string& path);

// One row per dataset: the 11 meta-features plus the median test NRMSE.
struct MetaDataset {
    std::vector<std::string> names;
    std::vector<Provenance> provenance;
    Matrix features;             // rows x kMetaFeatureCount, column order = kMetaFeatureColumns
    std::vector<double> nrmse;   // median test NRMSE per row
    std::vector<double> median_train;  // kept for reports only

    std::size_t rows() const { return names.size(); }
};

// Inner join by dataset name; `order` fixes the row order (catalog order).
// Throws DataError on unmatched or duplicate names.
MetaDataset assemble(std::span<const MetaFeatureRecord> metafeatures,
                     std::span<const GpSummaryRecord> summaries,
                     std::span<const std::string> order);

struct LinearMeta {
    OlsFit fit;
    double r2 = 0.0, rmse = 0.0;
};

// OLS of the median NRMSE on all 11 meta-features, in-sample metrics.
LinearMeta fit_linear_meta(const MetaDataset& md);

struct PlaneFit {
    double c1 = 0.0, c2 = 0.0, intercept = 0.0;
    double r2 = 0.0, rmse = 0.0;
};

// OLS of NRMSE on the two component scores plus an intercept.
PlaneFit fit_plane(const Matrix& scores, std::span<const double> nrmse_values);

struct HistogramTable {
    std::string panel;
    std::vector<double> edges;        // bins+1 entries; last bin right-inclusive
    std::vector<std::size_t> counts;  // bins entries
};

HistogramTable histogram(std::string panel, std::span<const double> values, int bins);

struct AnalysisResult {
    ForestModel forest;
    FitMetrics forest_metrics;
    LinearMeta linear;
    PcaModel pca;
    Matrix scores;  // rows x 2
    PlaneFit plane;
    std::uint64_t forest_seed = 0;
};

AnalysisResult analyze(const MetaDataset& md, std::uint64_t seed, int forest_trees = 120,
                       int workers = 1);

struct ReportConfig {
    int histogram_bins = 10;
};

// Writes histograms.csv (12 panels: 11 meta-features + test NRMSE),
// scatter.csv, pca_scores.csv, importance.csv (sorted descending), and
// metrics.json into out_dir.
void emit_report(const MetaDataset& md, const AnalysisResult& analysis,
                 const std::string& out_dir, const ReportConfig& report,
                 const std::string& config_hash, std::uint64_t seed);

} // namespace gpbench
