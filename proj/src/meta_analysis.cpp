#include "gpbench/meta_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <numeric>
#include <set>

#include <json.hpp>

#include "gpbench/errors.hpp"
#include "gpbench/textio.hpp"

namespace gpbench {

void write_summary_csv(const std::string& path, std::span<const GpSummaryRecord> rows) {
    std::string out = "dataset,provenance,runs,median_train_nrmse,median_test_nrmse\n";
    for (const GpSummaryRecord& rec : rows) {
        out += rec.dataset;
        out += ',';
        out += provenance_name(rec.provenance);
        out += ',';
        out += std::to_string(rec.runs);
        out += ',';
        out += format_double(rec.median_train_nrmse);
        out += ',';
        out += format_double(rec.median_test_nrmse);
        out += '\n';
    }
    write_text_file(path, out);
}

std::vector<GpSummaryRecord> read_summary_csv(const std::string& path) {
    const std::string text = read_text_file(path);
    std::vector<GpSummaryRecord> out;
    bool first = true;
    for (const std::string& raw : split(text, '\n')) {
        const std::string line = trim(raw);
        if (line.empty())
            continue;
        if (first) {
            first = false;
            continue;
        }
        const auto cells = split(line, ',');
        if (cells.size() != 5)
            throw DataError(path + ": malformed row '" + line + "'");
        GpSummaryRecord rec;
        rec.dataset = cells[0];
        rec.provenance = parse_provenance(cells[1]);
        double runs = 0;
        if (!parse_double(cells[2], runs) || !parse_double(cells[3], rec.median_train_nrmse) ||
            !parse_double(cells[4], rec.median_test_nrmse))
            throw DataError(path + ": bad numeric cell in '" + line + "'");
        rec.runs = static_cast<int>(runs);
        out.push_back(std::move(rec));
    }
    return out;
}

MetaDataset assemble(std::span<const MetaFeatureRecord> metafeatures,
                     std::span<const GpSummaryRecord> summaries,
                     std::span<const std::string> order) {
    std::map<std::string, const MetaFeatureRecord*> mf_by_name;
    for (const MetaFeatureRecord& rec : metafeatures) {
        if (!mf_by_name.emplace(rec.dataset, &rec).second)
            throw DataError("duplicate meta-feature row for dataset '" + rec.dataset + "'");
    }
    std::map<std::string, const GpSummaryRecord*> summary_by_name;
    for (const GpSummaryRecord& rec : summaries) {
        if (!summary_by_name.emplace(rec.dataset, &rec).second)
            throw DataError("duplicate GP summary for dataset '" + rec.dataset + "'");
    }

    std::set<std::string> seen;
    MetaDataset md;
    md.features = Matrix(order.size(), kMetaFeatureCount);
    std::size_t row = 0;
    for (const std::string& name : order) {
        if (!seen.insert(name).second)
            throw DataError("dataset '" + name + "' appears twice in the row order");
        const auto mf = mf_by_name.find(name);
        if (mf == mf_by_name.end())
            throw DataError("no meta-feature row for dataset '" + name + "'");
        const auto summary = summary_by_name.find(name);
        if (summary == summary_by_name.end())
            throw DataError("no GP summary for dataset '" + name + "'");
        md.names.push_back(name);
        md.provenance.push_back(mf->second->provenance);
        const auto values = mf->second->mf.values();
        for (std::size_t f = 0; f < kMetaFeatureCount; ++f)
            md.features.at(row, f) = values[f];
        md.nrmse.push_back(summary->second->median_test_nrmse);
        md.median_train.push_back(summary->second->median_train_nrmse);
        ++row;
    }
    return md;
}

LinearMeta fit_linear_meta(const MetaDataset& md) {
    if (md.rows() <= kMetaFeatureCount)
        throw DataError("linear meta-model needs more rows than features");
    LinearMeta out;
    out.fit = fit_ols(md.features, md.nrmse);
    out.r2 = r_squared(out.fit, md.features, md.nrmse);
    double ss_res = 0.0;
    for (std::size_t r = 0; r < md.rows(); ++r) {
        const double e = md.nrmse[r] - out.fit.predict(md.features.row(r));
        ss_res += e * e;
    }
    out.rmse = std::sqrt(ss_res / static_cast<double>(md.rows()));
    return out;
}

PlaneFit fit_plane(const Matrix& scores, std::span<const double> nrmse_values) {
    GPB_ENSURE(scores.cols == 2, "plane fit expects 2 score columns");
    if (scores.rows < 4)
        throw DataError("plane fit needs at least 4 rows");
    const OlsFit fit = fit_ols(scores, nrmse_values);
    PlaneFit out;
    out.c1 = fit.coef[0];
    out.c2 = fit.coef[1];
    out.intercept = fit.intercept;
    out.r2 = r_squared(fit, scores, nrmse_values);
    double ss_res = 0.0;
    for (std::size_t r = 0; r < scores.rows; ++r) {
        const double e = nrmse_values[r] - fit.predict(scores.row(r));
        ss_res += e * e;
    }
    out.rmse = std::sqrt(ss_res / static_cast<double>(scores.rows));
    return out;
}

HistogramTable histogram(std::string panel, std::span<const double> values, int bins) {
    GPB_ENSURE(bins >= 1, "histogram needs at least one bin");
    GPB_ENSURE(!values.empty(), "histogram over no values");
    double lo = values[0], hi = values[0];
    for (double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    HistogramTable table;
    table.panel = std::move(panel);
    table.counts.assign(static_cast<std::size_t>(bins), 0);
    table.edges.resize(static_cast<std::size_t>(bins) + 1);
    if (hi == lo) {
        // Degenerate range: everything lands in the first bin.
        for (int b = 0; b <= bins; ++b)
            table.edges[static_cast<std::size_t>(b)] = lo + static_cast<double>(b);
        table.counts[0] = values.size();
        return table;
    }
    const double width = (hi - lo) / bins;
    for (int b = 0; b <= bins; ++b)
        table.edges[static_cast<std::size_t>(b)] = lo + width * b;
    table.edges.back() = hi;
    for (double v : values) {
        auto b = static_cast<long long>((v - lo) / width);
        if (b >= bins)
            b = bins - 1;  // last bin right-inclusive
        if (b < 0)
            b = 0;
        ++table.counts[static_cast<std::size_t>(b)];
    }
    return table;
}

AnalysisResult analyze(const MetaDataset& md, std::uint64_t seed, int forest_trees,
                       int workers) {
    AnalysisResult out;
    ForestOptions fo;
    fo.n_trees = forest_trees;
    fo.workers = workers;
    out.forest_seed = seed;
    out.forest = fit_forest(md.features, md.nrmse, seed, fo);
    out.forest_metrics = forest_fit_metrics(out.forest, md.features, md.nrmse);
    out.linear = fit_linear_meta(md);
    out.pca = fit_pca2(md.features);
    out.scores = pca_project(out.pca, md.features);
    out.plane = fit_plane(out.scores, md.nrmse);
    return out;
}

void emit_report(const MetaDataset& md, const AnalysisResult& analysis,
                 const std::string& out_dir, const ReportConfig& report,
                 const std::string& config_hash, std::uint64_t seed) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec)
        throw DataError("cannot create report directory " + out_dir + ": " + ec.message());

    // Histograms: the 11 meta-features plus the median test NRMSE.
    {
        std::string csv = "# bins=" + std::to_string(report.histogram_bins) +
                          " rows=" + std::to_string(md.rows()) + "\n";
        csv += "panel,bin,lo,hi,count\n";
        auto add_panel = [&](const std::string& panel, std::span<const double> values) {
            const HistogramTable t = histogram(panel, values, report.histogram_bins);
            for (std::size_t b = 0; b < t.counts.size(); ++b) {
                csv += t.panel;
                csv += ',';
                csv += std::to_string(b);
                csv += ',';
                csv += format_double(t.edges[b]);
                csv += ',';
                csv += format_double(t.edges[b + 1]);
                csv += ',';
                csv += std::to_string(t.counts[b]);
                csv += '\n';
            }
        };
        for (std::size_t f = 0; f < kMetaFeatureCount; ++f)
            add_panel(kMetaFeatureColumns[f], md.features.column(f));
        add_panel("median_test_nrmse", md.nrmse);
        write_text_file(out_dir + "/histograms.csv", csv);
    }

    // Scatter data: the two top-ranked meta-features against the NRMSE.
    {
        std::string csv = "dataset,provenance,target_skewness_train,n_instances_train,"
                          "median_test_nrmse\n";
        const std::size_t skew_col = 3, inst_col = 1;
        for (std::size_t r = 0; r < md.rows(); ++r) {
            csv += md.names[r];
            csv += ',';
            csv += provenance_name(md.provenance[r]);
            csv += ',';
            csv += format_double(md.features.at(r, skew_col));
            csv += ',';
            csv += format_double(md.features.at(r, inst_col));
            csv += ',';
            csv += format_double(md.nrmse[r]);
            csv += '\n';
        }
        write_text_file(out_dir + "/scatter.csv", csv);
    }

    // PCA scores with the fitted plane in the header comment.
    {
        std::string csv = "# plane: nrmse = " + format_double(analysis.plane.intercept) + " + " +
                          format_double(analysis.plane.c1) + "*pc1 + " +
                          format_double(analysis.plane.c2) + "*pc2\n";
        csv += "dataset,provenance,pc1,pc2,median_test_nrmse\n";
        for (std::size_t r = 0; r < md.rows(); ++r) {
            csv += md.names[r];
            csv += ',';
            csv += provenance_name(md.provenance[r]);
            csv += ',';
            csv += format_double(analysis.scores.at(r, 0));
            csv += ',';
            csv += format_double(analysis.scores.at(r, 1));
            csv += ',';
            csv += format_double(md.nrmse[r]);
            csv += '\n';
        }
        write_text_file(out_dir + "/pca_scores.csv", csv);
    }

    // Importance table, descending.
    {
        std::vector<std::size_t> order(kMetaFeatureCount);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return analysis.forest.importances[a] > analysis.forest.importances[b];
        });
        std::string csv = "meta_feature,label,importance\n";
        for (std::size_t j : order) {
            csv += kMetaFeatureColumns[j];
            csv += ',';
            csv += "\"";
            csv += kMetaFeatureLabels[j];
            csv += "\"";
            csv += ',';
            csv += format_double(analysis.forest.importances[j]);
            csv += '\n';
        }
        write_text_file(out_dir + "/importance.csv", csv);
    }

    // Metrics manifest.
    {
        nlohmann::ordered_json j;
        j["config_hash"] = config_hash;
        j["seed"] = seed;
        j["rows"] = md.rows();
        j["forest"] = {
            {"trees", analysis.forest.trees.size()},
            {"seed", analysis.forest_seed},
            {"r2", analysis.forest_metrics.r2},
            {"rmse", analysis.forest_metrics.rmse},
        };
        nlohmann::ordered_json importances;
        for (std::size_t f = 0; f < kMetaFeatureCount; ++f)
            importances[kMetaFeatureColumns[f]] = analysis.forest.importances[f];
        j["forest"]["importances"] = importances;
        nlohmann::ordered_json coefficients;
        for (std::size_t f = 0; f < kMetaFeatureCount; ++f)
            coefficients[kMetaFeatureColumns[f]] = analysis.linear.fit.coef[f];
        j["linear"] = {
            {"r2", analysis.linear.r2},
            {"rmse", analysis.linear.rmse},
            {"intercept", analysis.linear.fit.intercept},
            {"coefficients", coefficients},
        };
        j["pca"] = {
            {"explained_share", analysis.pca.explained_share},
            {"dropped_features", analysis.pca.dropped},
        };
        j["plane"] = {
            {"r2", analysis.plane.r2},
            {"rmse", analysis.plane.rmse},
            {"intercept", analysis.plane.intercept},
            {"c1", analysis.plane.c1},
            {"c2", analysis.plane.c2},
        };
        write_text_file(out_dir + "/metrics.json", j.dump(2) + "\n");
    }
}

} // namespace gpbench
