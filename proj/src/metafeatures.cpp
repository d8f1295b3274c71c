#include "gpbench/metafeatures.hpp"

#include <functional>

#include "gpbench/errors.hpp"
#include "gpbench/stats.hpp"
#include "gpbench/textio.hpp"

namespace gpbench {

const std::array<const char*, kMetaFeatureCount> kMetaFeatureColumns = {
    "n_features",
    "n_instances_train",
    "n_instances_test",
    "target_skewness_train",
    "target_skewness_test",
    "target_std_train",
    "target_std_test",
    "mean_abs_corr_train",
    "mean_abs_corr_test",
    "linearity_r2_train",
    "linearity_r2_test",
};

const std::array<const char*, kMetaFeatureCount> kMetaFeatureLabels = {
    "N. features",
    "N. instances (Training)",
    "N. instances (Test)",
    "Target skewness (Training)",
    "Target skewness (Test)",
    "Target std (Training)",
    "Target std (Test)",
    "Mean absolute correlation attribute-target (Training)",
    "Mean absolute correlation attribute-target (Test)",
    "Linearity measure (Training)",
    "Linearity measure (Test)",
};

std::array<double, kMetaFeatureCount> MetaFeatureVector::values() const {
    return {n_features,
            n_instances_train,
            n_instances_test,
            target_skewness_train,
            target_skewness_test,
            target_std_train,
            target_std_test,
            mean_abs_corr_train,
            mean_abs_corr_test,
            linearity_r2_train,
            linearity_r2_test};
}

MetaFeatureVector MetaFeatureVector::from_values(
    const std::array<double, kMetaFeatureCount>& v) {
    MetaFeatureVector mf;
    mf.n_features = v[0];
    mf.n_instances_train = v[1];
    mf.n_instances_test = v[2];
    mf.target_skewness_train = v[3];
    mf.target_skewness_test = v[4];
    mf.target_std_train = v[5];
    mf.target_std_test = v[6];
    mf.mean_abs_corr_train = v[7];
    mf.mean_abs_corr_test = v[8];
    mf.linearity_r2_train = v[9];
    mf.linearity_r2_test = v[10];
    return mf;
}

namespace {

double guarded(const char* field, const std::function<double()>& compute) {
    try {
        return compute();
    } catch (const DataError& e) {
        throw DataError(std::string(field) + ": " + e.what());
    }
}

} // namespace

MetaFeatureVector extract(const Dataset& train, const Dataset& test) {
    if (train.d() != test.d())
        throw DataError(train.name + ": train and test feature counts differ (" +
                        std::to_string(train.d()) + " vs " + std::to_string(test.d()) + ")");
    MetaFeatureVector mf;
    mf.n_features = static_cast<double>(train.d());
    mf.n_instances_train = static_cast<double>(train.n());
    mf.n_instances_test = static_cast<double>(test.n());
    mf.target_skewness_train =
        guarded("target_skewness_train", [&] { return skewness(train.y); });
    mf.target_skewness_test = guarded("target_skewness_test", [&] { return skewness(test.y); });
    mf.target_std_train = guarded("target_std_train", [&] { return sample_std(train.y); });
    mf.target_std_test = guarded("target_std_test", [&] { return sample_std(test.y); });

    const MeanAbsCorr corr_train = mean_abs_corr(train);
    const MeanAbsCorr corr_test = mean_abs_corr(test);
    mf.mean_abs_corr_train = corr_train.value;
    mf.mean_abs_corr_test = corr_test.value;
    if (corr_train.constant_columns > 0)
        mf.warnings.push_back("mean_abs_corr_train: " +
                              std::to_string(corr_train.constant_columns) +
                              " constant column(s) counted as correlation 0");
    if (corr_test.constant_columns > 0)
        mf.warnings.push_back("mean_abs_corr_test: " +
                              std::to_string(corr_test.constant_columns) +
                              " constant column(s) counted as correlation 0");

    const LinearityR2 lin_train = linearity_r2(train);
    const LinearityR2 lin_test = linearity_r2(test);
    mf.linearity_r2_train = lin_train.r2;
    mf.linearity_r2_test = lin_test.r2;
    if (lin_train.degenerate)
        mf.warnings.push_back("linearity_r2_train: degenerate fit (n <= d)");
    if (lin_test.degenerate)
        mf.warnings.push_back("linearity_r2_test: degenerate fit (n <= d)");
    return mf;
}

MetaFeatureVector median_metafeatures(std::span<const MetaFeatureVector> rows) {
    GPB_ENSURE(!rows.empty(), "median over no meta-feature rows");
    std::array<double, kMetaFeatureCount> out{};
    for (std::size_t f = 0; f < kMetaFeatureCount; ++f) {
        std::vector<double> column(rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r)
            column[r] = rows[r].values()[f];
        out[f] = median(std::move(column));
    }
    MetaFeatureVector mf = MetaFeatureVector::from_values(out);
    for (const MetaFeatureVector& row : rows)
        for (const std::string& w : row.warnings)
            if (std::find(mf.warnings.begin(), mf.warnings.end(), w) == mf.warnings.end())
                mf.warnings.push_back(w);
    return mf;
}

void write_metafeatures_csv(const std::string& path, std::span<const MetaFeatureRecord> rows) {
    std::string out = "dataset,provenance";
    for (const char* col : kMetaFeatureColumns) {
        out += ',';
        out += col;
    }
    out += '\n';
    for (const MetaFeatureRecord& rec : rows) {
        out += rec.dataset;
        out += ',';
        out += provenance_name(rec.provenance);
        for (double v : rec.mf.values()) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    write_text_file(path, out);
}

std::vector<MetaFeatureRecord> read_metafeatures_csv(const std::string& path) {
    const std::string text = read_text_file(path);
    std::vector<MetaFeatureRecord> out;
    bool first = true;
    for (const std::string& raw : split(text, '\n')) {
        const std::string line = trim(raw);
        if (line.empty())
            continue;
        const auto cells = split(line, ',');
        if (first) {
            if (cells.size() != kMetaFeatureCount + 2)
                throw DataError(path + ": unexpected column count");
            for (std::size_t f = 0; f < kMetaFeatureCount; ++f)
                if (cells[f + 2] != kMetaFeatureColumns[f])
                    throw DataError(path + ": unexpected column '" + cells[f + 2] +
                                    "', expected '" + kMetaFeatureColumns[f] + "'");
            first = false;
            continue;
        }
        if (cells.size() != kMetaFeatureCount + 2)
            throw DataError(path + ": malformed row '" + line + "'");
        MetaFeatureRecord rec;
        rec.dataset = cells[0];
        rec.provenance = parse_provenance(cells[1]);
        std::array<double, kMetaFeatureCount> values{};
        for (std::size_t f = 0; f < kMetaFeatureCount; ++f)
            if (!parse_double(cells[f + 2], values[f]))
                throw DataError(path + ": bad numeric cell '" + cells[f + 2] + "'");
        rec.mf = MetaFeatureVector::from_values(values);
        out.push_back(std::move(rec));
    }
    return out;
}

} // namespace gpbench
