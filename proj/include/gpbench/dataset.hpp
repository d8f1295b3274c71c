#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gpbench/linalg.hpp"

namespace gpbench {

enum class Provenance { Real, Synthetic };
enum class Role { Train, Test, Full };

std::string_view provenance_name(Provenance p);
Provenance parse_provenance(std::string_view s);

struct Dataset {
    std::string name;
    Matrix x;  // n rows, d feature columns
    std::vector<double> y;
    Provenance provenance = Provenance::Synthetic;
    Role role = Role::Full;
    std::vector<std::string> feature_names;  // empty -> x1..xd
    // Categorical columns carry level codes in x until dummy-encoded; the
    // level table lives here, keyed by column name.
    std::map<std::string, std::vector<std::string>> categorical_levels;

    // Feature count before dummy expansion; loaders set it, generated
    // datasets leave it equal to d().
    std::size_t raw_d = 0;

    std::size_t n() const { return x.rows; }
    std::size_t d() const { return x.cols; }
    std::string feature_name(std::size_t j) const;
    std::size_t feature_index(std::string_view name) const;  // throws DataError

    // n >= 2, at least one feature, y length matches, all entries finite.
    void validate() const;
};

struct LoadOptions {
    std::string target;  // target column name
    std::vector<std::string> na_tokens = {"", "NA", "?"};
    std::vector<std::string> dummy_columns;  // forced categorical
    std::vector<std::string> drop_columns;
    std::optional<std::size_t> subsample_n;
    std::uint64_t subsample_seed = 0;
    Provenance provenance = Provenance::Real;
    std::string name;  // defaults to the file stem
};

// CSV with a header row. Missing numeric cells become NaN sentinels, columns
// with non-numeric cells become categorical, and the fixed preprocessing
// order impute -> dummy-encode -> subsample produces the final dataset.
Dataset load_csv(const std::string& path, const LoadOptions& options);

// Replace each missing (NaN) cell by its column mean over present values.
Dataset impute_mean(const Dataset& ds);

// Replace a categorical column by one 0/1 indicator per level.
Dataset dummy_encode(const Dataset& ds, const std::string& column);

// n distinct rows chosen uniformly without replacement, original order kept
// (n == ds.n returns an identical copy).
Dataset subsample(const Dataset& ds, std::size_t n, std::uint64_t seed);

// Header x1..xd,y; '.' decimal separator, LF line endings, shortest
// round-trip floats.
void write_dataset_csv(const Dataset& ds, const std::string& path);

} // namespace gpbench
