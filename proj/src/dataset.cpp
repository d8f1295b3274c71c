#include "gpbench/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "gpbench/errors.hpp"
#include "gpbench/rng.hpp"
#include "gpbench/textio.hpp"

namespace gpbench {

std::string_view provenance_name(Provenance p) {
    return p == Provenance::Real ? "real" : "synthetic";
}

Provenance parse_provenance(std::string_view s) {
    if (s == "real")
        return Provenance::Real;
    if (s == "synthetic")
        return Provenance::Synthetic;
    throw DataError("unknown provenance: " + std::string(s));
}

std::string Dataset::feature_name(std::size_t j) const {
    if (j < feature_names.size())
        return feature_names[j];
    return "x" + std::to_string(j + 1);
}

std::size_t Dataset::feature_index(std::string_view col) const {
    for (std::size_t j = 0; j < d(); ++j)
        if (feature_name(j) == col)
            return j;
    throw DataError(name + ": no column named '" + std::string(col) + "'");
}

void Dataset::validate() const {
    if (n() < 2)
        throw DataError(name + ": dataset needs at least 2 rows, has " + std::to_string(n()));
    if (d() < 1)
        throw DataError(name + ": dataset has no features");
    if (y.size() != n())
        throw DataError(name + ": target length does not match row count");
    for (double v : x.data)
        if (!std::isfinite(v))
            throw DataError(name + ": non-finite feature value");
    for (double v : y)
        if (!std::isfinite(v))
            throw DataError(name + ": non-finite target value");
}

namespace {

bool is_na(const std::string& cell, const std::vector<std::string>& na_tokens) {
    return std::find(na_tokens.begin(), na_tokens.end(), cell) != na_tokens.end();
}

struct RawTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

RawTable read_rectangular_csv(const std::string& path) {
    const std::string text = read_text_file(path);
    RawTable table;
    bool first = true;
    for (const std::string& raw_line : split(text, '\n')) {
        std::string line = raw_line;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::vector<std::string> cells = split(line, ',');
        for (std::string& c : cells)
            c = trim(c);
        if (first) {
            table.header = std::move(cells);
            first = false;
        } else {
            if (cells.size() != table.header.size())
                throw DataError(path + ": row " + std::to_string(table.rows.size() + 2) +
                                " has " + std::to_string(cells.size()) + " cells, expected " +
                                std::to_string(table.header.size()));
            table.rows.push_back(std::move(cells));
        }
    }
    if (table.header.empty())
        throw DataError(path + ": empty file");
    if (table.rows.empty())
        throw DataError(path + ": no data rows");
    return table;
}

std::string file_stem(const std::string& path) {
    std::size_t slash = path.find_last_of("/\\");
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    std::size_t dot = base.find_last_of('.');
    return dot == std::string::npos ? base : base.substr(0, dot);
}

} // namespace

Dataset load_csv(const std::string& path, const LoadOptions& options) {
    if (options.target.empty())
        throw ConfigError("load_csv: no target column given");
    RawTable table = read_rectangular_csv(path);

    std::vector<std::size_t> keep;
    std::size_t target_col = table.header.size();
    for (std::size_t j = 0; j < table.header.size(); ++j) {
        const std::string& col = table.header[j];
        if (col == options.target) {
            target_col = j;
            continue;
        }
        if (std::find(options.drop_columns.begin(), options.drop_columns.end(), col) !=
            options.drop_columns.end())
            continue;
        keep.push_back(j);
    }
    if (target_col == table.header.size())
        throw DataError(path + ": target column '" + options.target + "' not found");
    if (keep.empty())
        throw DataError(path + ": no feature columns besides the target");

    Dataset ds;
    ds.name = options.name.empty() ? file_stem(path) : options.name;
    ds.provenance = options.provenance;
    ds.role = Role::Full;
    const std::size_t n = table.rows.size();
    ds.x = Matrix(n, keep.size());
    ds.y.resize(n);
    ds.feature_names.reserve(keep.size());

    for (std::size_t jj = 0; jj < keep.size(); ++jj) {
        const std::size_t j = keep[jj];
        const std::string& col = table.header[j];
        ds.feature_names.push_back(col);

        const bool forced_cat = std::find(options.dummy_columns.begin(),
                                          options.dummy_columns.end(),
                                          col) != options.dummy_columns.end();
        bool numeric = !forced_cat;
        if (numeric) {
            for (const auto& row : table.rows) {
                double v;
                if (!is_na(row[j], options.na_tokens) && !parse_double(row[j], v)) {
                    numeric = false;
                    break;
                }
            }
        }

        if (numeric) {
            for (std::size_t r = 0; r < n; ++r) {
                const std::string& cell = table.rows[r][j];
                double v;
                if (is_na(cell, options.na_tokens))
                    ds.x.at(r, jj) = std::numeric_limits<double>::quiet_NaN();
                else if (parse_double(cell, v))
                    ds.x.at(r, jj) = v;
                else
                    throw DataError(path + ": bad numeric cell '" + cell + "' in column " + col);
            }
        } else {
            // Categorical: levels sorted for determinism, cells become codes.
            std::set<std::string> level_set;
            for (const auto& row : table.rows) {
                if (is_na(row[j], options.na_tokens))
                    throw DataError(path + ": missing value in categorical column '" + col +
                                    "'");
                level_set.insert(row[j]);
            }
            std::vector<std::string> levels(level_set.begin(), level_set.end());
            for (std::size_t r = 0; r < n; ++r) {
                const auto it = level_set.find(table.rows[r][j]);
                ds.x.at(r, jj) = static_cast<double>(std::distance(level_set.begin(), it));
            }
            ds.categorical_levels[col] = std::move(levels);
        }
    }

    for (std::size_t r = 0; r < n; ++r) {
        const std::string& cell = table.rows[r][target_col];
        double v;
        if (is_na(cell, options.na_tokens))
            throw DataError(path + ": missing value in target column");
        if (!parse_double(cell, v))
            throw DataError(path + ": bad numeric target cell '" + cell + "'");
        ds.y[r] = v;
    }

    ds.raw_d = ds.d();

    // Fixed preprocessing order: impute -> dummy-encode -> subsample.
    ds = impute_mean(ds);
    std::vector<std::string> cat_columns;
    for (const auto& [col, levels] : ds.categorical_levels)
        cat_columns.push_back(col);
    for (const std::string& col : cat_columns)
        ds = dummy_encode(ds, col);
    if (options.subsample_n)
        ds = subsample(ds, *options.subsample_n, options.subsample_seed);

    ds.validate();
    return ds;
}

Dataset impute_mean(const Dataset& ds) {
    Dataset out = ds;
    for (std::size_t j = 0; j < out.d(); ++j) {
        if (out.categorical_levels.count(out.feature_name(j)))
            continue;
        double sum = 0.0;
        std::size_t present = 0;
        for (std::size_t r = 0; r < out.n(); ++r) {
            const double v = out.x.at(r, j);
            if (!std::isnan(v)) {
                sum += v;
                ++present;
            }
        }
        if (present == out.n())
            continue;
        if (present == 0)
            throw DataError(ds.name + ": column '" + out.feature_name(j) +
                            "' is entirely missing");
        const double mean = sum / static_cast<double>(present);
        for (std::size_t r = 0; r < out.n(); ++r)
            if (std::isnan(out.x.at(r, j)))
                out.x.at(r, j) = mean;
    }
    return out;
}

Dataset dummy_encode(const Dataset& ds, const std::string& column) {
    const auto it = ds.categorical_levels.find(column);
    if (it == ds.categorical_levels.end())
        throw DataError(ds.name + ": column '" + column + "' is not categorical");
    const std::vector<std::string>& levels = it->second;
    if (levels.size() < 2)
        throw DataError(ds.name + ": column '" + column + "' has a single level");

    const std::size_t col = ds.feature_index(column);
    Dataset out;
    out.name = ds.name;
    out.provenance = ds.provenance;
    out.role = ds.role;
    out.y = ds.y;
    out.categorical_levels = ds.categorical_levels;
    out.raw_d = ds.raw_d;
    out.categorical_levels.erase(column);

    const std::size_t new_d = ds.d() - 1 + levels.size();
    out.x = Matrix(ds.n(), new_d);
    out.feature_names.reserve(new_d);
    for (std::size_t j = 0; j < ds.d(); ++j) {
        if (j == col) {
            for (const std::string& level : levels)
                out.feature_names.push_back(column + "=" + level);
        } else {
            out.feature_names.push_back(ds.feature_name(j));
        }
    }

    for (std::size_t r = 0; r < ds.n(); ++r) {
        std::size_t jj = 0;
        for (std::size_t j = 0; j < ds.d(); ++j) {
            if (j == col) {
                const auto code = static_cast<std::size_t>(ds.x.at(r, j));
                GPB_ENSURE(code < levels.size(), "categorical code out of range");
                for (std::size_t k = 0; k < levels.size(); ++k)
                    out.x.at(r, jj++) = k == code ? 1.0 : 0.0;
            } else {
                out.x.at(r, jj++) = ds.x.at(r, j);
            }
        }
    }
    return out;
}

Dataset subsample(const Dataset& ds, std::size_t n, std::uint64_t seed) {
    if (n > ds.n())
        throw DataError(ds.name + ": cannot subsample " + std::to_string(n) + " of " +
                        std::to_string(ds.n()) + " rows");
    // Partial Fisher-Yates, then ascending order so n == ds.n() is an
    // identical copy.
    std::vector<std::size_t> idx(ds.n());
    for (std::size_t i = 0; i < idx.size(); ++i)
        idx[i] = i;
    Rng rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = i + rng.uniform_int(idx.size() - i);
        std::swap(idx[i], idx[j]);
    }
    idx.resize(n);
    std::sort(idx.begin(), idx.end());

    Dataset out;
    out.name = ds.name;
    out.provenance = ds.provenance;
    out.role = ds.role;
    out.feature_names = ds.feature_names;
    out.categorical_levels = ds.categorical_levels;
    out.raw_d = ds.raw_d;
    out.x = Matrix(n, ds.d());
    out.y.resize(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < ds.d(); ++c)
            out.x.at(r, c) = ds.x.at(idx[r], c);
        out.y[r] = ds.y[idx[r]];
    }
    return out;
}

void write_dataset_csv(const Dataset& ds, const std::string& path) {
    std::string out;
    out.reserve(ds.n() * (ds.d() + 1) * 12);
    for (std::size_t j = 0; j < ds.d(); ++j) {
        out += 'x';
        out += std::to_string(j + 1);
        out += ',';
    }
    out += "y\n";
    for (std::size_t r = 0; r < ds.n(); ++r) {
        for (std::size_t j = 0; j < ds.d(); ++j) {
            out += format_double(ds.x.at(r, j));
            out += ',';
        }
        out += format_double(ds.y[r]);
        out += '\n';
    }
    write_text_file(path, out);
}

} // namespace gpbench
