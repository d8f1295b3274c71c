#include "gpbench/catalog.hpp"

#include <algorithm>
#include <cmath>

#include "gpbench/builtin_manifest.hpp"
#include "gpbench/textio.hpp"

namespace gpbench {

void BenchmarkDef::validate() const {
    if (name.empty())
        throw ConfigError("benchmark without a name");
    if (arity < 1)
        throw ConfigError(name + ": arity must be >= 1");
    if (objective.empty())
        throw ConfigError(name + ": missing objective");
    if (objective.max_var_index() > arity)
        throw ConfigError(name + ": formula references x" +
                          std::to_string(objective.max_var_index()) + " but arity is " +
                          std::to_string(arity));
    if (train_specs.size() != static_cast<std::size_t>(arity))
        throw ConfigError(name + ": need one train spec per variable");
    if (test_specs && test_specs->size() != static_cast<std::size_t>(arity))
        throw ConfigError(name + ": need one test spec per variable");
    for (const auto& s : train_specs)
        s.validate();
    if (test_specs)
        for (const auto& s : *test_specs)
            s.validate();
}

const BenchmarkDef* Catalog::find(std::string_view name) const {
    for (const auto& def : defs)
        if (def.name == name)
            return &def;
    return nullptr;
}

std::vector<const BenchmarkDef*> Catalog::match(std::string_view pattern,
                                                bool include_excluded) const {
    std::vector<const BenchmarkDef*> out;
    for (const auto& def : defs) {
        if (!pattern.empty() && !glob_match(pattern, def.name))
            continue;
        if (def.excluded && !include_excluded)
            continue;
        out.push_back(&def);
    }
    return out;
}

namespace {

// Spec token: U[a,b,c], E[a,b,c] or En[a,b,m]. Commas separate the numbers.
SamplingSpec parse_spec_token(const std::string& token, const std::string& where) {
    std::size_t open = token.find('[');
    if (open == std::string::npos || token.back() != ']')
        throw ConfigError(where + ": malformed sampling spec '" + token + "'");
    const std::string head = token.substr(0, open);
    const auto parts = split(token.substr(open + 1, token.size() - open - 2), ',');
    if (parts.size() != 3)
        throw ConfigError(where + ": sampling spec needs three numbers: '" + token + "'");
    double a = 0, b = 0, c = 0;
    if (!parse_double(trim(parts[0]), a) || !parse_double(trim(parts[1]), b) ||
        !parse_double(trim(parts[2]), c))
        throw ConfigError(where + ": non-numeric sampling bounds in '" + token + "'");
    try {
        if (head == "U")
            return SamplingSpec::uniform(a, b, c);
        if (head == "E")
            return SamplingSpec::grid(a, b, c);
        if (head == "En") {
            if (c < 2 || c != std::trunc(c))
                throw ConfigError("point count must be an integer >= 2");
            return SamplingSpec::grid_points(a, b, static_cast<std::size_t>(c));
        }
    } catch (const ConfigError& e) {
        throw ConfigError(where + ": " + e.what());
    }
    throw ConfigError(where + ": unknown sampling kind '" + head + "'");
}

std::vector<SamplingSpec> parse_spec_list(const std::string& text, int arity,
                                          const std::string& where) {
    std::vector<SamplingSpec> specs;
    for (const std::string& token : split_ws(text))
        specs.push_back(parse_spec_token(token, where));
    if (specs.empty())
        throw ConfigError(where + ": empty sampling spec list");
    if (specs.size() == 1 && arity > 1)
        specs.assign(static_cast<std::size_t>(arity), specs.front());  // broadcast
    if (specs.size() != static_cast<std::size_t>(arity))
        throw ConfigError(where + ": expected " + std::to_string(arity) + " specs, got " +
                          std::to_string(specs.size()));
    return specs;
}

} // namespace

Catalog parse_catalog(std::string_view text) {
    Catalog catalog;
    BenchmarkDef current;
    bool in_block = false;
    bool have_test = false;
    std::size_t line_no = 0;

    auto where = [&]() { return "manifest line " + std::to_string(line_no); };

    for (const std::string& raw : split(text, '\n')) {
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#')
            continue;

        const std::size_t sp = line.find(' ');
        const std::string key = line.substr(0, sp);
        const std::string rest = sp == std::string::npos ? "" : trim(line.substr(sp + 1));

        if (key == "benchmark") {
            if (in_block)
                throw ConfigError(where() + ": nested benchmark block");
            if (rest.empty())
                throw ConfigError(where() + ": benchmark needs a name");
            current = BenchmarkDef{};
            current.name = rest;
            in_block = true;
            have_test = false;
        } else if (!in_block) {
            throw ConfigError(where() + ": '" + key + "' outside a benchmark block");
        } else if (key == "vars") {
            double v = 0;
            if (!parse_double(rest, v) || v < 1 || v != std::trunc(v))
                throw ConfigError(where() + ": vars must be a positive integer");
            current.arity = static_cast<int>(v);
        } else if (key == "formula") {
            current.formula = rest;
            try {
                current.objective = parse_expression(rest);
            } catch (const DataError& e) {
                throw ConfigError(where() + ": " + e.what());
            }
        } else if (key == "train") {
            current.train_specs = parse_spec_list(rest, current.arity, where());
        } else if (key == "test") {
            if (rest == "none") {
                current.test_specs.reset();
            } else {
                current.test_specs = parse_spec_list(rest, current.arity, where());
            }
            have_test = true;
        } else if (key == "excluded") {
            current.excluded = true;
            current.exclusion_reason = rest;
        } else if (key == "end") {
            if (!have_test)
                throw ConfigError(current.name + ": missing test line (use 'test none')");
            current.validate();
            if (std::any_of(catalog.defs.begin(), catalog.defs.end(),
                            [&](const BenchmarkDef& d) { return d.name == current.name; }))
                throw ConfigError("duplicate benchmark name: " + current.name);
            catalog.defs.push_back(std::move(current));
            in_block = false;
        } else {
            throw ConfigError(where() + ": unknown key '" + key + "'");
        }
    }
    if (in_block)
        throw ConfigError("unterminated benchmark block: " + current.name);
    return catalog;
}

Catalog load_catalog(const std::string& path) {
    return parse_catalog(read_text_file(path));
}

const Catalog& builtin_catalog() {
    static const Catalog catalog = parse_catalog(detail::kBuiltinManifest);
    return catalog;
}

namespace {

struct SplitResult {
    Dataset ds;
    std::size_t full_rows = 0;
    std::size_t resampled_rows = 0;
};

SplitResult generate_split(const BenchmarkDef& def, std::span<const SamplingSpec> specs,
                           Rng rng, Role role, const GenerateOptions& options) {
    const bool any_grid =
        std::any_of(specs.begin(), specs.end(),
                    [](const SamplingSpec& s) { return s.kind == SampleKind::Grid; });
    const bool all_uniform = !any_grid;

    SplitResult out;
    out.full_rows = input_row_count(specs);

    Matrix x = build_inputs(specs, rng);

    // Optional grid thinning for oversized Cartesian products; the uniform
    // row choice is deterministic from the same stream.
    if (options.grid_row_cap && any_grid && x.rows > *options.grid_row_cap) {
        const std::size_t keep = *options.grid_row_cap;
        std::vector<std::size_t> idx(x.rows);
        for (std::size_t i = 0; i < x.rows; ++i)
            idx[i] = i;
        for (std::size_t i = 0; i < keep; ++i) {
            const std::size_t j = i + rng.uniform_int(x.rows - i);
            std::swap(idx[i], idx[j]);
        }
        idx.resize(keep);
        std::sort(idx.begin(), idx.end());
        Matrix thinned(keep, x.cols);
        for (std::size_t r = 0; r < keep; ++r)
            for (std::size_t c = 0; c < x.cols; ++c)
                thinned.at(r, c) = x.at(idx[r], c);
        x = std::move(thinned);
    }

    std::vector<double> y(x.rows);
    std::vector<double> scratch;
    std::vector<double> point(specs.size());
    for (std::size_t r = 0; r < x.rows; ++r) {
        for (std::size_t c = 0; c < x.cols; ++c)
            point[c] = x.at(r, c);
        EvalOutcome res = eval_expr(def.objective, point, scratch);
        int attempts = 0;
        while (!res.ok()) {
            if (!all_uniform)
                throw DataError(def.name + ": grid point hits a domain violation (" +
                                std::string(violation_name(res.violation)) + ")");
            if (++attempts > 1000)
                throw DataError(def.name + ": row rejection limit reached (" +
                                std::string(violation_name(res.violation)) + ")");
            for (std::size_t c = 0; c < x.cols; ++c) {
                point[c] = rng.uniform(specs[c].lo, specs[c].hi);
                x.at(r, c) = point[c];
            }
            res = eval_expr(def.objective, point, scratch);
        }
        if (attempts > 0)
            ++out.resampled_rows;
        y[r] = res.value;
    }

    out.ds.name = def.name;
    out.ds.x = std::move(x);
    out.ds.y = std::move(y);
    out.ds.provenance = Provenance::Synthetic;
    out.ds.role = role;
    out.ds.raw_d = out.ds.d();
    out.ds.validate();
    return out;
}

} // namespace

GeneratedPair generate_benchmark(const BenchmarkDef& def, std::uint64_t seed,
                                 const GenerateOptions& options) {
    def.validate();
    if (def.excluded && !options.allow_excluded)
        throw DataError("benchmark '" + def.name + "' is excluded from generation: " +
                        def.exclusion_reason);

    GeneratedPair pair;
    SplitResult train = generate_split(def, def.train_specs, Rng(seed), Role::Train, options);

    // No published test set: redraw the training specs on an independent
    // stream (seed ^ 1); for grid-only specs this reproduces the same grid.
    const std::vector<SamplingSpec>& test_specs =
        def.test_specs ? *def.test_specs : def.train_specs;
    pair.test_from_train_spec = !def.test_specs.has_value();
    SplitResult test = generate_split(def, test_specs, Rng(seed ^ 1), Role::Test, options);

    pair.train = std::move(train.ds);
    pair.test = std::move(test.ds);
    pair.train_full_rows = train.full_rows;
    pair.test_full_rows = test.full_rows;
    pair.train_resampled_rows = train.resampled_rows;
    pair.test_resampled_rows = test.resampled_rows;
    return pair;
}

} // namespace gpbench
