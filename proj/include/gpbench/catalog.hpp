#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gpbench/dataset.hpp"
#include "gpbench/expr.hpp"
#include "gpbench/sampling.hpp"

namespace gpbench {

struct BenchmarkDef {
    std::string name;
    int arity = 0;
    std::string formula;  // original manifest text, kept for reports
    Expr objective;
    std::vector<SamplingSpec> train_specs;
    // nullopt encodes "none" in the manifest: no published test set.
    std::optional<std::vector<SamplingSpec>> test_specs;
    bool excluded = false;
    std::string exclusion_reason;

    void validate() const;  // throws ConfigError
};

struct Catalog {
    std::vector<BenchmarkDef> defs;

    const BenchmarkDef* find(std::string_view name) const;
    // Glob filter over names; empty pattern matches everything.
    std::vector<const BenchmarkDef*> match(std::string_view pattern,
                                           bool include_excluded = false) const;
};

Catalog parse_catalog(std::string_view text);  // manifest grammar, see data/benchmarks.manifest
Catalog load_catalog(const std::string& path);
const Catalog& builtin_catalog();  // the shipped manifest, embedded at build time

struct GenerateOptions {
    bool allow_excluded = false;
    // Grids whose Cartesian product exceeds this are thinned to this many
    // uniformly chosen rows; full counts stay available via input_row_count.
    std::optional<std::size_t> grid_row_cap;
};

struct GeneratedPair {
    Dataset train, test;
    std::size_t train_full_rows = 0, test_full_rows = 0;  // before any thinning
    std::size_t train_resampled_rows = 0, test_resampled_rows = 0;
    bool test_from_train_spec = false;  // catalog test set was "none"
};

// Deterministic per seed: the train split consumes the stream seeded with
// `seed`, the test split the stream seeded with `seed ^ 1`. Rows of uniform
// samples that hit a domain violation are redrawn (up to 1000 attempts per
// row); a violation on a grid row is a hard error. When the catalog has no
// test set, the test split redraws the training specs with the derived seed.
GeneratedPair generate_benchmark(const BenchmarkDef& def, std::uint64_t seed,
                                 const GenerateOptions& options = {});

} // namespace gpbench
