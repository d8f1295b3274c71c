#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gpbench/catalog.hpp"
#include "gpbench/gp.hpp"

namespace gpbench {

// Resolved configuration of one CLI invocation. Defaults reproduce the
// reference protocol (population 1000, 50 generations, 6x5-CV / 30 repeats,
// 120-tree forest) when nothing is overridden.
struct PipelineConfig {
    std::uint64_t seed = 1;
    std::string manifest_path;       // empty: builtin catalog
    std::string real_manifest_path;  // empty: synthetic only
    std::string out_dir = "out";
    std::string filter;  // glob on dataset names, empty = all
    int workers = 1;     // 0 = auto
    bool smoke = false;  // population 100 / 10 generations unless overridden
    bool allow_excluded = false;
    bool strict_real = false;  // missing real dataset file: error instead of skip
    std::optional<std::size_t> grid_row_cap;
    std::optional<int> population_override;
    std::optional<int> generations_override;
    int protocol_runs = 30;
    int cv_folds = 5, cv_repetitions = 6;
    int forest_trees = 120;
    int histogram_bins = 10;
    bool elitism = true;

    gp::GpConfig gp_config() const;
    void validate() const;
};

// Hash of every setting that can influence output bytes (worker count and
// output directory excluded on purpose: results must not depend on them).
std::string config_hash(const PipelineConfig& config);

const Catalog& pipeline_catalog(const PipelineConfig& config, Catalog& storage);

struct RealDatasetEntry {
    std::string name, abbrev, file;
    LoadOptions load;
    std::optional<std::size_t> published_features, published_instances;
};

std::vector<RealDatasetEntry> load_real_manifest(const std::string& path);

// The five pipeline commands; each returns a process exit code.
int cmd_generate(const PipelineConfig& config);
int cmd_metafeatures(const PipelineConfig& config);
int cmd_rungp(const PipelineConfig& config);
int cmd_analyze(const PipelineConfig& config);
int cmd_all(const PipelineConfig& config);

// Full CLI: parses argv, dispatches, maps errors to exit codes
// (0 ok, 2 config, 3 data, 4 internal).
int run_cli(int argc, const char* const* argv);

} // namespace gpbench
