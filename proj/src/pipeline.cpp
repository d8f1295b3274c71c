#include "gpbench/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include "gpbench/builtin_manifest.hpp"
#include "gpbench/meta_analysis.hpp"
#include "gpbench/metafeatures.hpp"
#include "gpbench/parallel.hpp"
#include "gpbench/splits.hpp"
#include "gpbench/textio.hpp"

namespace gpbench {

namespace fs = std::filesystem;

gp::GpConfig PipelineConfig::gp_config() const {
    gp::GpConfig cfg;
    if (smoke) {
        cfg.population_size = 100;
        cfg.generations = 10;
    }
    if (population_override)
        cfg.population_size = *population_override;
    if (generations_override)
        cfg.generations = *generations_override;
    cfg.elitism = elitism;
    return cfg;
}

void PipelineConfig::validate() const {
    gp_config().validate();
    if (protocol_runs < 1)
        throw ConfigError("protocol runs must be >= 1");
    if (cv_folds < 2 || cv_repetitions < 1)
        throw ConfigError("bad cross-validation plan");
    if (forest_trees < 1)
        throw ConfigError("forest needs at least one tree");
    if (histogram_bins < 1)
        throw ConfigError("histogram needs at least one bin");
    if (out_dir.empty())
        throw ConfigError("output directory must not be empty");
}

namespace {

std::string manifest_text(const PipelineConfig& config) {
    if (config.manifest_path.empty())
        return detail::kBuiltinManifest;
    return read_text_file(config.manifest_path);
}

std::string to_hex(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw DataError("cannot create directory " + dir + ": " + ec.message());
}

void log_line(const char* command, const std::string& message) {
    std::printf("[%s] %s\n", command, message.c_str());
    std::fflush(stdout);
}

} // namespace

std::string config_hash(const PipelineConfig& config) {
    const gp::GpConfig gp_cfg = config.gp_config();
    std::string canon;
    canon += "seed=" + std::to_string(config.seed);
    canon += ";filter=" + config.filter;
    canon += ";allow_excluded=" + std::to_string(config.allow_excluded);
    canon += ";grid_cap=" +
             (config.grid_row_cap ? std::to_string(*config.grid_row_cap) : std::string("none"));
    canon += ";pop=" + std::to_string(gp_cfg.population_size);
    canon += ";gens=" + std::to_string(gp_cfg.generations);
    canon += ";probs=" + format_double(gp_cfg.p_crossover) + "," +
             format_double(gp_cfg.p_subtree) + "," + format_double(gp_cfg.p_hoist) + "," +
             format_double(gp_cfg.p_point);
    canon += ";tournament=" + std::to_string(gp_cfg.tournament_size);
    canon += ";init_depth=" + std::to_string(gp_cfg.init_depth_min) + ".." +
             std::to_string(gp_cfg.init_depth_max);
    canon += ";consts=" + format_double(gp_cfg.const_lo) + ".." + format_double(gp_cfg.const_hi);
    canon += ";point_replace=" + format_double(gp_cfg.point_replace_prob);
    canon += ";parsimony=" + format_double(gp_cfg.parsimony);
    canon += ";max_depth=" + std::to_string(gp_cfg.max_depth);
    canon += ";elitism=" + std::to_string(gp_cfg.elitism);
    canon += ";runs=" + std::to_string(config.protocol_runs);
    canon += ";cv=" + std::to_string(config.cv_folds) + "x" + std::to_string(config.cv_repetitions);
    canon += ";trees=" + std::to_string(config.forest_trees);
    canon += ";bins=" + std::to_string(config.histogram_bins);
    canon += ";manifest=" + to_hex(fnv1a(manifest_text(config)));
    if (!config.real_manifest_path.empty() && fs::exists(config.real_manifest_path))
        canon += ";real=" + to_hex(fnv1a(read_text_file(config.real_manifest_path)));
    else
        canon += ";real=none";
    return to_hex(fnv1a(canon));
}

const Catalog& pipeline_catalog(const PipelineConfig& config, Catalog& storage) {
    if (config.manifest_path.empty())
        return builtin_catalog();
    storage = load_catalog(config.manifest_path);
    return storage;
}

std::vector<RealDatasetEntry> load_real_manifest(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw DataError("bad real-dataset manifest " + path + ": " + e.what());
    }
    const fs::path base = fs::path(path).parent_path();
    const std::string data_dir = j.value("data_dir", std::string());

    std::vector<RealDatasetEntry> out;
    for (const auto& entry : j.at("datasets")) {
        RealDatasetEntry e;
        e.name = entry.at("name").get<std::string>();
        e.abbrev = entry.value("abbrev", e.name);
        fs::path file = entry.at("file").get<std::string>();
        if (file.is_relative())
            file = base / data_dir / file;
        e.file = file.string();
        e.load.name = e.name;
        e.load.provenance = Provenance::Real;
        e.load.target = entry.at("target").get<std::string>();
        if (entry.contains("na"))
            e.load.na_tokens = entry.at("na").get<std::vector<std::string>>();
        if (entry.contains("dummy"))
            e.load.dummy_columns = entry.at("dummy").get<std::vector<std::string>>();
        if (entry.contains("drop"))
            e.load.drop_columns = entry.at("drop").get<std::vector<std::string>>();
        if (entry.contains("subsample"))
            e.load.subsample_n = entry.at("subsample").get<std::size_t>();
        if (entry.contains("published_features"))
            e.published_features = entry.at("published_features").get<std::size_t>();
        if (entry.contains("published_instances"))
            e.published_instances = entry.at("published_instances").get<std::size_t>();
        out.push_back(std::move(e));
    }
    return out;
}

namespace {

struct RealDataset {
    RealDatasetEntry entry;
    Dataset data;
};

// Real datasets named by the manifest whose files exist; missing files are
// a skip (with a notice) or an error under --strict-real.
std::vector<RealDataset> load_real_datasets(const PipelineConfig& config, const char* command) {
    std::vector<RealDataset> out;
    if (config.real_manifest_path.empty())
        return out;
    for (RealDatasetEntry& entry : load_real_manifest(config.real_manifest_path)) {
        if (!config.filter.empty() && !glob_match(config.filter, entry.name))
            continue;
        if (!fs::exists(entry.file)) {
            if (config.strict_real)
                throw DataError("real dataset file missing: " + entry.file);
            log_line(command, "skipping real dataset " + entry.name + " (missing " +
                                  entry.file + ")");
            continue;
        }
        entry.load.subsample_seed = Rng::derive_seed(config.seed, "subsample/" + entry.name);
        RealDataset rd;
        rd.data = load_csv(entry.file, entry.load);
        log_line(command, entry.name + ": " + std::to_string(rd.data.n()) + " rows, " +
                              std::to_string(rd.data.raw_d) + " raw features, " +
                              std::to_string(rd.data.d()) + " after encoding");
        if (entry.published_instances && rd.data.n() != *entry.published_instances)
            log_line(command, entry.name + ": loaded " + std::to_string(rd.data.n()) +
                                  " rows, published count is " +
                                  std::to_string(*entry.published_instances));
        if (entry.published_features && rd.data.d() + 1 != *entry.published_features &&
            rd.data.d() != *entry.published_features)
            log_line(command, entry.name + ": loaded " + std::to_string(rd.data.d()) +
                                  " features, published count is " +
                                  std::to_string(*entry.published_features));
        rd.entry = std::move(entry);
        out.push_back(std::move(rd));
    }
    return out;
}

std::string dataset_csv_path(const PipelineConfig& config, const std::string& name, Role role) {
    return config.out_dir + "/datasets/" + name + (role == Role::Train ? "_train" : "_test") +
           ".csv";
}

Dataset load_generated(const PipelineConfig& config, const std::string& name, Role role) {
    const std::string path = dataset_csv_path(config, name, role);
    if (!fs::exists(path))
        throw DataError("missing dataset file " + path + " (run 'generate' first)");
    LoadOptions options;
    options.target = "y";
    options.provenance = Provenance::Synthetic;
    options.name = name;
    Dataset ds = load_csv(path, options);
    ds.role = role;
    return ds;
}

} // namespace

int cmd_generate(const PipelineConfig& config) {
    config.validate();
    Catalog storage;
    const Catalog& catalog = pipeline_catalog(config, storage);
    ensure_dir(config.out_dir + "/datasets");
    const std::string hash = config_hash(config);

    GenerateOptions options;
    options.allow_excluded = config.allow_excluded;
    options.grid_row_cap = config.grid_row_cap;

    nlohmann::ordered_json meta;
    meta["command"] = "generate";
    meta["seed"] = config.seed;
    meta["config_hash"] = hash;
    meta["policy"] = {
        {"open_intervals", "U(a,b,c) sampled as the closed interval [a,b]"},
        {"missing_test_set",
         "redrawn from the training specs with the derived stream (seed xor 1)"},
        {"uniform_domain_violations", "per-row rejection resampling, 1000 attempts per row"},
    };
    meta["datasets"] = nlohmann::ordered_json::array();
    meta["skipped"] = nlohmann::ordered_json::array();

    std::size_t generated = 0;
    for (const BenchmarkDef& def : catalog.defs) {
        if (!config.filter.empty() && !glob_match(config.filter, def.name))
            continue;
        if (def.excluded && !config.allow_excluded) {
            log_line("generate", "refusing excluded benchmark " + def.name + ": " +
                                     def.exclusion_reason);
            meta["skipped"].push_back({{"name", def.name}, {"reason", def.exclusion_reason}});
            continue;
        }
        const std::uint64_t seed = Rng::derive_seed(config.seed, "generate/" + def.name);
        GeneratedPair pair = generate_benchmark(def, seed, options);
        write_dataset_csv(pair.train, dataset_csv_path(config, def.name, Role::Train));
        write_dataset_csv(pair.test, dataset_csv_path(config, def.name, Role::Test));
        meta["datasets"].push_back({
            {"name", def.name},
            {"vars", def.arity},
            {"seed", seed},
            {"train_rows", pair.train.n()},
            {"test_rows", pair.test.n()},
            {"train_full_rows", pair.train_full_rows},
            {"test_full_rows", pair.test_full_rows},
            {"train_resampled_rows", pair.train_resampled_rows},
            {"test_resampled_rows", pair.test_resampled_rows},
            {"test_from_train_spec", pair.test_from_train_spec},
        });
        log_line("generate", def.name + ": train " + std::to_string(pair.train.n()) + "x" +
                                 std::to_string(pair.train.d()) + ", test " +
                                 std::to_string(pair.test.n()) + "x" +
                                 std::to_string(pair.test.d()));
        ++generated;
    }

    write_text_file(config.out_dir + "/datasets/generate_meta.json", meta.dump(2) + "\n");

    if (generated == 0 && !config.filter.empty()) {
        // The filter matched nothing generatable; excluded matches were refused above.
        bool matched_excluded = false;
        for (const BenchmarkDef& def : catalog.defs)
            if (def.excluded && glob_match(config.filter, def.name))
                matched_excluded = true;
        if (matched_excluded)
            throw DataError("filter '" + config.filter +
                            "' only matches excluded benchmarks; use --allow-excluded to force");
    }
    log_line("generate", "wrote " + std::to_string(generated) + " dataset pair(s)");
    return 0;
}

int cmd_metafeatures(const PipelineConfig& config) {
    config.validate();
    Catalog storage;
    const Catalog& catalog = pipeline_catalog(config, storage);
    ensure_dir(config.out_dir);

    std::vector<MetaFeatureRecord> records;
    for (const BenchmarkDef* def : catalog.match(config.filter, config.allow_excluded)) {
        const Dataset train = load_generated(config, def->name, Role::Train);
        const Dataset test = load_generated(config, def->name, Role::Test);
        MetaFeatureRecord rec;
        rec.dataset = def->name;
        rec.provenance = Provenance::Synthetic;
        rec.mf = extract(train, test);
        for (const std::string& w : rec.mf.warnings)
            log_line("metafeatures", def->name + ": " + w);
        records.push_back(std::move(rec));
    }

    nlohmann::ordered_json real_shapes = nlohmann::ordered_json::array();
    for (const RealDataset& rd : load_real_datasets(config, "metafeatures")) {
        const std::uint64_t split_seed = Rng::derive_seed(config.seed, "splits/" + rd.entry.name);
        const SplitPlan plan = SplitPlan::cross_validation(config.cv_folds, config.cv_repetitions);
        const auto pairs = make_splits(rd.data, plan, split_seed);
        std::vector<MetaFeatureVector> per_pair;
        per_pair.reserve(pairs.size());
        for (const auto& [train, test] : pairs)
            per_pair.push_back(extract(train, test));
        MetaFeatureRecord rec;
        rec.dataset = rd.entry.name;
        rec.provenance = Provenance::Real;
        rec.mf = median_metafeatures(per_pair);
        records.push_back(std::move(rec));
        real_shapes.push_back({{"name", rd.entry.name},
                               {"rows", rd.data.n()},
                               {"raw_features", rd.data.raw_d},
                               {"encoded_features", rd.data.d()}});
    }

    write_metafeatures_csv(config.out_dir + "/metafeatures.csv", records);

    nlohmann::ordered_json meta;
    meta["command"] = "metafeatures";
    meta["seed"] = config.seed;
    meta["config_hash"] = config_hash(config);
    meta["rows"] = records.size();
    meta["real_dataset_shapes"] = real_shapes;
    write_text_file(config.out_dir + "/metafeatures_meta.json", meta.dump(2) + "\n");
    log_line("metafeatures", "wrote " + std::to_string(records.size()) + " row(s)");
    return 0;
}

namespace {

nlohmann::ordered_json run_record(std::size_t index, const gp::RunResult& run,
                                  std::optional<std::pair<int, int>> rep_fold) {
    nlohmann::ordered_json j;
    j["run"] = index;
    if (rep_fold) {
        j["rep"] = rep_fold->first;
        j["fold"] = rep_fold->second;
    }
    j["seed"] = run.seed;
    j["train_nrmse"] = run.train_nrmse;
    j["test_nrmse"] = run.test_nrmse;
    j["best_size"] = run.best.size();
    j["best_depth"] = run.best.depth;
    j["best_expression"] = run.best.to_expression();
    j["trace"] = run.trace;
    return j;
}

GpSummaryRecord summarize(const std::string& name, Provenance provenance,
                          const gp::ProtocolResult& result) {
    GpSummaryRecord rec;
    rec.dataset = name;
    rec.provenance = provenance;
    rec.runs = static_cast<int>(result.runs.size());
    rec.median_train_nrmse = result.median_train_nrmse;
    rec.median_test_nrmse = result.median_test_nrmse;
    return rec;
}

} // namespace

int cmd_rungp(const PipelineConfig& config) {
    config.validate();
    Catalog storage;
    const Catalog& catalog = pipeline_catalog(config, storage);
    ensure_dir(config.out_dir + "/runs");
    const std::string hash = config_hash(config);
    const gp::GpConfig gp_cfg = config.gp_config();
    const int workers = resolve_workers(config.workers);

    std::vector<GpSummaryRecord> summaries;

    for (const BenchmarkDef* def : catalog.match(config.filter, config.allow_excluded)) {
        const Dataset train = load_generated(config, def->name, Role::Train);
        const Dataset test = load_generated(config, def->name, Role::Test);
        const auto pairs =
            make_splits(train, test, SplitPlan::fixed_repeats(config.protocol_runs));
        const std::uint64_t master = Rng::derive_seed(config.seed, "gp/" + def->name);
        const gp::ProtocolResult result = gp::run_protocol(pairs, gp_cfg, master, workers);

        nlohmann::ordered_json j;
        j["dataset"] = def->name;
        j["provenance"] = "synthetic";
        j["config_hash"] = hash;
        j["protocol"] = "fixed_repeats";
        j["runs"] = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < result.runs.size(); ++i)
            j["runs"].push_back(run_record(i, result.runs[i], std::nullopt));
        j["median_train_nrmse"] = result.median_train_nrmse;
        j["median_test_nrmse"] = result.median_test_nrmse;
        write_text_file(config.out_dir + "/runs/" + def->name + ".json", j.dump(2) + "\n");

        summaries.push_back(summarize(def->name, Provenance::Synthetic, result));
        log_line("rungp", def->name + ": median train " +
                              format_double(result.median_train_nrmse) + ", median test " +
                              format_double(result.median_test_nrmse));
    }

    for (const RealDataset& rd : load_real_datasets(config, "rungp")) {
        const std::uint64_t split_seed = Rng::derive_seed(config.seed, "splits/" + rd.entry.name);
        const SplitPlan plan = SplitPlan::cross_validation(config.cv_folds, config.cv_repetitions);
        const auto pairs = make_splits(rd.data, plan, split_seed);
        const std::uint64_t master = Rng::derive_seed(config.seed, "gp/" + rd.entry.name);
        const gp::ProtocolResult result = gp::run_protocol(pairs, gp_cfg, master, workers);

        nlohmann::ordered_json j;
        j["dataset"] = rd.entry.name;
        j["provenance"] = "real";
        j["config_hash"] = hash;
        j["protocol"] = "cross_validation";
        j["runs"] = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < result.runs.size(); ++i) {
            const int rep = static_cast<int>(i) / config.cv_folds;
            const int fold = static_cast<int>(i) % config.cv_folds;
            j["runs"].push_back(run_record(i, result.runs[i], std::make_pair(rep, fold)));
        }
        j["median_train_nrmse"] = result.median_train_nrmse;
        j["median_test_nrmse"] = result.median_test_nrmse;
        write_text_file(config.out_dir + "/runs/" + rd.entry.name + ".json", j.dump(2) + "\n");

        summaries.push_back(summarize(rd.entry.name, Provenance::Real, result));
        log_line("rungp", rd.entry.name + ": median train " +
                              format_double(result.median_train_nrmse) + ", median test " +
                              format_double(result.median_test_nrmse));
    }

    write_summary_csv(config.out_dir + "/runs_summary.csv", summaries);

    nlohmann::ordered_json meta;
    meta["command"] = "rungp";
    meta["seed"] = config.seed;
    meta["config_hash"] = hash;
    meta["datasets"] = summaries.size();
    meta["runs_per_dataset"] = config.protocol_runs;
    meta["cv"] = {{"folds", config.cv_folds}, {"repetitions", config.cv_repetitions}};
    meta["gp"] = {
        {"population", gp_cfg.population_size},
        {"generations", gp_cfg.generations},
        {"p_crossover", gp_cfg.p_crossover},
        {"p_subtree", gp_cfg.p_subtree},
        {"p_hoist", gp_cfg.p_hoist},
        {"p_point", gp_cfg.p_point},
        {"tournament_size", gp_cfg.tournament_size},
        {"init_depth", {gp_cfg.init_depth_min, gp_cfg.init_depth_max}},
        {"const_range", {gp_cfg.const_lo, gp_cfg.const_hi}},
        {"point_replace_prob", gp_cfg.point_replace_prob},
        {"parsimony", gp_cfg.parsimony},
        {"max_depth", gp_cfg.max_depth},
        {"elitism", gp_cfg.elitism},
    };
    write_text_file(config.out_dir + "/runs_meta.json", meta.dump(2) + "\n");
    log_line("rungp", "wrote " + std::to_string(summaries.size()) + " summar(ies)");
    return 0;
}

int cmd_analyze(const PipelineConfig& config) {
    config.validate();
    const auto metafeature_rows = read_metafeatures_csv(config.out_dir + "/metafeatures.csv");
    const auto summaries = read_summary_csv(config.out_dir + "/runs_summary.csv");

    std::vector<std::string> order;
    order.reserve(metafeature_rows.size());
    for (const MetaFeatureRecord& rec : metafeature_rows)
        order.push_back(rec.dataset);

    const MetaDataset md = assemble(metafeature_rows, summaries, order);
    const std::uint64_t forest_seed = Rng::derive_seed(config.seed, "forest");
    const AnalysisResult result =
        analyze(md, forest_seed, config.forest_trees, resolve_workers(config.workers));

    ReportConfig report;
    report.histogram_bins = config.histogram_bins;
    emit_report(md, result, config.out_dir + "/report", report, config_hash(config), config.seed);

    log_line("analyze", "forest R2 " + format_double(result.forest_metrics.r2) + ", linear R2 " +
                            format_double(result.linear.r2) + ", plane R2 " +
                            format_double(result.plane.r2));
    log_line("analyze", "report written to " + config.out_dir + "/report");
    return 0;
}

int cmd_all(const PipelineConfig& config) {
    if (int rc = cmd_generate(config); rc != 0)
        return rc;
    if (int rc = cmd_metafeatures(config); rc != 0)
        return rc;
    if (int rc = cmd_rungp(config); rc != 0)
        return rc;
    return cmd_analyze(config);
}

namespace {

void add_common_options(CLI::App* cmd, PipelineConfig& config, std::string& grid_cap_text) {
    cmd->add_option("--seed", config.seed, "Master seed; all randomness derives from it")
        ->envname("GPBENCH_SEED");
    cmd->add_option("--out", config.out_dir, "Output directory")->envname("GPBENCH_OUT");
    cmd->add_option("--filter", config.filter, "Glob over dataset names, e.g. 'Nguyen-*'")
        ->envname("GPBENCH_FILTER");
    cmd->add_option("--workers", config.workers, "Parallel workers (0 = auto)")
        ->envname("GPBENCH_WORKERS");
    cmd->add_option("--manifest", config.manifest_path, "Benchmark manifest file")
        ->envname("GPBENCH_MANIFEST");
    cmd->add_option("--real-manifest", config.real_manifest_path, "Real-dataset manifest file")
        ->envname("GPBENCH_REAL_MANIFEST");
    cmd->add_flag("--smoke", config.smoke, "Desk-scale GP: population 100, 10 generations")
        ->envname("GPBENCH_SMOKE");
    cmd->add_flag("--allow-excluded", config.allow_excluded,
                  "Generate benchmarks the catalog marks as excluded");
    cmd->add_flag("--strict-real", config.strict_real,
                  "Error instead of skipping when a real dataset file is missing");
    cmd->add_option("--grid-cap", grid_cap_text,
                    "Thin grid test sets above this many rows (count checks still use "
                    "the full size)");
    cmd->add_option("--pop", config.population_override, "Population size override");
    cmd->add_option("--generations", config.generations_override, "Generation count override");
    cmd->add_option("--runs", config.protocol_runs, "Runs per dataset (protocol default 30)");
    cmd->add_option("--trees", config.forest_trees, "Forest size for analyze");
    cmd->add_option("--bins", config.histogram_bins, "Histogram bins for the report");
    cmd->add_flag("!--no-elitism", config.elitism, "Disable elitism in the GP loop");
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    PipelineConfig config;
    std::string grid_cap_text;

    CLI::App app{"Symbolic-regression benchmark characterization pipeline"};
    app.require_subcommand(1);

    CLI::App* generate =
        app.add_subcommand("generate", "Generate the synthetic benchmark datasets");
    CLI::App* metafeatures =
        app.add_subcommand("metafeatures", "Extract per-dataset meta-features");
    CLI::App* rungp = app.add_subcommand("rungp", "Run the GP protocol on every dataset");
    CLI::App* analyze = app.add_subcommand("analyze", "Fit the meta-models and write the report");
    CLI::App* all = app.add_subcommand("all", "generate + metafeatures + rungp + analyze");
    for (CLI::App* cmd : {generate, metafeatures, rungp, analyze, all})
        add_common_options(cmd, config, grid_cap_text);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (!grid_cap_text.empty()) {
            double v = 0;
            if (!parse_double(grid_cap_text, v) || v < 1 || v != std::trunc(v))
                throw ConfigError("--grid-cap must be a positive integer");
            config.grid_row_cap = static_cast<std::size_t>(v);
        }
        if (generate->parsed())
            return cmd_generate(config);
        if (metafeatures->parsed())
            return cmd_metafeatures(config);
        if (rungp->parsed())
            return cmd_rungp(config);
        if (analyze->parsed())
            return cmd_analyze(config);
        if (all->parsed())
            return cmd_all(config);
        return 2;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const DataError& e) {
        std::fprintf(stderr, "data error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 4;
    }
}

} // namespace gpbench
