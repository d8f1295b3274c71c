#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gpbench/dataset.hpp"
#include "gpbench/rng.hpp"

namespace gpbench::gp {

enum class Op : std::uint8_t { Add, Sub, Mul, Aq, Sqrt, Sin, Var, Const };

int op_arity(Op op);
std::string_view op_name(Op op);

// Analytic quotient a / sqrt(1 + b^2): a smooth, everywhere-defined
// replacement for protected division.
inline double aq(double a, double b) { return a / std::sqrt(1.0 + b * b); }

struct GpNode {
    Op op{};
    std::uint16_t var = 0;  // Var: 0-based column index
    double value = 0.0;     // Const
};

// Program stored in prefix order: each node is followed immediately by its
// subtrees, so a subtree is a contiguous range.
struct Program {
    std::vector<GpNode> nodes;
    int depth = 0;  // cached; edges from root to deepest leaf

    std::size_t size() const { return nodes.size(); }
    std::size_t subtree_end(std::size_t i) const;
    int max_var() const;
    bool validate(std::size_t d) const;  // arity consistency + depth cache
    void refresh_depth();

    // Serializes into the benchmark expression grammar (AQ expands to
    // a/sqrt(1+b^2), protected sqrt to sqrt(abs(a))).
    std::string to_expression() const;

    bool operator==(const Program&) const;
};

// Every intermediate is clamped to +/-kValueCap, which keeps all outputs
// finite for any program over finite inputs (the cap squared is still below
// the double range).
inline constexpr double kValueCap = 1e150;

struct EvalScratch {
    std::vector<std::vector<double>> stack;
};

// Vectorized postfix evaluation over the rows of x, in chunks. Protected
// sqrt takes |argument|. out.size() must equal x.rows.
void eval_program(const Program& p, const Matrix& x, std::span<double> out, EvalScratch& scratch);
std::vector<double> eval_program(const Program& p, const Matrix& x);

// sqrt( sum (y_i - pred_i)^2 / sum (y_i - mean(y))^2 ).
// Throws DataError when the target has zero variance.
double nrmse(std::span<const double> pred, std::span<const double> y);

struct GpConfig {
    int population_size = 1000;
    int generations = 50;
    double p_crossover = 0.85;
    double p_subtree = 0.05;
    double p_hoist = 0.05;
    double p_point = 0.05;  // remainder after the four = slot-copy reproduction
    int tournament_size = 10;
    int init_depth_min = 2, init_depth_max = 6;
    double const_lo = -1.0, const_hi = 1.0;
    double point_replace_prob = 0.05;
    double parsimony = 0.001;  // penalty per node on tournament fitness
    int max_depth = 17;        // offspring over this are rejected (parent copied)
    bool elitism = true;       // keep the single best program each generation
    int eval_workers = 1;

    void validate() const;  // throws ConfigError
};

struct RunResult {
    Program best;
    double train_nrmse = 0.0;
    double test_nrmse = 0.0;
    // Best-so-far raw train NRMSE: one entry after initialization plus one
    // per generation; non-increasing by construction.
    std::vector<double> trace;
    std::uint64_t seed = 0;
};

// Ramped half-and-half: depths cycle over [min,max], half grow / half full
// per depth; grow is forced to functions above depth init_depth_min so every
// tree lands in the configured depth range.
std::vector<Program> init_population(const GpConfig& cfg, std::size_t d, Rng& rng);
Program build_tree(bool full, int target_depth, const GpConfig& cfg, std::size_t d, Rng& rng);

// Index of the best (lowest penalized fitness) of `size` uniform draws with
// replacement; ties break to the smaller program, then the earlier draw.
std::size_t tournament_select(std::span<const double> penalized,
                              std::span<const Program> population, int size, Rng& rng);

Program replace_subtree(const Program& parent, std::size_t at, const Program& donor,
                        std::size_t donor_at);
Program subtree_crossover(const Program& parent, const Program& donor, Rng& rng);
Program subtree_mutation(const Program& p, const GpConfig& cfg, std::size_t d, Rng& rng);
Program hoist_mutation(const Program& p, Rng& rng);
Program point_mutation(const Program& p, const GpConfig& cfg, std::size_t d, Rng& rng);

// Generational GP: fitness = raw train NRMSE + parsimony * node count for
// selection, final result is the best raw-NRMSE program seen anywhere in the
// run, with its test NRMSE. Fully deterministic per seed.
RunResult evolve(const Dataset& train, const Dataset& test, const GpConfig& cfg,
                 std::uint64_t seed);

struct ProtocolResult {
    double median_train_nrmse = 0.0;
    double median_test_nrmse = 0.0;
    std::vector<RunResult> runs;
};

// One evolve() per (train, test) pair; run i uses the stream derived from
// (master_seed, i), so results are identical for any worker count.
ProtocolResult run_protocol(std::span<const std::pair<Dataset, Dataset>> pairs,
                            const GpConfig& cfg, std::uint64_t master_seed, int workers = 1);

} // namespace gpbench::gp
