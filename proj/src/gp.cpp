#include "gpbench/gp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gpbench/parallel.hpp"
#include "gpbench/stats.hpp"
#include "gpbench/textio.hpp"

namespace gpbench::gp {

namespace {

constexpr Op kFunctions[] = {Op::Add, Op::Sub, Op::Mul, Op::Aq, Op::Sqrt, Op::Sin};
constexpr Op kBinaryFunctions[] = {Op::Add, Op::Sub, Op::Mul, Op::Aq};
constexpr Op kUnaryFunctions[] = {Op::Sqrt, Op::Sin};
constexpr std::size_t kFunctionCount = 6;

inline double clamp_value(double v) {
    if (v > kValueCap)
        return kValueCap;
    if (v < -kValueCap)
        return -kValueCap;
    return v;
}

} // namespace

int op_arity(Op op) {
    switch (op) {
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Aq:
        return 2;
    case Op::Sqrt:
    case Op::Sin:
        return 1;
    case Op::Var:
    case Op::Const:
        return 0;
    }
    return 0;
}

std::string_view op_name(Op op) {
    switch (op) {
    case Op::Add: return "add";
    case Op::Sub: return "sub";
    case Op::Mul: return "mul";
    case Op::Aq: return "aq";
    case Op::Sqrt: return "sqrt";
    case Op::Sin: return "sin";
    case Op::Var: return "var";
    case Op::Const: return "const";
    }
    return "?";
}

std::size_t Program::subtree_end(std::size_t i) const {
    GPB_ENSURE(i < nodes.size(), "subtree_end out of range");
    std::size_t end = i;
    long long needed = 1;
    while (needed > 0) {
        GPB_ENSURE(end < nodes.size(), "truncated program");
        needed += op_arity(nodes[end].op) - 1;
        ++end;
    }
    return end;
}

int Program::max_var() const {
    int m = -1;
    for (const GpNode& n : nodes)
        if (n.op == Op::Var && static_cast<int>(n.var) > m)
            m = n.var;
    return m;
}

namespace {

int prefix_depth(const std::vector<GpNode>& nodes) {
    int max_depth = 0;
    std::vector<int> remaining;
    for (const GpNode& n : nodes) {
        max_depth = std::max(max_depth, static_cast<int>(remaining.size()));
        const int arity = op_arity(n.op);
        if (arity > 0) {
            remaining.push_back(arity);
        } else {
            while (!remaining.empty()) {
                if (--remaining.back() > 0)
                    break;
                remaining.pop_back();
            }
        }
    }
    return max_depth;
}

bool valid_prefix(const std::vector<GpNode>& nodes) {
    if (nodes.empty())
        return false;
    long long needed = 1;
    for (const GpNode& n : nodes) {
        if (needed <= 0)
            return false;
        needed += op_arity(n.op) - 1;
    }
    return needed == 0;
}

} // namespace

void Program::refresh_depth() {
    depth = prefix_depth(nodes);
}

bool Program::validate(std::size_t d) const {
    if (!valid_prefix(nodes))
        return false;
    if (max_var() >= static_cast<int>(d))
        return false;
    for (const GpNode& n : nodes)
        if (n.op == Op::Const && !std::isfinite(n.value))
            return false;
    return depth == prefix_depth(nodes);
}

bool Program::operator==(const Program& other) const {
    if (depth != other.depth || nodes.size() != other.nodes.size())
        return false;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const GpNode& a = nodes[i];
        const GpNode& b = other.nodes[i];
        if (a.op != b.op || a.var != b.var || a.value != b.value)
            return false;
    }
    return true;
}

namespace {

std::string render_expression(const std::vector<GpNode>& nodes, std::size_t& pos) {
    const GpNode& n = nodes[pos++];
    switch (n.op) {
    case Op::Var:
        return "x" + std::to_string(n.var + 1);
    case Op::Const: {
        const std::string s = format_double(n.value);
        return n.value < 0 ? "(" + s + ")" : s;
    }
    case Op::Sqrt:
        // protected sqrt evaluates sqrt(|a|)
        return "sqrt(abs(" + render_expression(nodes, pos) + "))";
    case Op::Sin:
        return "sin(" + render_expression(nodes, pos) + ")";
    case Op::Add: {
        std::string a = render_expression(nodes, pos);
        std::string b = render_expression(nodes, pos);
        return "(" + a + "+" + b + ")";
    }
    case Op::Sub: {
        std::string a = render_expression(nodes, pos);
        std::string b = render_expression(nodes, pos);
        return "(" + a + "-" + b + ")";
    }
    case Op::Mul: {
        std::string a = render_expression(nodes, pos);
        std::string b = render_expression(nodes, pos);
        return "(" + a + "*" + b + ")";
    }
    case Op::Aq: {
        std::string a = render_expression(nodes, pos);
        std::string b = render_expression(nodes, pos);
        return "(" + a + "/sqrt(1+(" + b + ")^2))";
    }
    }
    return "?";
}

} // namespace

std::string Program::to_expression() const {
    GPB_ENSURE(valid_prefix(nodes), "cannot render an invalid program");
    std::size_t pos = 0;
    return render_expression(nodes, pos);
}

namespace {

constexpr std::size_t kEvalChunk = 4096;

void eval_chunk(const Program& p, const Matrix& x, std::size_t row0, std::size_t len,
                std::span<double> out, EvalScratch& scratch) {
    std::size_t sp = 0;
    auto buffer = [&](std::size_t slot) -> std::vector<double>& {
        if (scratch.stack.size() <= slot)
            scratch.stack.resize(slot + 1);
        scratch.stack[slot].resize(len);
        return scratch.stack[slot];
    };

    // Reversed prefix order behaves like postfix with the left operand on
    // top of the stack.
    for (std::size_t k = p.nodes.size(); k-- > 0;) {
        const GpNode& n = p.nodes[k];
        switch (n.op) {
        case Op::Const: {
            auto& b = buffer(sp++);
            std::fill(b.begin(), b.end(), clamp_value(n.value));
            break;
        }
        case Op::Var: {
            auto& b = buffer(sp++);
            for (std::size_t r = 0; r < len; ++r)
                b[r] = clamp_value(x.at(row0 + r, n.var));
            break;
        }
        case Op::Sqrt: {
            auto& b = scratch.stack[sp - 1];
            for (std::size_t r = 0; r < len; ++r)
                b[r] = std::sqrt(std::abs(b[r]));
            break;
        }
        case Op::Sin: {
            auto& b = scratch.stack[sp - 1];
            for (std::size_t r = 0; r < len; ++r)
                b[r] = std::sin(b[r]);
            break;
        }
        case Op::Add: {
            auto& lhs = scratch.stack[sp - 1];
            auto& rhs = scratch.stack[sp - 2];
            for (std::size_t r = 0; r < len; ++r)
                rhs[r] = clamp_value(lhs[r] + rhs[r]);
            --sp;
            break;
        }
        case Op::Sub: {
            auto& lhs = scratch.stack[sp - 1];
            auto& rhs = scratch.stack[sp - 2];
            for (std::size_t r = 0; r < len; ++r)
                rhs[r] = clamp_value(lhs[r] - rhs[r]);
            --sp;
            break;
        }
        case Op::Mul: {
            auto& lhs = scratch.stack[sp - 1];
            auto& rhs = scratch.stack[sp - 2];
            for (std::size_t r = 0; r < len; ++r)
                rhs[r] = clamp_value(lhs[r] * rhs[r]);
            --sp;
            break;
        }
        case Op::Aq: {
            auto& lhs = scratch.stack[sp - 1];
            auto& rhs = scratch.stack[sp - 2];
            for (std::size_t r = 0; r < len; ++r)
                rhs[r] = aq(lhs[r], rhs[r]);
            --sp;
            break;
        }
        }
    }
    GPB_ENSURE(sp == 1, "evaluation stack not balanced");
    const auto& result = scratch.stack[0];
    for (std::size_t r = 0; r < len; ++r) {
        GPB_ENSURE(std::isfinite(result[r]), "non-finite program output");
        out[row0 + r] = result[r];
    }
}

} // namespace

void eval_program(const Program& p, const Matrix& x, std::span<double> out,
                  EvalScratch& scratch) {
    GPB_ENSURE(out.size() == x.rows, "output size must match row count");
    GPB_ENSURE(p.max_var() < static_cast<int>(x.cols), "program references missing variable");
    for (std::size_t row0 = 0; row0 < x.rows; row0 += kEvalChunk)
        eval_chunk(p, x, row0, std::min(kEvalChunk, x.rows - row0), out, scratch);
}

std::vector<double> eval_program(const Program& p, const Matrix& x) {
    std::vector<double> out(x.rows);
    EvalScratch scratch;
    eval_program(p, x, out, scratch);
    return out;
}

double nrmse(std::span<const double> pred, std::span<const double> y) {
    GPB_ENSURE(pred.size() == y.size(), "nrmse length mismatch");
    if (y.size() < 2)
        throw DataError("nrmse needs at least 2 values");
    const double ym = mean(y);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double e = y[i] - pred[i];
        num += e * e;
    }
    for (double v : y) {
        const double d = v - ym;
        den += d * d;
    }
    if (den == 0.0)
        throw DataError("nrmse undefined: target variance is zero");
    return std::sqrt(num / den);
}

void GpConfig::validate() const {
    if (population_size < 1)
        throw ConfigError("population size must be >= 1");
    if (generations < 0)
        throw ConfigError("generations must be >= 0");
    auto check_prob = [](double p, const char* what) {
        if (p < 0.0 || p > 1.0)
            throw ConfigError(std::string(what) + " must be in [0,1]");
    };
    check_prob(p_crossover, "crossover probability");
    check_prob(p_subtree, "subtree mutation probability");
    check_prob(p_hoist, "hoist mutation probability");
    check_prob(p_point, "point mutation probability");
    check_prob(point_replace_prob, "point replace probability");
    if (p_crossover + p_subtree + p_hoist + p_point > 1.0 + 1e-12)
        throw ConfigError("operator probabilities must sum to at most 1");
    if (tournament_size < 1)
        throw ConfigError("tournament size must be >= 1");
    if (init_depth_min < 0 || init_depth_max < init_depth_min)
        throw ConfigError("bad init depth range");
    if (!(const_lo <= const_hi))
        throw ConfigError("bad constant range");
    if (parsimony < 0.0)
        throw ConfigError("parsimony coefficient must be >= 0");
    if (max_depth < init_depth_max)
        throw ConfigError("max depth must cover the init depth range");
}

namespace {

void build_node(std::vector<GpNode>& nodes, int depth, bool full, int target,
                const GpConfig& cfg, std::size_t d, Rng& rng) {
    bool pick_function;
    if (depth >= target) {
        pick_function = false;
    } else if (full || depth < cfg.init_depth_min) {
        pick_function = true;
    } else {
        const double p_func =
            static_cast<double>(kFunctionCount) / (kFunctionCount + static_cast<double>(d) + 1.0);
        pick_function = rng.uniform01() < p_func;
    }

    if (pick_function) {
        const Op op = kFunctions[rng.uniform_int(kFunctionCount)];
        GpNode node;
        node.op = op;
        nodes.push_back(node);
        for (int a = 0; a < op_arity(op); ++a)
            build_node(nodes, depth + 1, full, target, cfg, d, rng);
        return;
    }

    // Terminal: uniform over the d variables plus one ephemeral-constant slot.
    const std::uint64_t pick = rng.uniform_int(d + 1);
    GpNode node;
    if (pick < d) {
        node.op = Op::Var;
        node.var = static_cast<std::uint16_t>(pick);
    } else {
        node.op = Op::Const;
        node.value = rng.uniform(cfg.const_lo, cfg.const_hi);
    }
    nodes.push_back(node);
}

} // namespace

Program build_tree(bool full, int target_depth, const GpConfig& cfg, std::size_t d, Rng& rng) {
    Program p;
    build_node(p.nodes, 0, full, target_depth, cfg, d, rng);
    p.refresh_depth();
    return p;
}

std::vector<Program> init_population(const GpConfig& cfg, std::size_t d, Rng& rng) {
    GPB_ENSURE(d >= 1, "init_population needs at least one variable");
    const int levels = cfg.init_depth_max - cfg.init_depth_min + 1;
    std::vector<Program> pop(static_cast<std::size_t>(cfg.population_size));
    for (int i = 0; i < cfg.population_size; ++i) {
        // Cycle (depth, method) combos: full/grow alternate within each level.
        const int combo = i % (2 * levels);
        const int depth = cfg.init_depth_min + combo / 2;
        const bool full = combo % 2 == 0;
        pop[static_cast<std::size_t>(i)] = build_tree(full, depth, cfg, d, rng);
    }
    return pop;
}

std::size_t tournament_select(std::span<const double> penalized,
                              std::span<const Program> population, int size, Rng& rng) {
    GPB_ENSURE(!population.empty(), "tournament over empty population");
    GPB_ENSURE(penalized.size() == population.size(), "fitness/population size mismatch");
    std::size_t best = rng.uniform_int(population.size());
    for (int t = 1; t < size; ++t) {
        const std::size_t cand = rng.uniform_int(population.size());
        if (penalized[cand] < penalized[best] ||
            (penalized[cand] == penalized[best] &&
             population[cand].size() < population[best].size()))
            best = cand;
    }
    return best;
}

Program replace_subtree(const Program& parent, std::size_t at, const Program& donor,
                        std::size_t donor_at) {
    const std::size_t p_end = parent.subtree_end(at);
    const std::size_t d_end = donor.subtree_end(donor_at);
    Program out;
    out.nodes.reserve(parent.size() - (p_end - at) + (d_end - donor_at));
    out.nodes.insert(out.nodes.end(), parent.nodes.begin(),
                     parent.nodes.begin() + static_cast<std::ptrdiff_t>(at));
    out.nodes.insert(out.nodes.end(), donor.nodes.begin() + static_cast<std::ptrdiff_t>(donor_at),
                     donor.nodes.begin() + static_cast<std::ptrdiff_t>(d_end));
    out.nodes.insert(out.nodes.end(), parent.nodes.begin() + static_cast<std::ptrdiff_t>(p_end),
                     parent.nodes.end());
    out.refresh_depth();
    return out;
}

Program subtree_crossover(const Program& parent, const Program& donor, Rng& rng) {
    const std::size_t at = rng.uniform_int(parent.size());
    const std::size_t donor_at = rng.uniform_int(donor.size());
    return replace_subtree(parent, at, donor, donor_at);
}

Program subtree_mutation(const Program& p, const GpConfig& cfg, std::size_t d, Rng& rng) {
    const int levels = cfg.init_depth_max - cfg.init_depth_min + 1;
    const int target = cfg.init_depth_min + static_cast<int>(rng.uniform_int(levels));
    const Program fresh = build_tree(false, target, cfg, d, rng);
    const std::size_t at = rng.uniform_int(p.size());
    return replace_subtree(p, at, fresh, 0);
}

Program hoist_mutation(const Program& p, Rng& rng) {
    const std::size_t at = rng.uniform_int(p.size());
    const std::size_t end = p.subtree_end(at);
    const std::size_t inner = at + rng.uniform_int(end - at);
    return replace_subtree(p, at, p, inner);
}

Program point_mutation(const Program& p, const GpConfig& cfg, std::size_t d, Rng& rng) {
    Program out = p;
    for (GpNode& n : out.nodes) {
        if (rng.uniform01() >= cfg.point_replace_prob)
            continue;
        switch (op_arity(n.op)) {
        case 2:
            n.op = kBinaryFunctions[rng.uniform_int(4)];
            break;
        case 1:
            n.op = kUnaryFunctions[rng.uniform_int(2)];
            break;
        default: {
            const std::uint64_t pick = rng.uniform_int(d + 1);
            if (pick < d) {
                n = GpNode{Op::Var, static_cast<std::uint16_t>(pick), 0.0};
            } else {
                n = GpNode{Op::Const, 0, rng.uniform(cfg.const_lo, cfg.const_hi)};
            }
            break;
        }
        }
    }
    // Arities unchanged, so structure and depth are intact.
    return out;
}

RunResult evolve(const Dataset& train, const Dataset& test, const GpConfig& cfg,
                 std::uint64_t seed) {
    cfg.validate();
    GPB_ENSURE(train.d() == test.d(), "train/test variable counts differ");
    {
        const double ym = mean(train.y);
        double var = 0.0;
        for (double v : train.y)
            var += (v - ym) * (v - ym);
        if (var == 0.0)
            throw DataError(train.name + ": training target has zero variance");
    }

    Rng rng(seed);
    const std::size_t d = train.d();
    std::vector<Program> pop = init_population(cfg, d, rng);

    std::vector<double> raw(pop.size()), penalized(pop.size());
    auto evaluate = [&](const std::vector<Program>& programs) {
        parallel_for(programs.size(), cfg.eval_workers, [&](std::size_t i) {
            thread_local EvalScratch scratch;
            thread_local std::vector<double> pred;
            pred.resize(train.n());
            eval_program(programs[i], train.x, pred, scratch);
            double r = nrmse(pred, train.y);
            if (!std::isfinite(r))
                r = std::numeric_limits<double>::max();
            raw[i] = r;
            penalized[i] = r + cfg.parsimony * static_cast<double>(programs[i].size());
        });
    };

    Program best_program;
    double best_raw = std::numeric_limits<double>::infinity();
    auto consider = [&](const Program& p, double r) {
        if (r < best_raw || (r == best_raw && p.size() < best_program.size())) {
            best_raw = r;
            best_program = p;
        }
    };

    evaluate(pop);
    for (std::size_t i = 0; i < pop.size(); ++i)
        consider(pop[i], raw[i]);

    RunResult result;
    result.seed = seed;
    result.trace.reserve(static_cast<std::size_t>(cfg.generations) + 1);
    result.trace.push_back(best_raw);

    const double c1 = cfg.p_crossover;
    const double c2 = c1 + cfg.p_subtree;
    const double c3 = c2 + cfg.p_hoist;
    const double c4 = c3 + cfg.p_point;

    for (int gen = 0; gen < cfg.generations; ++gen) {
        std::vector<Program> next(pop.size());
        for (std::size_t i = 0; i < pop.size(); ++i) {
            const double u = rng.uniform01();
            Program child;
            const Program* parent;
            if (u < c1) {
                parent = &pop[tournament_select(penalized, pop, cfg.tournament_size, rng)];
                const Program& donor =
                    pop[tournament_select(penalized, pop, cfg.tournament_size, rng)];
                child = subtree_crossover(*parent, donor, rng);
            } else if (u < c2) {
                parent = &pop[tournament_select(penalized, pop, cfg.tournament_size, rng)];
                child = subtree_mutation(*parent, cfg, d, rng);
            } else if (u < c3) {
                parent = &pop[tournament_select(penalized, pop, cfg.tournament_size, rng)];
                child = hoist_mutation(*parent, rng);
            } else if (u < c4) {
                parent = &pop[tournament_select(penalized, pop, cfg.tournament_size, rng)];
                child = point_mutation(*parent, cfg, d, rng);
            } else {
                // Reproduction copies the slot unchanged, so with all
                // variation probabilities zero the population is invariant.
                parent = &pop[i];
                child = pop[i];
            }
            if (child.depth > cfg.max_depth)
                child = *parent;
            next[i] = std::move(child);
        }
        pop = std::move(next);
        evaluate(pop);

        if (cfg.elitism) {
            std::size_t worst = 0;
            for (std::size_t i = 1; i < pop.size(); ++i)
                if (penalized[i] > penalized[worst])
                    worst = i;
            pop[worst] = best_program;
            raw[worst] = best_raw;
            penalized[worst] =
                best_raw + cfg.parsimony * static_cast<double>(best_program.size());
        }
        for (std::size_t i = 0; i < pop.size(); ++i)
            consider(pop[i], raw[i]);
        result.trace.push_back(best_raw);
    }

    result.best = best_program;
    result.train_nrmse = best_raw;
    std::vector<double> pred(test.n());
    EvalScratch scratch;
    eval_program(best_program, test.x, pred, scratch);
    result.test_nrmse = nrmse(pred, test.y);
    return result;
}

ProtocolResult run_protocol(std::span<const std::pair<Dataset, Dataset>> pairs,
                            const GpConfig& cfg, std::uint64_t master_seed, int workers) {
    GPB_ENSURE(!pairs.empty(), "run_protocol needs at least one pair");
    GpConfig run_cfg = cfg;
    run_cfg.eval_workers = 1;  // parallelism at run granularity only

    ProtocolResult out;
    out.runs.resize(pairs.size());
    std::vector<std::string> errors(pairs.size());
    parallel_for(pairs.size(), workers, [&](std::size_t i) {
        try {
            out.runs[i] = evolve(pairs[i].first, pairs[i].second, run_cfg,
                                 Rng::derive_seed(master_seed, i));
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });
    for (std::size_t i = 0; i < errors.size(); ++i)
        if (!errors[i].empty())
            throw DataError("run " + std::to_string(i) + " failed: " + errors[i]);

    std::vector<double> train_values, test_values;
    train_values.reserve(out.runs.size());
    test_values.reserve(out.runs.size());
    for (const RunResult& r : out.runs) {
        train_values.push_back(r.train_nrmse);
        test_values.push_back(r.test_nrmse);
    }
    out.median_train_nrmse = median(std::move(train_values));
    out.median_test_nrmse = median(std::move(test_values));
    return out;
}

} // namespace gpbench::gp
