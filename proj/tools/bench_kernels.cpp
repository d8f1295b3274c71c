// Timing harness for the OpenMP kernels against their serial reference.
// Every kernel writes results by index, so the parallel output must be
// bit-identical to the serial one; the harness verifies that too.

#include <chrono>
#include <cstdio>
#include <vector>

#include "gpbench/catalog.hpp"
#include "gpbench/forest.hpp"
#include "gpbench/gp.hpp"
#include "gpbench/parallel.hpp"
#include "gpbench/splits.hpp"

using namespace gpbench;

namespace {

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

struct Timing {
    double serial_ms = 0;
    double parallel_ms = 0;
    bool identical = false;
};

void report(const char* name, const Timing& t, int workers) {
    std::printf("%-28s serial %9.1f ms   omp(%d) %9.1f ms   speedup %5.2fx   identical: %s\n",
                name, t.serial_ms, workers, t.parallel_ms, t.serial_ms / t.parallel_ms,
                t.identical ? "yes" : "NO");
}

Timing bench_population_eval(const Dataset& train, int workers) {
    gp::GpConfig cfg;
    cfg.population_size = 512;
    Rng rng(7);
    const auto pop = gp::init_population(cfg, train.d(), rng);

    auto eval_all = [&](int w, std::vector<double>& fitness) {
        parallel_for(pop.size(), w, [&](std::size_t i) {
            thread_local gp::EvalScratch scratch;
            thread_local std::vector<double> pred;
            pred.resize(train.n());
            gp::eval_program(pop[i], train.x, pred, scratch);
            fitness[i] = gp::nrmse(pred, train.y);
        });
    };

    Timing t;
    std::vector<double> serial(pop.size()), parallel(pop.size());
    double t0 = now_ms();
    for (int rep = 0; rep < 5; ++rep)
        eval_all(1, serial);
    t.serial_ms = (now_ms() - t0) / 5;
    t0 = now_ms();
    for (int rep = 0; rep < 5; ++rep)
        eval_all(workers, parallel);
    t.parallel_ms = (now_ms() - t0) / 5;
    t.identical = serial == parallel;
    return t;
}

Timing bench_forest(int workers) {
    Rng rng(11);
    Matrix x(400, 11);
    std::vector<double> y(400);
    for (std::size_t r = 0; r < x.rows; ++r) {
        for (std::size_t c = 0; c < x.cols; ++c)
            x.at(r, c) = rng.uniform(-1, 1);
        y[r] = x.at(r, 3) + 0.5 * x.at(r, 7) + 0.1 * rng.uniform(-1, 1);
    }
    ForestOptions serial_opts, parallel_opts;
    serial_opts.workers = 1;
    parallel_opts.workers = workers;

    Timing t;
    double t0 = now_ms();
    const ForestModel serial = fit_forest(x, y, 42, serial_opts);
    t.serial_ms = now_ms() - t0;
    t0 = now_ms();
    const ForestModel parallel = fit_forest(x, y, 42, parallel_opts);
    t.parallel_ms = now_ms() - t0;
    t.identical = serial.importances == parallel.importances;
    return t;
}

Timing bench_protocol(const Dataset& train, const Dataset& test, int workers) {
    gp::GpConfig cfg;
    cfg.population_size = 100;
    cfg.generations = 5;
    const auto pairs = make_splits(train, test, SplitPlan::fixed_repeats(8));

    Timing t;
    double t0 = now_ms();
    const auto serial = gp::run_protocol(pairs, cfg, 99, 1);
    t.serial_ms = now_ms() - t0;
    t0 = now_ms();
    const auto parallel = gp::run_protocol(pairs, cfg, 99, workers);
    t.parallel_ms = now_ms() - t0;
    t.identical = serial.median_test_nrmse == parallel.median_test_nrmse &&
                  serial.median_train_nrmse == parallel.median_train_nrmse;
    return t;
}

} // namespace

int main(int argc, char** argv) {
    int workers = hardware_workers();
    if (argc > 1)
        workers = std::atoi(argv[1]);
    if (workers < 2)
        workers = 2;
    std::printf("kernel benchmark: serial reference vs OpenMP, %d workers\n\n", workers);

    const BenchmarkDef* korns1 = builtin_catalog().find("Korns-1");
    const GeneratedPair pair = generate_benchmark(*korns1, 1234);

    report("population evaluation", bench_population_eval(pair.train, workers), workers);
    report("forest fit (120 trees)", bench_forest(workers), workers);
    report("protocol runs (8x GP)", bench_protocol(pair.train, pair.test, workers), workers);
    return 0;
}
