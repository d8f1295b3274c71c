#include "gpbench/splits.hpp"

#include <algorithm>

#include "gpbench/errors.hpp"
#include "gpbench/rng.hpp"

namespace gpbench {

SplitPlan SplitPlan::cross_validation(int folds, int repetitions) {
    SplitPlan p;
    p.kind = Kind::CrossValidation;
    p.folds = folds;
    p.repetitions = repetitions;
    return p;
}

SplitPlan SplitPlan::fixed_repeats(int m) {
    SplitPlan p;
    p.kind = Kind::FixedRepeats;
    p.repeats = m;
    return p;
}

int SplitPlan::pair_count() const {
    return kind == Kind::CrossValidation ? folds * repetitions : repeats;
}

namespace {

Dataset take_rows(const Dataset& ds, const std::vector<std::size_t>& idx, Role role) {
    Dataset out;
    out.name = ds.name;
    out.provenance = ds.provenance;
    out.role = role;
    out.feature_names = ds.feature_names;
    out.categorical_levels = ds.categorical_levels;
    out.raw_d = ds.raw_d;
    out.x = Matrix(idx.size(), ds.d());
    out.y.resize(idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r) {
        for (std::size_t c = 0; c < ds.d(); ++c)
            out.x.at(r, c) = ds.x.at(idx[r], c);
        out.y[r] = ds.y[idx[r]];
    }
    return out;
}

} // namespace

std::vector<std::pair<Dataset, Dataset>> make_splits(const Dataset& full, const SplitPlan& plan,
                                                     std::uint64_t seed) {
    if (plan.kind == SplitPlan::Kind::FixedRepeats)
        throw ConfigError("FixedRepeats needs an explicit (train, test) pair");
    const std::size_t n = full.n();
    const auto k = static_cast<std::size_t>(plan.folds);
    if (n < k)
        throw DataError(full.name + ": fewer rows than folds");

    std::vector<std::pair<Dataset, Dataset>> out;
    out.reserve(static_cast<std::size_t>(plan.pair_count()));
    const Rng base(seed);
    for (int rep = 0; rep < plan.repetitions; ++rep) {
        Rng rng = base.derive(static_cast<std::uint64_t>(rep));
        std::vector<std::size_t> perm(n);
        for (std::size_t i = 0; i < n; ++i)
            perm[i] = i;
        for (std::size_t i = n; i > 1; --i)
            std::swap(perm[i - 1], perm[rng.uniform_int(i)]);

        // Near-equal folds: the first n mod k folds take one extra row.
        const std::size_t base_size = n / k;
        const std::size_t extra = n % k;
        std::size_t offset = 0;
        std::vector<std::vector<std::size_t>> folds(k);
        for (std::size_t f = 0; f < k; ++f) {
            const std::size_t size = base_size + (f < extra ? 1 : 0);
            folds[f].assign(perm.begin() + offset, perm.begin() + offset + size);
            std::sort(folds[f].begin(), folds[f].end());
            offset += size;
        }

        for (std::size_t f = 0; f < k; ++f) {
            std::vector<std::size_t> train_idx;
            train_idx.reserve(n - folds[f].size());
            for (std::size_t g = 0; g < k; ++g)
                if (g != f)
                    train_idx.insert(train_idx.end(), folds[g].begin(), folds[g].end());
            std::sort(train_idx.begin(), train_idx.end());
            out.emplace_back(take_rows(full, train_idx, Role::Train),
                             take_rows(full, folds[f], Role::Test));
        }
    }
    return out;
}

std::vector<std::pair<Dataset, Dataset>> make_splits(const Dataset& train, const Dataset& test,
                                                     const SplitPlan& plan) {
    if (plan.kind != SplitPlan::Kind::FixedRepeats)
        throw ConfigError("cross-validation starts from a single full dataset");
    std::vector<std::pair<Dataset, Dataset>> out;
    out.reserve(static_cast<std::size_t>(plan.repeats));
    for (int i = 0; i < plan.repeats; ++i)
        out.emplace_back(train, test);
    return out;
}

} // namespace gpbench
