#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gpbench/dataset.hpp"

namespace gpbench {

// Real datasets: repeated k-fold cross-validation (defaults: 6 x 5-CV, 30
// pairs). Synthetic datasets: one fixed pair repeated m times; only the
// downstream run seeds vary.
struct SplitPlan {
    enum class Kind { CrossValidation, FixedRepeats };
    Kind kind = Kind::CrossValidation;
    int folds = 5;
    int repetitions = 6;
    int repeats = 30;

    static SplitPlan cross_validation(int folds = 5, int repetitions = 6);
    static SplitPlan fixed_repeats(int m = 30);
    int pair_count() const;
};

// Each repetition draws a fresh random partition into `folds` disjoint folds
// of near-equal size (the first n mod k folds take one extra row); every fold
// serves as the test set exactly once per repetition.
std::vector<std::pair<Dataset, Dataset>> make_splits(const Dataset& full, const SplitPlan& plan,
                                                     std::uint64_t seed);

// FixedRepeats over an existing (train, test) pair.
std::vector<std::pair<Dataset, Dataset>> make_splits(const Dataset& train, const Dataset& test,
                                                     const SplitPlan& plan);

} // namespace gpbench
