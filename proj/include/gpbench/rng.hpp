#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <string_view>

#include "gpbench/errors.hpp"

namespace gpbench {

// 64-bit FNV-1a. Folds names into seed material and hashes config strings.
constexpr std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// All randomness flows through this wrapper: mt19937_64 plus fixed mappings
// to reals/integers, so streams do not depend on the standard library's
// distribution implementations and are reproducible everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : root_(seed), gen_(splitmix64(seed)) {}

    std::uint64_t root_seed() const { return root_; }

    // Uniform in [0,1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Unbiased integer in [0, n).
    std::uint64_t uniform_int(std::uint64_t n) {
        GPB_ENSURE(n > 0, "uniform_int bound must be positive");
        const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
        const std::uint64_t limit = max - max % n;
        std::uint64_t x = gen_();
        while (x >= limit)
            x = gen_();
        return x % n;
    }

    std::uint64_t next() { return gen_(); }

    // Independent child stream. Depends only on (root seed, tag), not on how
    // much of this stream has been consumed.
    static std::uint64_t derive_seed(std::uint64_t root, std::uint64_t tag) {
        return splitmix64(root ^ splitmix64(tag));
    }
    static std::uint64_t derive_seed(std::uint64_t root, std::string_view name) {
        return derive_seed(root, fnv1a(name));
    }
    Rng derive(std::uint64_t tag) const { return Rng(derive_seed(root_, tag)); }
    Rng derive(std::string_view name) const { return Rng(derive_seed(root_, name)); }

private:
    std::uint64_t root_;
    std::mt19937_64 gen_;
};

} // namespace gpbench
