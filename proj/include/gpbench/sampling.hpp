#pragma once

#include <span>
#include <vector>

#include "gpbench/linalg.hpp"
#include "gpbench/rng.hpp"

namespace gpbench {

enum class SampleKind { Uniform, Grid };

// U[a,b,c]: c i.i.d. uniform draws from [a,b].
// E[a,b,c]: the grid a, a+c, a+2c, ... up to b inclusive (c is the step).
struct SamplingSpec {
    SampleKind kind{};
    double lo = 0.0, hi = 0.0;
    double size = 0.0;  // Uniform: count; Grid: step

    static SamplingSpec uniform(double lo, double hi, double count);
    static SamplingSpec grid(double lo, double hi, double step);
    // m evenly spaced points including both endpoints; lowers to a Grid with
    // step (hi-lo)/(m-1).
    static SamplingSpec grid_points(double lo, double hi, std::size_t m);

    void validate() const;  // throws ConfigError
    std::string to_string() const;
};

// Closed-form grid cardinality: floor((hi-lo)/step) + 1 with a relative
// tolerance absorbing the fp error of steps like 0.1.
std::size_t grid_point_count(const SamplingSpec& spec);

std::vector<double> sample_uniform(const SamplingSpec& spec, Rng& rng);
std::vector<double> sample_grid(const SamplingSpec& spec);

// One spec per variable. Uniform specs yield independent columns and must
// share one count; grid specs expand to the Cartesian product of the
// per-variable grids (the last grid variable varies fastest). When both kinds
// appear, the uniform count must equal the grid product.
Matrix build_inputs(std::span<const SamplingSpec> specs, Rng& rng);

// Conceptual row count of build_inputs without materializing anything.
std::size_t input_row_count(std::span<const SamplingSpec> specs);

} // namespace gpbench
