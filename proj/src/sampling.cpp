#include "gpbench/sampling.hpp"

#include <cmath>

#include "gpbench/errors.hpp"
#include "gpbench/textio.hpp"

namespace gpbench {

SamplingSpec SamplingSpec::uniform(double lo, double hi, double count) {
    SamplingSpec s{SampleKind::Uniform, lo, hi, count};
    s.validate();
    return s;
}

SamplingSpec SamplingSpec::grid(double lo, double hi, double step) {
    SamplingSpec s{SampleKind::Grid, lo, hi, step};
    s.validate();
    return s;
}

SamplingSpec SamplingSpec::grid_points(double lo, double hi, std::size_t m) {
    if (m < 2)
        throw ConfigError("point-count grid needs at least 2 points");
    return grid(lo, hi, (hi - lo) / static_cast<double>(m - 1));
}

void SamplingSpec::validate() const {
    if (!(lo < hi))
        throw ConfigError("sampling bounds must satisfy a < b, got [" + format_double(lo) +
                          ", " + format_double(hi) + "]");
    if (kind == SampleKind::Uniform) {
        if (!(size >= 1.0) || size != std::trunc(size))
            throw ConfigError("uniform sample size must be a positive integer, got " +
                              format_double(size));
    } else {
        if (!(size > 0.0))
            throw ConfigError("grid step must be positive, got " + format_double(size));
    }
}

std::string SamplingSpec::to_string() const {
    return std::string(kind == SampleKind::Uniform ? "U[" : "E[") + format_double(lo) + "," +
           format_double(hi) + "," + format_double(size) + "]";
}

// Steps like 0.1 are not exactly representable, so (hi-lo)/step lands just
// under or just over an integer; the relative epsilon absorbs that drift.
std::size_t grid_point_count(const SamplingSpec& spec) {
    GPB_ENSURE(spec.kind == SampleKind::Grid, "grid_point_count on uniform spec");
    const double eps = 1e-9;
    const double ratio = (spec.hi - spec.lo) / spec.size;
    double k = std::floor(ratio * (1.0 + eps) + eps);
    if (k < 0.0)
        k = 0.0;
    return static_cast<std::size_t>(k) + 1;
}

std::vector<double> sample_uniform(const SamplingSpec& spec, Rng& rng) {
    GPB_ENSURE(spec.kind == SampleKind::Uniform, "sample_uniform on grid spec");
    spec.validate();
    std::vector<double> out(static_cast<std::size_t>(spec.size));
    for (double& v : out)
        v = rng.uniform(spec.lo, spec.hi);
    return out;
}

std::vector<double> sample_grid(const SamplingSpec& spec) {
    spec.validate();
    const std::size_t count = grid_point_count(spec);
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = spec.lo + static_cast<double>(i) * spec.size;
    return out;
}

std::size_t input_row_count(std::span<const SamplingSpec> specs) {
    std::size_t grid_rows = 1;
    bool has_grid = false;
    std::size_t uniform_rows = 0;
    bool has_uniform = false;
    for (const SamplingSpec& s : specs) {
        if (s.kind == SampleKind::Grid) {
            has_grid = true;
            grid_rows *= grid_point_count(s);
        } else {
            const auto c = static_cast<std::size_t>(s.size);
            if (has_uniform && c != uniform_rows)
                throw DataError("inconsistent uniform sizes across variables");
            has_uniform = true;
            uniform_rows = c;
        }
    }
    if (has_grid && has_uniform && uniform_rows != grid_rows)
        throw DataError("uniform size must match the grid product in a mixed spec list");
    return has_grid ? grid_rows : uniform_rows;
}

Matrix build_inputs(std::span<const SamplingSpec> specs, Rng& rng) {
    GPB_ENSURE(!specs.empty(), "build_inputs with no specs");
    for (const SamplingSpec& s : specs)
        s.validate();

    const std::size_t rows = input_row_count(specs);
    const std::size_t d = specs.size();
    Matrix m(rows, d);

    // Grid columns first: Cartesian expansion, last grid variable fastest.
    std::vector<std::vector<double>> grids(d);
    std::size_t suffix = 1;  // product of grid sizes to the right
    std::vector<std::size_t> stride(d, 0);
    for (std::size_t j = d; j-- > 0;) {
        if (specs[j].kind == SampleKind::Grid) {
            grids[j] = sample_grid(specs[j]);
            stride[j] = suffix;
            suffix *= grids[j].size();
        }
    }
    for (std::size_t j = 0; j < d; ++j) {
        if (specs[j].kind != SampleKind::Grid)
            continue;
        const auto& g = grids[j];
        for (std::size_t r = 0; r < rows; ++r)
            m.at(r, j) = g[(r / stride[j]) % g.size()];
    }

    // Uniform columns drawn one variable at a time, in variable order.
    for (std::size_t j = 0; j < d; ++j) {
        if (specs[j].kind != SampleKind::Uniform)
            continue;
        for (std::size_t r = 0; r < rows; ++r)
            m.at(r, j) = rng.uniform(specs[j].lo, specs[j].hi);
    }
    return m;
}

} // namespace gpbench
