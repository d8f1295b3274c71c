#pragma once

#include <stdexcept>
#include <string>

namespace gpbench {

// Bad flags, bad manifest values, invalid parameter combinations. Exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Problems with input data: missing files, malformed CSV, unrepairable
// domain violations. Exit code 3.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A broken internal invariant. Exit code 4.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

#define GPB_ENSURE(cond, msg)                                                              \
    do {                                                                                   \
        if (!(cond))                                                                       \
            throw ::gpbench::InternalError(std::string("invariant failed: ") + (msg));     \
    } while (0)

} // namespace gpbench
