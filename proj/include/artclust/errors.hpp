#pragma once

#include <stdexcept>
#include <string>

namespace artclust {

/// Bad parameter values, malformed configuration files, impossible requests.
/// The CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Problems with dataset content: missing columns, empty datasets, rows that
/// cannot be interpreted. Exit code 3.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Filesystem failures: unreadable input, unwritable output. Exit code 4.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Vector width does not match what the consumer was built for.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An all-zero input vector reached a computation whose match ratio would
/// divide by zero.
struct ZeroInputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Read-only assignment was requested from a network that has no categories.
struct NoCategoriesError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace artclust
