#pragma once

#include <stdexcept>
#include <string>

namespace flowlab {

/// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Non-finite or otherwise corrupt numerical data.
struct data_error : error {
    using error::error;
};

/// Input outside the mathematical domain of an operation (cone violations,
/// out-of-range radii, unsupported flow/ambient combinations).
struct domain_error : error {
    using error::error;
};

/// Configuration file problem, with source location.
struct config_error : error {
    config_error(const std::string& msg, int line, int col)
        : error(msg + " (line " + std::to_string(line) + ", column " + std::to_string(col) + ")"),
          line(line),
          col(col) {}
    int line = 0;
    int col = 0;
};

}  // namespace flowlab
