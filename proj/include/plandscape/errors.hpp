#pragma once

#include <stdexcept>

namespace plandscape {

// Invalid parameter values, range violations, malformed input. The CLI maps
// this to exit code 2 and the message names the offending field.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Filesystem failures. The CLI maps this to exit code 1.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace plandscape
