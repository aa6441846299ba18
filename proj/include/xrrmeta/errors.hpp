#pragma once

#include <stdexcept>

namespace xrrmeta {

// bad input data or configuration (CLI exit code 2)
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// computation cannot proceed (CLI exit code 3)
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace xrrmeta
