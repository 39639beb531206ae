#pragma once

#include <stdexcept>
#include <string>

namespace schurchan {

// Malformed input: bad staircase, wrong shape, inadmissible triple.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A configured dense-dimension or desk-scale cap would be exceeded.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A construction-time numerical assertion failed.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

// A Choi matrix carries mass outside the symmetric block structure.
struct NotSymmetricError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace schurchan
