#pragma once

#include <stdexcept>
#include <string>

namespace sectional {

/// Malformed or unreadable input data (files, matrices, point clouds).
class input_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter outside the range an operation accepts.
class parameter_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An operation produced nothing to work with (empty graph, empty profile).
class empty_result_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A broken internal invariant. Seeing one of these is a bug.
class internal_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace sectional
