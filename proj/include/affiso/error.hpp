#pragma once

#include <stdexcept>
#include <string>

namespace affiso {

/// Raised when an argument violates a documented precondition
/// (bad grid size, non-convex body where convexity is required, ...).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when no translation makes a support function strictly positive.
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace affiso
