#pragma once

#include <stdexcept>
#include <string>

namespace perispec {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range input (bad indices, wrong mode, bad JSON).
class InputError : public Error {
public:
    using Error::Error;
};

/// A denominator or pivot fell below the degeneracy tolerance: resonant
/// recurrence index, singular linear system, pole proximity.
class DegenerateError : public Error {
public:
    using Error::Error;
};

/// A recurrence needed an entry beyond the available truncation depth.
class TruncationError : public DegenerateError {
public:
    TruncationError(const std::string& what, int needed_depth)
        : DegenerateError(what), needed_depth_(needed_depth) {}
    int needed_depth() const noexcept { return needed_depth_; }

private:
    int needed_depth_;
};

/// An iterative truncation schedule did not settle within its cap.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Caller broke an operation's precondition (e.g. missing table entries).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace perispec
