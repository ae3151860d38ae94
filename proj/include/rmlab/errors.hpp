#pragma once

#include <stdexcept>
#include <string>

namespace rmlab {

/// Base of every error raised by the library. Each subclass maps onto a
/// distinct process exit code in the CLI (see `exit_code`).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual int exit_code() const noexcept = 0;
};

/// Invalid or out-of-range input parameters.
class ParameterError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 3; }
};

/// Mathematically undefined evaluation (Weingarten pole, nonpositive
/// eigenvalue, degenerate samples).
class DomainError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 4; }
};

/// Requested inverse moment lies outside c < m - n + 1, where the
/// Weingarten formula does not apply.
class ConditionViolated : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 5; }
};

/// Iterative kernel failed to converge or bracket.
class NumericError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 6; }
};

/// Monte Carlo run produced no hits where at least one was needed.
class InsufficientTrials : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 7; }
};

class IoError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 8; }
};

} // namespace rmlab
