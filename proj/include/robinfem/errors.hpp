#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace robinfem {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

class DegenerateProjection : public Error {
public:
    using Error::Error;
};

class NotOnBoundary : public Error {
public:
    using Error::Error;
};

class NonManifoldMesh : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class FormatError : public Error {
public:
    FormatError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class UnsupportedOrder : public Error {
public:
    using Error::Error;
};

class ArityMismatch : public Error {
public:
    using Error::Error;
};

class SchemeMismatch : public Error {
public:
    using Error::Error;
};

class MissingExactSolution : public Error {
public:
    using Error::Error;
};

/// Base of the two solver failures; the CLI maps these to exit code 2.
class SolverError : public Error {
public:
    using Error::Error;
};

class NotConverged : public SolverError {
public:
    NotConverged(const std::string& what, std::vector<double> history)
        : SolverError(what), history_(std::move(history)) {}

    /// Relative residual after each iteration.
    const std::vector<double>& residual_history() const noexcept { return history_; }

private:
    std::vector<double> history_;
};

class IndefiniteMatrix : public SolverError {
public:
    using SolverError::SolverError;
};

class TooLarge : public Error {
public:
    using Error::Error;
};

class DegenerateSequence : public Error {
public:
    using Error::Error;
};

} // namespace robinfem
