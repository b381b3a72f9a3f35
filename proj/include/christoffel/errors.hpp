#pragma once

#include <stdexcept>
#include <string>

namespace christoffel {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid argument or precondition violation (bad resolution, k out of range, ...).
class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& what) : Error(what) {}
};

/// A field violates a positivity/evenness requirement of the operation.
class FieldConstraintError : public Error {
public:
    explicit FieldConstraintError(const std::string& what) : Error(what) {}
};

/// Solver failures: Newton divergence, backtracking exhaustion, continuation stall.
class SolveError : public Error {
public:
    explicit SolveError(const std::string& what) : Error(what) {}
};

/// Inner linear solve did not reach the requested tolerance.
class LinearSolveError : public SolveError {
public:
    explicit LinearSolveError(const std::string& what) : SolveError(what) {}
};

/// Config / expression / CSV parse errors; carries 1-based position where known.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line, int column)
        : Error(what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
          line_(line), column_(column) {}
    explicit ParseError(const std::string& what) : Error(what), line_(0), column_(0) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// Filesystem failures on artifact output.
class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(what) {}
};

} // namespace christoffel
