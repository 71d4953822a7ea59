#pragma once

#include <stdexcept>
#include <string>

namespace fleet {

/// Base class for data errors raised by the library. The CLI maps these to
/// exit code 2.
class FleetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidProblem : public FleetError {
public:
    using FleetError::FleetError;
};

class UnreachableVertex : public FleetError {
public:
    using FleetError::FleetError;
};

class InfeasibleSolution : public FleetError {
public:
    using FleetError::FleetError;
};

class SizeExceeded : public FleetError {
public:
    using FleetError::FleetError;
};

class InsufficientVertices : public FleetError {
public:
    using FleetError::FleetError;
};

/// Malformed input file. The message carries the source name, the line and
/// the offending field or section.
class ParseError : public FleetError {
public:
    ParseError(const std::string& source, int line, const std::string& what)
        : FleetError(source + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + what),
          line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

}  // namespace fleet
