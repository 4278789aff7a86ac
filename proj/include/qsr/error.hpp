#pragma once

#include <stdexcept>
#include <string>

namespace qsr {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid input data: bad dimensions, mismatched shapes, out-of-range arguments.
struct DomainError : Error {
    using Error::Error;
};

/// A line-addressed diagnostic from the quiver setup-file parser.
struct ParseError : Error {
    int line;
    ParseError(int line_, const std::string& msg)
        : Error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

/// Raised when a candidate enumeration would exceed the configured cap.
struct EnumerationLimitError : DomainError {
    using DomainError::DomainError;
};

} // namespace qsr
