#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace etpa {

// Base class for all toolkit errors. The CLI maps input/validation errors to
// exit code 2 and numerical/singularity errors to exit code 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Incompatible dimensions in a unit conversion (names both dimensions).
class DimensionError : public Error {
public:
    using Error::Error;
};

// Argument outside the physical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

// cgs cross-section combined with SI flux (or vice versa) in a rate law.
class UnitSystemError : public Error {
public:
    using Error::Error;
};

// Malformed text input. Location is 1-based; 0 means "not applicable".
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
        : Error(what), line(line), column(column) {}
    std::size_t line;
    std::size_t column;  // byte offset within the parsed token or line
};

// A parsed table violates an invariant (named entity in the message).
class ValidationError : public Error {
public:
    using Error::Error;
};

// Requested point lies outside tabulated data; no extrapolation is done.
class RangeError : public Error {
public:
    using Error::Error;
};

// Rate matrix is not solvable (message lists the unreachable levels).
class SingularityError : public Error {
public:
    using Error::Error;
};

}  // namespace etpa
