#pragma once

#include <stdexcept>
#include <string>

namespace varjet {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Unregistered generator, registry mismatch between operands, frozen registry write.
struct RegistryError : Error {
    using Error::Error;
};

/// Substitution image (or field component) whose parity disagrees with its target.
struct ParityError : Error {
    using Error::Error;
};

/// Operation applied at a bidegree it is not defined for.
struct DegreeError : Error {
    using Error::Error;
};

/// Numeric-layer domain failures: degenerate metric, dependent frame, bad Jacobian.
struct NumericDomainError : Error {
    using Error::Error;
};

/// Frontend syntax errors carry a character position.
struct ParseError : Error {
    std::size_t position;
    ParseError(const std::string& msg, std::size_t pos)
        : Error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

}  // namespace varjet
